"""Ramanujan graphs of diameter at most three from line graphs and complements."""

from .construction import (
    PredictedParams,
    SpectralShadow,
    build_R,
    gap_identity,
    iterate_R,
    predicted_parameters,
    predicted_spectrum,
)
from .graph import (
    Graph,
    complement,
    degree_profile,
    diameter,
    emit_dot,
    emit_graph6,
    is_connected,
    line_graph,
    parse_graph6,
)
from .polynomial import IntPoly
from .spectral import (
    RamanujanVerdict,
    Spectrum,
    certify_ramanujan,
    char_poly,
    charpoly_complement_transform,
    charpoly_line_transform,
    eigenvalues,
    is_ramanujan,
    lambda_star,
    sturm_root_count,
)

__version__ = "0.1.0"
