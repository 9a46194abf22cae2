"""The construction R(G) = complement(L(complement(L(G)))) and its closed forms.

Besides building R(G) explicitly, this module predicts its parameters and
spectrum from (n, k) and the spectrum of G alone, which is what allows the
iterated sequence R, R(R), ... to be followed past the point where the
graphs can be stored.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    HypothesisViolation,
    InvalidParameters,
    NegativeMultiplicity,
    NotRegularSpectrum,
    SizeCapExceeded,
)
from .graph import Graph, complement, degree_profile, diameter, is_connected, line_graph
from .spectral import (
    DEGREE_TOL,
    Spectrum,
    certify_ramanujan,
    char_poly,
    eigenvalues,
    is_ramanujan,
    lambda_star,
)

DEFAULT_SIZE_CAP = 20_000
CLAIM_TOL = 1e-6

STAGE_TAGS = ("L(G)", "L(G)^c", "L(L(G)^c)", "R(G)")


# parameters -------------------------------------------------------------------

@dataclass(frozen=True)
class PredictedParams:
    n: int
    k: int
    m_R: Fraction
    d: Fraction
    lambda2_claim: Fraction
    lambda_min_claim: Fraction
    lambda_star_claim: Fraction
    bound: float

    @property
    def order(self) -> int:
        return int(self.m_R)

    @property
    def degree(self) -> int:
        return int(self.d)

    @property
    def margin(self) -> float:
        return self.bound - float(self.lambda_star_claim)


def validate_nk(n: int, k: int) -> None:
    if n < 5:
        raise InvalidParameters(f"n = {n} < 5")
    if not 2 <= k <= n - 1:
        raise InvalidParameters(f"k = {k} outside 2..n-1 for n = {n}")
    if (n * k) % 2:
        raise InvalidParameters(f"nk = {n * k} is odd; no {k}-regular graph on {n} vertices")


def predicted_parameters(n: int, k: int) -> PredictedParams:
    validate_nk(n, k)
    nk = n * k
    m_r = Fraction(nk * (nk - 4 * k + 2), 8)
    d = Fraction((nk - 8) * (nk - 4 * k + 2), 8) + 1
    assert m_r.denominator == 1 and d.denominator == 1, (m_r, d)
    assert d == m_r - (nk - 4 * k + 2) + 1
    lam_min = Fraction(-nk, 2) + 2 * k - 1
    lam_star = Fraction(nk, 2) - 2 * k + 1
    return PredictedParams(
        n=n,
        k=k,
        m_R=m_r,
        d=d,
        lambda2_claim=Fraction(1),
        lambda_min_claim=lam_min,
        lambda_star_claim=lam_star,
        bound=2.0 * math.sqrt(int(d) - 1),
    )


class GapIdentity(NamedTuple):
    lhs: float
    rhs: float
    nonneg: bool


def gap_identity(n: int, k: int) -> GapIdentity:
    """Both sides of ``2 sqrt(d-1) - lambda*`` and its rationalised quotient."""
    validate_nk(n, k)
    nk = n * k
    d = (nk - 8) * (nk - 4 * k + 2) // 8 + 1
    lhs = 2.0 * math.sqrt(d - 1) - (nk / 2 - 2 * k + 1)
    half_gap = 0.5 * (nk - 4 * k + 2)
    rhs = half_gap * (0.5 * nk + 2 * k - 9) / (math.sqrt(0.5 * (nk - 8) * (nk - 4 * k + 2)) + half_gap)
    return GapIdentity(lhs, rhs, lhs >= 0.0)


def gap_identity_exact(n: int, k: int) -> tuple[Fraction, Fraction]:
    """Exact numerators of the gap identity.

    Returns ``(4(d-1) - lambda*^2, (nk-4k+2)(nk/2+2k-9)/2)``. The identity
    holds iff the two agree; the sign of either is the sign of the gap.
    """
    validate_nk(n, k)
    p = predicted_parameters(n, k)
    squares = 4 * (p.d - 1) - p.lambda_star_claim ** 2
    nk = n * k
    displayed = Fraction(nk - 4 * k + 2, 2) * (Fraction(nk, 2) + 2 * k - 9)
    return squares, displayed


# explicit construction ----------------------------------------------------------

def check_hypotheses(g: Graph) -> tuple[int, int]:
    """``(n, k)`` for a connected regular graph with at least 5 vertices."""
    if g.order < 5:
        raise HypothesisViolation("n < 5 hypothesis violated", reason="order_lt_5")
    regular, k = degree_profile(g)
    if not regular:
        raise HypothesisViolation("graph is not regular", reason="not_regular")
    if not is_connected(g):
        raise HypothesisViolation("graph is not connected", reason="not_connected")
    return g.order, k


def build_stages(g: Graph, size_cap: int = DEFAULT_SIZE_CAP) -> dict[str, Graph]:
    """All four intermediate graphs of R(g), keyed by :data:`STAGE_TAGS`."""
    n, k = check_hypotheses(g)
    params = predicted_parameters(n, k)
    if params.order > size_cap:
        raise SizeCapExceeded(f"R(G) would have {params.order} vertices (cap {size_cap})")
    lg, _ = line_graph(g)
    lgc = complement(lg)
    llgc, _ = line_graph(lgc)
    r = complement(llgc)
    return dict(zip(STAGE_TAGS, (lg, lgc, llgc, r)))


def build_R(g: Graph, size_cap: int = DEFAULT_SIZE_CAP) -> Graph:
    return build_stages(g, size_cap)["R(G)"]


# spectral shadow --------------------------------------------------------------

def line_stage(s: Spectrum, order: int, degree: int) -> Spectrum:
    """Spectrum of the line graph of a ``degree``-regular graph of ``order``."""
    edges = order * degree // 2
    groups = [(v + degree - 2, m) for v, m in s.entries]
    extra = edges - order
    if extra > 0:
        groups.append((-2.0, extra))
    return Spectrum.from_groups(groups)


def complement_stage(s: Spectrum, order: int, degree: int) -> Spectrum:
    """Spectrum of the complement of a ``degree``-regular graph of ``order``."""
    top, mult = s.entries[0]
    if mult < 1:
        raise NegativeMultiplicity("cannot remove the largest eigenvalue from an empty multiset")
    tol = max(DEGREE_TOL, 64 * np.finfo(float).eps * abs(degree))
    assert abs(top - degree) <= tol, f"largest eigenvalue {top} is not the degree {degree}"
    groups = [(-1.0 - v, m) for v, m in s.entries[1:]]
    if mult > 1:
        groups.append((-1.0 - top, mult - 1))
    groups.append((float(order - 1 - degree), 1))
    return Spectrum.from_groups(groups)


@dataclass(frozen=True)
class SpectralShadow:
    stage_spectra: tuple[tuple[str, Spectrum], ...]
    source_n: int
    source_k: int
    validity_flags: dict = field(default_factory=dict)

    @property
    def r_spectrum(self) -> Spectrum:
        return self.stage_spectra[-1][1]

    def stage(self, tag: str) -> Spectrum:
        return dict(self.stage_spectra)[tag]


def _close(a: float, b, tol: float = CLAIM_TOL) -> bool:
    return abs(a - float(b)) <= tol * max(1.0, abs(float(b)) * 1e-9)


def predicted_spectrum(s: Spectrum, n: int, k: int) -> SpectralShadow:
    """Spectrum of R(G) predicted from that of G, stage by stage.

    ``validity_flags`` records whether the closed forms claimed for the
    intermediate and final stages hold for this instance.
    """
    tol = max(DEGREE_TOL, 64 * np.finfo(float).eps * abs(k))
    if abs(s.largest - k) > tol:
        raise NotRegularSpectrum(f"largest eigenvalue {s.largest} != k = {k}")
    if s.total != n:
        raise NotRegularSpectrum(f"spectrum has {s.total} eigenvalues, expected {n}")
    params = predicted_parameters(n, k)

    e1 = n * k // 2
    lg = line_stage(s, n, k)
    k1 = 2 * k - 2
    lgc = complement_stage(lg, e1, k1)
    k2 = e1 - 1 - k1
    llgc = line_stage(lgc, e1, k2)
    e2 = e1 * k2 // 2
    k3 = 2 * k2 - 2
    r = complement_stage(llgc, e2, k3)

    has_block = e1 > n
    bipartite = any(abs(v + k) <= tol for v, _ in s.entries)
    mechanism = "+".join(
        name for name, on in (("minus2_block", has_block), ("bipartite", bipartite)) if on
    ) or "none"
    ls = lambda_star(r, params.degree)
    flags = {
        "lc_lambda2": _close(lgc.second_largest(), 1),
        "lc_lambda2_mechanism": mechanism,
        "llc_lambda2": _close(llgc.second_largest(), Fraction(n * k, 2) - 2 * k),
        "lambda2": _close(r.second_largest(), params.lambda2_claim),
        "lambda_min": _close(r.smallest, params.lambda_min_claim),
        "lambda_star": ls is not None and _close(ls, params.lambda_star_claim),
    }
    return SpectralShadow(
        stage_spectra=tuple(zip(STAGE_TAGS, (lg, lgc, llgc, r))),
        source_n=n,
        source_k=k,
        validity_flags=flags,
    )


def spectra_match(a: Spectrum, b: Spectrum, tol: float = CLAIM_TOL) -> bool:
    va, vb = a.values(), b.values()
    return len(va) == len(vb) and bool(np.all(np.abs(va - vb) <= tol))


# iteration --------------------------------------------------------------------

@dataclass
class StageRecord:
    stage: int
    mode: str  # "explicit" or "symbolic"
    n: int
    k: int
    params: PredictedParams
    lambda_star: Optional[float]
    bound: float
    margin: float
    is_ramanujan: bool
    certified: bool = False
    connected: Optional[bool] = None
    diameter: Optional[float] = None
    verified: bool = False
    fixed_point: Optional[bool] = None
    note: str = ""
    ms: float = 0.0
    spectrum: Optional[Spectrum] = field(default=None, repr=False)
    graph: Optional[Graph] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.params.order

    @property
    def degree(self) -> int:
        return self.params.degree


def _signature(g: Graph, s: Spectrum) -> tuple:
    return g.order, g.size, tuple(sorted(g.degrees().tolist())), s


def iterate_R(
    g: Graph,
    depth: int,
    size_cap: int = DEFAULT_SIZE_CAP,
    eigensolver: str = "jacobi",
    exact: bool = False,
    exact_cap: int = 400,
) -> list[StageRecord]:
    """Follow G, R(G), R(R(G)), ... for ``depth`` stages.

    Stages whose predicted order fits ``size_cap`` are built and verified;
    from the first stage that does not fit on, (n, k) and the spectrum are
    carried forward symbolically and only predicted margins are recorded.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    n, k = check_hypotheses(g)
    current: Optional[Graph] = g
    spectrum = eigenvalues(g, eigensolver)
    records: list[StageRecord] = []
    for stage in range(1, depth + 1):
        t0 = time.perf_counter()
        params = predicted_parameters(n, k)
        if current is not None and params.order <= size_cap:
            prev_sig = _signature(current, spectrum)
            rg = build_R(current, size_cap)
            spectrum = eigenvalues(rg, eigensolver)
            verdict = is_ramanujan(spectrum, params.degree)
            certified = False
            if exact and rg.order <= exact_cap:
                verdict = certify_ramanujan(char_poly(rg), params.degree)
                certified = True
            conn = is_connected(rg)
            diam = diameter(rg)
            sig = _signature(rg, spectrum)
            fixed = (
                prev_sig[:3] == sig[:3]
                and spectrum.total == prev_sig[3].total
                and bool(np.allclose(prev_sig[3].values(), spectrum.values(), atol=CLAIM_TOL))
            )
            rec = StageRecord(
                stage=stage,
                mode="explicit",
                n=n,
                k=k,
                params=params,
                lambda_star=verdict.lambda_star,
                bound=verdict.bound,
                margin=verdict.margin,
                is_ramanujan=verdict.is_ramanujan,
                certified=certified,
                connected=conn,
                diameter=diam,
                verified=conn and diam <= 3 and verdict.is_ramanujan,
                fixed_point=fixed,
                spectrum=spectrum,
                graph=rg,
            )
            current = rg
        else:
            current = None
            shadow = predicted_spectrum(spectrum, n, k)
            spectrum = shadow.r_spectrum
            ls = lambda_star(spectrum, params.degree)
            margin = params.bound - ls if ls is not None else params.bound
            rec = StageRecord(
                stage=stage,
                mode="symbolic",
                n=n,
                k=k,
                params=params,
                lambda_star=ls,
                bound=params.bound,
                margin=margin,
                is_ramanujan=margin >= 0,
                note="symbolic, unverified diameter",
                spectrum=spectrum,
            )
        rec.ms = (time.perf_counter() - t0) * 1000.0
        records.append(rec)
        n, k = params.order, params.degree
        if stage < depth:
            try:
                validate_nk(n, k)
            except InvalidParameters as exc:
                raise HypothesisViolation(f"stage {stage} output is not a valid seed: {exc}",
                                          reason="invalid_stage") from None
    return records
