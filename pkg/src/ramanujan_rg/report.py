"""Per-graph verification of the R(G) theorem and report serialisation."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .construction import (
    CLAIM_TOL,
    DEFAULT_SIZE_CAP,
    StageRecord,
    build_R,
    check_hypotheses,
    predicted_parameters,
    predicted_spectrum,
    spectra_match,
)
from .errors import HypothesisViolation
from .graph import INFINITE, Graph, degree_profile, diameter, is_connected
from .spectral import certify_ramanujan, char_poly, eigenvalues, is_ramanujan

DEFAULT_EXACT_CAP = 400

CONFIRMED = "confirmed"
NOT_CONFIRMED = "not confirmed"
KNOWN_EXCEPTION = "not confirmed (known C5 exception)"
NOT_APPLICABLE = "n/a"

CSV_COLUMNS = (
    "input_id", "n", "k", "m_R", "d", "lambda_star", "bound", "margin", "diameter",
    "is_ramanujan", "certified", "flags", "ms_build", "ms_eigen", "ms_diameter",
)

CLAIM_KEYS = ("order", "degree", "lambda2", "lambda_min", "lambda_star",
              "lambda_star_definition", "shadow", "exact")


@dataclass
class VerificationReport:
    input_id: str
    status: str = "skipped"  # pass / fail / skipped / error
    reason: Optional[str] = None
    n: Optional[int] = None
    k: Optional[int] = None
    m_R: Optional[int] = None
    d: Optional[int] = None
    measured_order: Optional[int] = None
    measured_degree: Optional[int] = None
    measured_lambda2: Optional[float] = None
    measured_lambda_min: Optional[float] = None
    measured_lambda_star: Optional[float] = None
    measured_lambda_star_proof: Optional[float] = None
    predicted_lambda2: Optional[Fraction] = None
    predicted_lambda_min: Optional[Fraction] = None
    predicted_lambda_star: Optional[Fraction] = None
    bound: Optional[float] = None
    margin: Optional[float] = None
    predicted_margin: Optional[float] = None
    diameter: Optional[float] = None
    is_connected: Optional[bool] = None
    is_ramanujan: Optional[bool] = None
    certified: bool = False
    claim_flags: dict = field(default_factory=lambda: {key: NOT_APPLICABLE for key in CLAIM_KEYS})
    timings: dict = field(default_factory=lambda: {"ms_build": 0.0, "ms_eigen": 0.0,
                                                   "ms_diameter": 0.0, "ms_exact": 0.0})

    @property
    def theorem_ok(self) -> bool:
        return self.status != "fail"

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "input_id": self.input_id,
            "status": self.status,
            "reason": self.reason,
            "n": self.n,
            "k": self.k,
            "m_R": self.m_R,
            "d": self.d,
            "measured_order": self.measured_order,
            "measured_degree": self.measured_degree,
            "measured_lambda2": fmt_float(self.measured_lambda2),
            "measured_lambda_min": fmt_float(self.measured_lambda_min),
            "measured_lambda_star": fmt_float(self.measured_lambda_star),
            "measured_lambda_star_proof": fmt_float(self.measured_lambda_star_proof),
            "predicted_lambda2": fmt_rational(self.predicted_lambda2),
            "predicted_lambda_min": fmt_rational(self.predicted_lambda_min),
            "predicted_lambda_star": fmt_rational(self.predicted_lambda_star),
            "bound": fmt_float(self.bound),
            "margin": fmt_float(self.margin),
            "predicted_margin": fmt_float(self.predicted_margin),
            "diameter": fmt_diameter(self.diameter),
            "is_connected": self.is_connected,
            "is_ramanujan": self.is_ramanujan,
            "certified": self.certified,
            "claim_flags": dict(self.claim_flags),
            "timings": {key: round(v, 3) for key, v in self.timings.items()},
        }

    def csv_row(self) -> list:
        flags = ";".join(f"{key}={self.claim_flags[key]}" for key in CLAIM_KEYS)
        t = self.timings
        return [
            self.input_id, _blank(self.n), _blank(self.k), _blank(self.m_R), _blank(self.d),
            _blank(fmt_float(self.measured_lambda_star)), _blank(fmt_float(self.bound)),
            _blank(fmt_float(self.margin)), _blank(fmt_diameter(self.diameter)),
            _blank(self.is_ramanujan), self.certified, flags,
            round(t["ms_build"], 3), round(t["ms_eigen"], 3), round(t["ms_diameter"], 3),
        ]

    def to_text(self) -> str:
        if self.status in ("skipped", "error"):
            return f"{self.input_id}: {self.status.upper()} ({self.reason})"
        lines = [
            f"{self.input_id}: {self.status.upper()}",
            f"  G: n={self.n} k={self.k}",
            f"  R(G): order={self.measured_order} (predicted {self.m_R}), "
            f"degree={self.measured_degree} (predicted {self.d})",
            f"  lambda2={fmt_float(self.measured_lambda2)} (claim {fmt_rational(self.predicted_lambda2)}), "
            f"lambda_min={fmt_float(self.measured_lambda_min)} (claim {fmt_rational(self.predicted_lambda_min)})",
            f"  lambda*={fmt_float(self.measured_lambda_star)} (claim {fmt_rational(self.predicted_lambda_star)}), "
            f"bound 2sqrt(d-1)={fmt_float(self.bound)}, margin={fmt_float(self.margin)}",
            f"  connected={self.is_connected} diameter={fmt_diameter(self.diameter)} "
            f"ramanujan={self.is_ramanujan} certified={self.certified}",
            "  claims: " + ", ".join(f"{key}: {self.claim_flags[key]}" for key in CLAIM_KEYS),
        ]
        return "\n".join(lines)


def fmt_float(x) -> Optional[float]:
    """Round to 12 significant digits; ``None`` passes through."""
    if x is None:
        return None
    x = float(x)
    if math.isinf(x) or math.isnan(x):
        return None
    return float(f"{x:.12g}")


def fmt_rational(x) -> Optional[str]:
    if x is None:
        return None
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_diameter(x):
    if x is None:
        return None
    return "inf" if x == INFINITE else int(x)


def _blank(x):
    return "" if x is None else x


def verify_graph(
    g: Graph,
    input_id: str,
    size_cap: int = DEFAULT_SIZE_CAP,
    exact: bool = False,
    exact_cap: int = DEFAULT_EXACT_CAP,
    eigensolver: str = "jacobi",
) -> VerificationReport:
    """Run every theorem-level and claim-level check on one input graph."""
    rep = VerificationReport(input_id=input_id)
    try:
        n, k = check_hypotheses(g)
    except HypothesisViolation as exc:
        rep.reason = str(exc)
        rep.n = g.order
        rep.k = degree_profile(g)[1]
        return rep
    params = predicted_parameters(n, k)
    rep.n, rep.k, rep.m_R, rep.d = n, k, params.order, params.degree
    rep.predicted_lambda2 = params.lambda2_claim
    rep.predicted_lambda_min = params.lambda_min_claim
    rep.predicted_lambda_star = params.lambda_star_claim
    rep.predicted_margin = params.margin
    if params.order > size_cap:
        rep.reason = f"size cap exceeded: R(G) would have {params.order} vertices (cap {size_cap})"
        return rep

    t0 = time.perf_counter()
    r = build_R(g, size_cap)
    t1 = time.perf_counter()
    spec_r = eigenvalues(r, eigensolver)
    spec_g = eigenvalues(g, eigensolver)
    t2 = time.perf_counter()
    rep.is_connected = is_connected(r)
    rep.diameter = diameter(r)
    t3 = time.perf_counter()
    rep.timings.update(ms_build=(t1 - t0) * 1e3, ms_eigen=(t2 - t1) * 1e3, ms_diameter=(t3 - t2) * 1e3)

    regular, deg = degree_profile(r)
    rep.measured_order = r.order
    rep.measured_degree = deg if regular else None
    flags = rep.claim_flags
    flags["order"] = CONFIRMED if r.order == params.order else NOT_CONFIRMED
    flags["degree"] = CONFIRMED if regular and deg == params.degree else NOT_CONFIRMED

    values = spec_r.values()
    rep.measured_lambda2 = spec_r.second_largest()
    rep.measured_lambda_min = spec_r.smallest
    rep.measured_lambda_star_proof = float(max(abs(values[1:]))) if len(values) > 1 else None
    verdict = is_ramanujan(spec_r, params.degree)
    rep.measured_lambda_star = verdict.lambda_star
    rep.bound, rep.margin, rep.is_ramanujan = verdict.bound, verdict.margin, verdict.is_ramanujan

    known_exception = (n, k) == (5, 2)

    def claim(ok: bool) -> str:
        if ok:
            return CONFIRMED
        return KNOWN_EXCEPTION if known_exception else NOT_CONFIRMED

    flags["lambda2"] = claim(abs(rep.measured_lambda2 - 1) <= CLAIM_TOL)
    flags["lambda_min"] = claim(abs(rep.measured_lambda_min - float(params.lambda_min_claim)) <= CLAIM_TOL)
    flags["lambda_star"] = claim(
        verdict.lambda_star is not None
        and abs(verdict.lambda_star - float(params.lambda_star_claim)) <= CLAIM_TOL
    )
    if rep.measured_lambda_star_proof is not None and verdict.lambda_star is not None:
        same = abs(rep.measured_lambda_star_proof - verdict.lambda_star) <= CLAIM_TOL
        flags["lambda_star_definition"] = "agree" if same else "differ"
    shadow = predicted_spectrum(spec_g, n, k)
    flags["shadow"] = CONFIRMED if spectra_match(shadow.r_spectrum, spec_r) else NOT_CONFIRMED

    if exact:
        if r.order <= exact_cap:
            t4 = time.perf_counter()
            cert = certify_ramanujan(char_poly(r), params.degree)
            rep.timings["ms_exact"] = (time.perf_counter() - t4) * 1e3
            rep.certified = True
            flags["exact"] = CONFIRMED if cert.is_ramanujan == verdict.is_ramanujan else NOT_CONFIRMED
            rep.is_ramanujan = cert.is_ramanujan
        else:
            flags["exact"] = f"n/a (order over exact cap {exact_cap})"

    theorem = (
        rep.is_connected
        and rep.diameter <= 3
        and rep.is_ramanujan
        and flags["order"] == CONFIRMED
        and flags["degree"] == CONFIRMED
        and flags["exact"] != NOT_CONFIRMED
    )
    rep.status = "pass" if theorem else "fail"
    return rep


def error_report(input_id: str, message: str) -> VerificationReport:
    return VerificationReport(input_id=input_id, status="error", reason=message)


# serialisation ----------------------------------------------------------------

def report_json(rep: VerificationReport) -> str:
    return json.dumps(rep.to_json_dict(), ensure_ascii=False)


def csv_header() -> str:
    return _csv_line(CSV_COLUMNS)


def report_csv(rep: VerificationReport) -> str:
    return _csv_line(rep.csv_row())


def _csv_line(row) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(row)
    return buf.getvalue().rstrip("\n")


def stage_dict(rec: StageRecord) -> dict[str, Any]:
    p = rec.params
    return {
        "stage": rec.stage,
        "mode": rec.mode,
        "n": rec.n,
        "k": rec.k,
        "order": p.order,
        "degree": p.degree,
        "predicted_lambda_star": fmt_rational(p.lambda_star_claim),
        "lambda_star": fmt_float(rec.lambda_star),
        "bound": fmt_float(rec.bound),
        "margin": fmt_float(rec.margin),
        "predicted_margin": fmt_float(p.margin),
        "is_ramanujan": rec.is_ramanujan,
        "certified": rec.certified,
        "connected": rec.connected,
        "diameter": fmt_diameter(rec.diameter),
        "verified": rec.verified,
        "fixed_point": rec.fixed_point,
        "note": rec.note,
        "ms": round(rec.ms, 3),
    }


def stage_text(rec: StageRecord) -> str:
    p = rec.params
    head = f"stage {rec.stage} [{rec.mode}]: G(n={rec.n}, k={rec.k}) -> order {p.order}, degree {p.degree}"
    body = (f"  lambda*={fmt_float(rec.lambda_star)} bound={fmt_float(rec.bound)} "
            f"margin={fmt_float(rec.margin)} ramanujan={rec.is_ramanujan}")
    lines = [head, body]
    if rec.mode == "explicit":
        lines.append(f"  connected={rec.connected} diameter={fmt_diameter(rec.diameter)} "
                     f"certified={rec.certified} verified={rec.verified} fixed_point={rec.fixed_point}")
    else:
        lines.append(f"  {rec.note}")
    return "\n".join(lines)
