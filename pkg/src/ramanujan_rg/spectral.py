"""Adjacency spectra, exact characteristic polynomials and Ramanujan verdicts.

Two independent routes are provided. The numeric route eigensolves the
adjacency matrix with a cyclic Jacobi iteration and applies the Ramanujan
inequality at a tolerance. The exact route computes the integer
characteristic polynomial and decides the inequality with Sturm sequences,
so no floating point comparison ever decides a certified verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    InexactDivision,
    InvalidShape,
    NotCharpolyOfRegular,
    NotRegularSpectrum,
)
from .graph import Graph
from .polynomial import IntPoly, squarefree_decomposition, squarefree_part

GROUP_TOL = 1e-7
DEGREE_TOL = 1e-7
RAMANUJAN_TOL = 1e-8
MAX_SWEEPS = 60

CharPoly = IntPoly


# Spectrum ---------------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset as ``(value, multiplicity)`` groups, descending."""

    entries: tuple[tuple[float, int], ...]

    @classmethod
    def from_values(cls, values: Iterable[float], tol: float = GROUP_TOL) -> "Spectrum":
        vals = sorted((float(v) for v in values), reverse=True)
        return cls(_group(((v, 1) for v in vals), tol))

    @classmethod
    def from_groups(cls, groups: Iterable[tuple[float, int]], tol: float = GROUP_TOL) -> "Spectrum":
        items = sorted(((float(v), int(m)) for v, m in groups if m), key=lambda t: -t[0])
        return cls(_group(items, tol))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def values(self) -> np.ndarray:
        """All eigenvalues with repetition, descending."""
        return np.repeat([v for v, _ in self.entries], [m for _, m in self.entries])

    @property
    def largest(self) -> float:
        return self.entries[0][0]

    @property
    def smallest(self) -> float:
        return self.entries[-1][0]

    def second_largest(self) -> float:
        """lambda_2 counted with multiplicity."""
        if self.entries[0][1] > 1 or len(self.entries) == 1:
            return self.entries[0][0]
        return self.entries[1][0]

    def power_sum(self, p: int) -> float:
        return float(sum(m * v ** p for v, m in self.entries))

    def __str__(self):
        return ", ".join(_fmt_group(v, m) for v, m in self.entries)


def _fmt_group(v: float, m: int) -> str:
    r = round(v)
    text = str(int(r)) if abs(v - r) < 1e-9 else f"{v:.6f}".rstrip("0")
    return text if m == 1 else f"{text}×{m}"


def _group(items: Iterable[tuple[float, int]], tol: float) -> tuple[tuple[float, int], ...]:
    groups: list[list] = []  # [weighted sum, multiplicity, last value]
    for v, m in items:
        if groups and groups[-1][2] - v <= tol:
            g = groups[-1]
            g[0] += v * m
            g[1] += m
            g[2] = v
        else:
            groups.append([v * m, m, v])
    return tuple((s / m, m) for s, m, _ in groups)


# numeric eigensolver --------------------------------------------------------

def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Rounds of disjoint index pairs covering every pair once (circle method)."""
    idx = list(range(n)) + ([-1] if n % 2 else [])
    size = len(idx)
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for i in range(size // 2):
            a, b = idx[i], idx[size - 1 - i]
            if a >= 0 and b >= 0:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        idx = [idx[0], idx[-1]] + idx[1:-1]
    return rounds


def jacobi_eigenvalues(matrix: np.ndarray, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Each round applies a set of disjoint rotations at once, in a fixed
    round-robin order, so the result is deterministic. Iteration stops when
    the off-diagonal Frobenius norm falls below ``1e-12 * order``.
    """
    a = np.array(matrix, dtype=np.float64)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    # off-diagonal mass cannot go far below rounding level of the full matrix
    threshold = max(1e-12 * n, 8 * np.finfo(float).eps * np.linalg.norm(a))
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        # direct sum; ||A||^2 - sum(diag^2) cancels badly near convergence
        off = float(np.linalg.norm(a - np.diag(a.diagonal())))
        if off <= threshold:
            return np.sort(a.diagonal())[::-1]
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            app, aqq = a[p, p], a[q, q]
            # a tiny apq sends theta to inf, which correctly gives t = 0
            with np.errstate(over="ignore", divide="ignore"):
                theta = (aqq - app) / (2.0 * apq)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p, :], a[q, :]
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p], a[:, q]
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
    raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps (order {n})")


def eigenvalues(g: Graph, method: str = "jacobi", tol: float = GROUP_TOL) -> Spectrum:
    """Adjacency spectrum of ``g``.

    ``method="lapack"`` uses ``numpy.linalg.eigvalsh`` instead of the Jacobi
    solver, for orders where O(n^3) per sweep in Python is too slow.
    """
    a = g.adjacency.astype(np.float64)
    if method == "jacobi":
        vals = jacobi_eigenvalues(a)
    elif method == "lapack":
        vals = np.linalg.eigvalsh(a)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return Spectrum.from_values(vals, tol)


# exact characteristic polynomial ----------------------------------------------

def char_poly(g: Graph) -> CharPoly:
    """``det(x I - A)`` by Faddeev-LeVerrier over Python integers.

    With ``M_1 = I``: ``c_{n-j} = -tr(A M_j) / j`` and
    ``M_{j+1} = A M_j + c_{n-j} I``. Every trace division is exact for an
    integer matrix; this is asserted.
    """
    n = g.order
    adj = g.adjacency
    # A M is formed by summing rows of M; use the sparser of A and its
    # complement (A = J - I - B).
    comp = ~adj
    np.fill_diagonal(comp, False)
    use_comp = comp.sum() < adj.sum()
    rows = [np.flatnonzero((comp if use_comp else adj)[i]) for i in range(n)]

    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    diag = np.arange(n)
    m = np.zeros((n, n), dtype=object)
    m[diag, diag] = 1
    for j in range(1, n + 1):
        if use_comp:
            colsum = m.sum(axis=0)
            am = np.empty((n, n), dtype=object)
            for i in range(n):
                am[i] = colsum - m[i] - (m[rows[i]].sum(axis=0) if len(rows[i]) else 0)
        else:
            am = np.empty((n, n), dtype=object)
            for i in range(n):
                am[i] = m[rows[i]].sum(axis=0) if len(rows[i]) else np.zeros(n, dtype=object)
        tr = int(am[diag, diag].sum())
        c, r = divmod(-tr, j)
        assert r == 0, f"Faddeev-LeVerrier trace {tr} not divisible by {j}"
        coeffs[n - j] = c
        if j < n:
            am[diag, diag] += c
            m = am
    return IntPoly(coeffs)


def charpoly_line_transform(p: CharPoly, n: int, m: int, k: int) -> CharPoly:
    """Charpoly of the line graph of a k-regular graph from the graph's own:
    ``(x+2)**(m-n) * p(x-k+2)``."""
    if p.degree != n:
        raise InvalidShape(f"polynomial degree {p.degree} != n = {n}")
    if 2 * m != n * k:
        raise InvalidShape(f"m = {m} is not the edge count nk/2 of a {k}-regular graph on {n} vertices")
    if m < n:
        raise InvalidShape(f"m = {m} < n = {n}")
    return IntPoly([2, 1]) ** (m - n) * p.compose_linear(1, 2 - k)


def charpoly_complement_transform(p: CharPoly, n: int, k: int) -> CharPoly:
    """Charpoly of the complement of a k-regular graph:
    ``(-1)**n p(-x-1) (x-n+k+1) / (x+1+k)``, with the division checked exact."""
    if p.degree != n:
        raise InvalidShape(f"polynomial degree {p.degree} != n = {n}")
    num = p.compose_linear(-1, -1) * IntPoly([k + 1 - n, 1])
    if n % 2:
        num = -num
    q, r = num.divmod(IntPoly([1 + k, 1]))
    if not r.is_zero():
        raise InexactDivision(f"(x+{1 + k}) does not divide; input is not the charpoly of a {k}-regular graph")
    return q


# lambda* and numeric verdict --------------------------------------------------

@dataclass(frozen=True)
class RamanujanVerdict:
    degree_d: int
    lambda_star: Optional[float]
    bound: float
    is_ramanujan: bool
    margin: float
    certified: bool = False


def ramanujan_bound(d: int) -> float:
    return 2.0 * math.sqrt(d - 1)


def lambda_star(s: Spectrum, k: int, tol: float = DEGREE_TOL) -> Optional[float]:
    """Largest |eigenvalue| among eigenvalues other than ``k`` and ``-k``.

    The tolerance is floored at a few ulps of ``k`` so huge symbolic spectra
    compare sensibly.
    """
    tol = max(tol, 64 * np.finfo(float).eps * abs(k))
    if abs(s.largest - k) > tol:
        raise NotRegularSpectrum(f"largest eigenvalue {s.largest} != k = {k}")
    rest = [abs(v) for v, _ in s.entries if abs(v - k) > tol and abs(v + k) > tol]
    return max(rest) if rest else None


def is_ramanujan(s: Spectrum, k: int, tol: float = RAMANUJAN_TOL) -> RamanujanVerdict:
    if k < 1:
        raise NotRegularSpectrum(f"degree must be at least 1, got {k}")
    ls = lambda_star(s, k)
    bound = ramanujan_bound(k)
    if ls is None:
        return RamanujanVerdict(k, None, bound, True, bound)
    return RamanujanVerdict(k, ls, bound, ls <= bound + tol, bound - ls)


# Sturm sequences --------------------------------------------------------------

class SturmSequence:
    """Sturm chain of the squarefree part of a polynomial.

    ``count(a, b)`` is the number of distinct real roots in ``(a, b]``;
    ``a`` may be ``-inf`` and ``b`` may be ``+inf``.
    """

    def __init__(self, p: IntPoly):
        if p.is_zero():
            raise ValueError("Sturm sequence of the zero polynomial")
        sqf = squarefree_part(p)
        chain = [sqf, sqf.derivative().primitive_part()]
        while chain[-1].degree > 0:
            prev, cur = chain[-2], chain[-1]
            r = prev.pseudo_rem(cur)
            if r.is_zero():
                break
            delta = prev.degree - cur.degree
            # true remainder = prem / lc**(delta+1); keep its sign, then negate
            if cur.leading < 0 and (delta + 1) % 2:
                r = -r
            c = r.content()
            chain.append(IntPoly(-(x // c) for x in r.coeffs))
        self.squarefree = sqf
        self.chain = [q for q in chain if not q.is_zero()]

    def variations(self, x) -> int:
        if x == math.inf or x == -math.inf:
            signs = [q.sign_at_infinity(x > 0) for q in self.chain]
        else:
            signs = [q.sign_at(x) for q in self.chain]
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, a, b) -> int:
        return self.variations(a) - self.variations(b)

    def is_root(self, x) -> bool:
        return self.squarefree.sign_at(x) == 0


def _as_rational(x):
    if x == math.inf or x == -math.inf:
        return x
    return Fraction(x)


def sturm_root_count(p: CharPoly, a, b) -> int:
    """Distinct real roots of ``p`` in ``(a, b]``, computed exactly."""
    a, b = _as_rational(a), _as_rational(b)
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    return SturmSequence(p).count(a, b)


# exact certification --------------------------------------------------------

def deflate_regular(p: CharPoly, d: int) -> tuple[IntPoly, int]:
    """Divide out ``(x-d)`` once and ``(x+d)`` as often as exact.

    Returns the deflated polynomial and the multiplicity of ``-d`` removed.
    """
    try:
        r = p.exact_div(IntPoly([-d, 1]))
    except InexactDivision:
        raise NotCharpolyOfRegular(f"(x-{d}) does not divide the polynomial") from None
    neg = 0
    plus_d = IntPoly([d, 1])
    while r.degree > 0:
        q, rem = r.divmod(plus_d)
        if not rem.is_zero():
            break
        r, neg = q, neg + 1
    return r, neg


def _extreme_root(seq: SturmSequence, hi: Fraction, largest: bool, bits: int = 60) -> Fraction:
    """Bisect for the largest (or smallest) real root; all roots must lie in
    ``[-hi, hi]``. The invariant is that the root lies in ``(lo_x, hi_x]``."""
    lo_x, hi_x = -hi - 1, hi
    for _ in range(bits):
        mid = (lo_x + hi_x) / 2
        if largest:
            # any root in (mid, hi]?
            if seq.count(mid, hi_x) > 0:
                lo_x = mid
            else:
                hi_x = mid
        else:
            # any root in (lo, mid]?
            if seq.count(lo_x, mid) > 0:
                hi_x = mid
            else:
                lo_x = mid
    return (lo_x + hi_x) / 2


def _bound_bracket(s: int, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Dyadic ``lo < sqrt(s) < hi`` for a non-square ``s``."""
    scale = 1 << bits
    root = math.isqrt(s * scale * scale)
    return Fraction(root, scale), Fraction(root + 1, scale)


def certify_ramanujan(p: CharPoly, d: int) -> RamanujanVerdict:
    """Exact Ramanujan decision from the characteristic polynomial of a
    connected d-regular graph.

    After deflating the eigenvalues ``d`` and ``-d``, every remaining root
    must lie in ``[-2 sqrt(d-1), 2 sqrt(d-1)]``. Roots beyond the bound are
    counted with Sturm sequences at dyadic brackets around ``2 sqrt(d-1)``;
    the bracket is halved until the shell around the bound holds no root
    other than, possibly, the bound itself.
    """
    if d < 2:
        raise ValueError(f"certification needs d >= 2, got {d}")
    bound = ramanujan_bound(d)
    rest, _ = deflate_regular(p, d)
    if rest.degree <= 0:
        return RamanujanVerdict(d, None, bound, True, bound, certified=True)

    seq = SturmSequence(rest)
    s = 4 * (d - 1)
    b_int = math.isqrt(s)
    if b_int * b_int == s:
        b = Fraction(b_int)
        above = seq.count(b, math.inf)
        below = seq.count(-math.inf, -b) - (1 if seq.is_root(-b) else 0)
    else:
        # p(B) = E(s) + B*O(s) with B irrational: zero iff E(s) = O(s) = 0,
        # and then -B is a root as well
        even, odd = seq.squarefree.even_odd_parts()
        at_bound = 1 if even(s) == 0 and odd(s) == 0 else 0
        lo, hi = _bound_bracket(s)
        while seq.count(lo, hi) > at_bound or seq.count(-hi, -lo) > at_bound:
            mid = (lo + hi) / 2
            if mid * mid < s:
                lo = mid
            else:
                hi = mid
        above = seq.count(hi, math.inf)
        below = seq.count(-math.inf, -hi)

    radius = Fraction(d + 1)
    if seq.count(-math.inf, -radius) or seq.count(radius, math.inf):
        coeff_max = max(abs(c) for c in seq.squarefree.coeffs)
        radius = Fraction(1 + coeff_max, abs(seq.squarefree.leading))
    top = _extreme_root(seq, radius, largest=True)
    bottom = _extreme_root(seq, radius, largest=False)
    ls = float(max(abs(top), abs(bottom)))
    ok = above == 0 and below == 0
    return RamanujanVerdict(d, ls, bound, ok, bound - ls, certified=True)


def _root_radius(p: IntPoly) -> Fraction:
    # Cauchy bound: every root satisfies |x| < 1 + max|a_i| / |a_n|
    return Fraction(1 + max(abs(c) for c in p.coeffs[:-1]), abs(p.leading)) if p.degree > 0 else Fraction(1)


def _refine(p: IntPoly, seq: SturmSequence, lo: Fraction, hi: Fraction, width: Fraction) -> Fraction:
    """Shrink ``(lo, hi]`` holding exactly one root of squarefree ``p``."""
    if p.sign_at(hi) == 0:
        return hi
    while p.sign_at(lo) == 0:
        # lo is a neighbouring root; pull it inward until it is not
        mid = (lo + hi) / 2
        if seq.count(lo, mid):
            hi = mid
        else:
            lo = mid
        if p.sign_at(hi) == 0:
            return hi
    s_lo = p.sign_at(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s_mid = p.sign_at(mid)
        if s_mid == 0:
            return mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def roots_of(p: CharPoly, width: float = 1e-12) -> np.ndarray:
    """Real roots of ``p`` with multiplicity, descending.

    Multiplicities come from an exact squarefree decomposition; each
    distinct root is isolated with Sturm counts and refined by bisection
    to an interval of the given width. Non-real roots are omitted.
    """
    w = Fraction(width)
    roots: list[float] = []
    for mult, factor in enumerate(squarefree_decomposition(p), start=1):
        if factor.degree <= 0:
            continue
        seq = SturmSequence(factor)
        r = _root_radius(factor)
        stack = [(-r, r)]
        while stack:
            lo, hi = stack.pop()
            c = seq.count(lo, hi)
            if c == 0:
                continue
            if c == 1:
                roots.extend([float(_refine(factor, seq, lo, hi, w))] * mult)
                continue
            mid = (lo + hi) / 2
            stack += [(lo, mid), (mid, hi)]
    return np.sort(np.array(roots, dtype=float))[::-1]
