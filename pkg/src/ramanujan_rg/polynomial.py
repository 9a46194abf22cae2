"""Dense univariate polynomials with arbitrary-precision integer coefficients.

Coefficients are stored lowest degree first. Only the operations needed for
characteristic polynomial manipulation and Sturm sequences are provided.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import InexactDivision


class IntPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> "IntPoly":
        return cls(reversed(list(coeffs)))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def linear(cls, a: int, b: int) -> "IntPoly":
        """The polynomial ``a*x + b``."""
        return cls([b, a])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    # basic structure -----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def descending(self) -> list[int]:
        return list(reversed(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "x" if i == 1 else f"x^{i}"
                body = var if mag == 1 else f"{mag}{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # arithmetic ----------------------------------------------------------------

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = IntPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> "IntPoly":
        return IntPoly(c * x for x in self.coeffs)

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def compose_linear(self, a: int, b: int) -> "IntPoly":
        """``p(a*x + b)`` by Horner's rule."""
        lin = IntPoly.linear(a, b)
        out = IntPoly()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive_part(self) -> "IntPoly":
        """``self`` divided by its content, with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPoly(x // c for x in self.coeffs)

    def divmod(self, divisor: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Long division over the integers.

        Every quotient step must divide exactly by the divisor's leading
        coefficient (always true for monic divisors); otherwise
        :class:`InexactDivision` is raised.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd, lc = divisor.degree, divisor.leading
        if len(rem) - 1 < dd:
            return IntPoly(), IntPoly(rem)
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q, r = divmod(c, lc)
            if r:
                raise InexactDivision(f"leading coefficient {c} not divisible by {lc}")
            quot[i - dd] = q
            for j, dc in enumerate(divisor.coeffs):
                rem[i - dd + j] -= q * dc
        return IntPoly(quot), IntPoly(rem[:dd])

    def exact_div(self, divisor: "IntPoly") -> "IntPoly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise InexactDivision(f"nonzero remainder {r} dividing {self} by {divisor}")
        return q

    def pseudo_rem(self, divisor: "IntPoly") -> "IntPoly":
        """``lc(divisor)**(deg(self)-deg(divisor)+1) * self mod divisor``."""
        dd, lc = divisor.degree, divisor.leading
        rem = list(self.coeffs)
        if len(rem) - 1 < dd:
            return IntPoly(rem)
        delta = len(rem) - 1 - dd
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            rem = [lc * x for x in rem]
            if c:
                for j, dc in enumerate(divisor.coeffs):
                    rem[i - dd + j] -= c * dc
            rem.pop()
        assert len(rem) == dd, delta
        return IntPoly(rem)

    # evaluation ----------------------------------------------------------------

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        """Exact sign of ``self(x)`` for an integer or rational ``x``."""
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = 0
        qpow = 1
        # q**deg * self(p/q) = sum c_i p^i q^(deg-i)
        for c in reversed(self.coeffs):
            acc = acc * p + c * qpow
            qpow *= q
        return (acc > 0) - (acc < 0)

    def sign_at_infinity(self, positive: bool = True) -> int:
        if not self.coeffs:
            return 0
        s = 1 if self.leading > 0 else -1
        if not positive and self.degree % 2:
            s = -s
        return s

    def even_odd_parts(self) -> tuple["IntPoly", "IntPoly"]:
        """``(E, O)`` with ``self(x) = E(x**2) + x*O(x**2)``."""
        return IntPoly(self.coeffs[0::2]), IntPoly(self.coeffs[1::2])


def _coerce(value) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    if isinstance(value, int):
        return IntPoly([value])
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a, b = a.primitive_part(), b.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = a.pseudo_rem(b)
        a, b = b, r.primitive_part()
    return a.primitive_part()


def squarefree_part(p: IntPoly) -> IntPoly:
    """Primitive polynomial with the same distinct complex roots as ``p``."""
    if p.degree <= 0:
        return p.primitive_part()
    g = poly_gcd(p, p.derivative())
    return p.primitive_part().exact_div(g).primitive_part()


def squarefree_decomposition(p: IntPoly) -> list[IntPoly]:
    """Factors ``[a_1, a_2, ...]`` with ``p ~ a_1 * a_2**2 * a_3**3 ...``.

    Each ``a_i`` is primitive and squarefree and carries exactly the roots of
    multiplicity ``i``. Equality holds up to the content of ``p``.
    """
    # g_i = gcd(g_{i-1}, g_{i-1}'); h_i = g_{i-1} / g_i holds roots of mult >= i
    gs = [p.primitive_part()]
    while gs[-1].degree > 0:
        gs.append(poly_gcd(gs[-1], gs[-1].derivative()).primitive_part())
    hs = [a.exact_div(b).primitive_part() for a, b in zip(gs, gs[1:])]
    hs.append(IntPoly([1]))
    return [a.exact_div(b).primitive_part() for a, b in zip(hs, hs[1:])]
