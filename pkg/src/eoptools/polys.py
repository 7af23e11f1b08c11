"""Laurent polynomials in x and univariate polynomials in s, over Q."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .exactnum import rat, rat_to_str

ZERO = Fraction(0)


class Laurent:
    """Finite sum  sum_e c_e x^e  with e in Z; zero coefficients never stored."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            v = rat(v)
            if v:
                c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def const(cls, c) -> "Laurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c=1) -> "Laurent":
        return cls({e: c})

    @classmethod
    def from_list(cls, coeffs: Sequence) -> "Laurent":
        return cls({e: c for e, c in enumerate(coeffs)})

    def items(self):
        return sorted(self._c.items())

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, ZERO)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def ord(self) -> int:
        return min(self._c)

    def deg(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_polynomial(self) -> bool:
        return not self._c or self.ord() >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, ZERO) + v
        return Laurent(c)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Laurent.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            other = rat(other)
            return Laurent({e: v * other for e, v in self._c.items()})
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, ZERO) + v1 * v2
        return Laurent(c)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Laurent":
        """Multiply by x^k."""
        return Laurent({e + k: v for e, v in self._c.items()})

    def derivative(self) -> "Laurent":
        return Laurent({e - 1: e * v for e, v in self._c.items() if e})

    def invert_variable(self) -> "Laurent":
        """Substitute x -> 1/x."""
        return Laurent({-e: v for e, v in self._c.items()})

    def scale_variable(self, t) -> "Laurent":
        """Substitute x -> t x."""
        t = rat(t)
        return Laurent({e: v * t**e for e, v in self._c.items()})

    def __repr__(self):
        return f"Laurent({self.to_text()})"

    def to_text(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            parts.append(f"{rat_to_str(v)}*x^{e}" if e else rat_to_str(v))
        return " + ".join(parts)

    def to_json(self) -> dict[str, str]:
        return {str(e): rat_to_str(v) for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data) -> "Laurent":
        if isinstance(data, (int, str)):
            return cls.const(rat(data))
        return cls({int(e): rat(v) for e, v in data.items()})


# Univariate polynomials in s: tuples of coefficients, constant term first.

Poly = tuple


def poly(coeffs: Iterable) -> Poly:
    c = [rat(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return poly((a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n))


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, w in enumerate(b):
                out[i + j] += u * w
    return poly(out)


def poly_eval(a: Poly, s) -> Fraction:
    acc = ZERO
    for c in reversed(a):
        acc = acc * s + c
    return acc


def poly_compose_shift(a: Poly, alpha) -> Poly:
    """Return the polynomial s -> a(s + alpha)."""
    alpha = rat(alpha)
    out = [ZERO] * len(a)
    for i, c in enumerate(a):
        if c:
            for j in range(i + 1):
                out[j] += c * comb(i, j) * alpha ** (i - j)
    return poly(out)


def poly_to_json(a: Poly) -> list[str]:
    return [rat_to_str(c) for c in a]


def rational_roots(a: Poly) -> tuple[list[Fraction], bool]:
    """Rational roots of ``a`` with multiplicity (sorted) and a flag telling
    whether a non-constant factor without rational roots remains."""
    if not a:
        raise ValueError("roots of the zero polynomial")
    if len(a) == 1:
        return [], False
    import sympy

    s = sympy.Symbol("s")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * s**i for i, c in enumerate(a))
    _, factors = sympy.factor_list(sympy.Poly(expr, s, domain="QQ"))
    roots: list[Fraction] = []
    residual = False
    for f, mult in factors:
        if f.degree() == 1:
            c1, c0 = f.all_coeffs()
            r = -sympy.Rational(c0) / sympy.Rational(c1)
            roots.extend([Fraction(int(r.p), int(r.q))] * int(mult))
        elif f.degree() > 1:
            residual = True
    return sorted(roots), residual
