"""Differential operators with polynomial coefficients over Q.

A :class:`WeylOp` is kept in normal form  sum c_{ij} x^j d^i  (d = d/dx to the
right of x). A :class:`ThetaForm` writes an operator as  sum a_i(x) theta^i
with theta = x d/dx and Laurent-polynomial a_i.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, perm
from typing import Iterable, Mapping

from .errors import DomainError, ZeroOperatorError
from .exactnum import RatLike, rat, rat_to_str
from .polys import Laurent

ZERO = Fraction(0)


class WeylOp:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], RatLike] | None = None):
        t = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise DomainError(f"negative exponent in monomial x^{j} d^{i}")
            c = rat(c)
            if c:
                t[(int(i), int(j))] = c
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "WeylOp":
        op = cls.__new__(cls)
        op._terms = {k: v for k, v in terms.items() if v}
        op._hash = None
        return op

    # constructors
    @classmethod
    def const(cls, c: RatLike) -> "WeylOp":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "WeylOp":
        return cls({(0, 1): 1})

    @classmethod
    def d(cls) -> "WeylOp":
        return cls({(1, 0): 1})

    @classmethod
    def theta(cls) -> "WeylOp":
        return cls({(1, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c: RatLike = 1) -> "WeylOp":
        """c x^j d^i."""
        return cls({(i, j): c})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[Laurent]) -> "WeylOp":
        """Build sum_i a_i(x) d^i from polynomial a_i."""
        terms = {}
        for i, a in enumerate(coeffs):
            for e, c in a.items():
                if e < 0:
                    raise DomainError("coefficient is not a polynomial")
                terms[(i, e)] = c
        return cls(terms)

    # inspection
    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def items(self):
        """(i, j, c) triples in canonical order: (i, j) descending."""
        return [(i, j, c) for (i, j), c in sorted(self._terms.items(), reverse=True)]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def order(self) -> int:
        if not self._terms:
            raise ZeroOperatorError("order of the zero operator")
        return max(i for i, _ in self._terms)

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ZeroOperatorError("degree of the zero operator")
        return max(j for _, j in self._terms)

    def coefficient(self, i: int) -> Laurent:
        """a_i(x) in  sum a_i(x) d^i."""
        return Laurent({j: c for (ii, j), c in self._terms.items() if ii == i})

    def coefficients(self) -> list[Laurent]:
        return [self.coefficient(i) for i in range(self.order + 1)]

    def leading_coefficient(self) -> Laurent:
        return self.coefficient(self.order)

    # arithmetic
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.const(other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.const(other)
        t = dict(self._terms)
        for k, v in other._terms.items():
            t[k] = t.get(k, ZERO) + v
        return WeylOp._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return WeylOp.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, WeylOp):
            c = rat(other)
            return WeylOp._raw({k: v * c for k, v in self._terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        c = rat(other)
        return WeylOp._raw({k: c * v for k, v in self._terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative power of an operator")
        result = WeylOp.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"WeylOp({to_text(self)!r})"

    def __str__(self):
        return to_text(self)

    def to_json(self) -> dict:
        return {"terms": [{"i": i, "j": j, "c": rat_to_str(c)} for i, j, c in self.items()]}

    @classmethod
    def from_json(cls, data) -> "WeylOp":
        return cls({(int(t["i"]), int(t["j"])): rat(t["c"]) for t in data["terms"]})


def _monomial_text(i: int, j: int, c: Fraction) -> str:
    parts = [rat_to_str(c)]
    if j:
        parts.append("x" if j == 1 else f"x^{j}")
    if i:
        parts.append("d" if i == 1 else f"d^{i}")
    return "*".join(parts)


def to_text(op: WeylOp) -> str:
    """Canonical text: terms c*x^j*d^i ordered by (i, j) descending."""
    items = op.items()
    if not items:
        return "0"
    out = _monomial_text(*items[0])
    for i, j, c in items[1:]:
        if c < 0:
            out += " - " + _monomial_text(i, j, -c)
        else:
            out += " + " + _monomial_text(i, j, c)
    return out


def _d_pow_times_x_pow(i: int, l: int):
    """Normal form of d^i x^l as (x-degree, d-order, integer coefficient) triples."""
    return [(l - r, i - r, comb(i, r) * perm(l, r)) for r in range(min(i, l) + 1)]


def multiply(phi: WeylOp, psi: WeylOp) -> WeylOp:
    """Noncommutative product phi * psi in normal form (d x = x d + 1)."""
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), c1 in phi._terms.items():
        for (k, l), c2 in psi._terms.items():
            c12 = c1 * c2
            for xdeg, dord, n in _d_pow_times_x_pow(i, l):
                key = (dord + k, j + xdeg)
                out[key] = out.get(key, ZERO) + c12 * n
    return WeylOp._raw(out)


def adjoint(phi: WeylOp) -> WeylOp:
    """Formal adjoint  sum (-d)^i a_i(x)."""
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), c in phi._terms.items():
        sign = -c if i % 2 else c
        for xdeg, dord, n in _d_pow_times_x_pow(i, j):
            key = (dord, xdeg)
            out[key] = out.get(key, ZERO) + sign * n
    return WeylOp._raw(out)


def _check_tau(tau: RatLike) -> Fraction:
    tau = rat(tau)
    if tau == 0:
        raise DomainError("tau must be nonzero")
    return tau


def fourier(phi: WeylOp, tau: RatLike) -> WeylOp:
    """Image under x -> -(1/tau) d, d -> tau x."""
    tau = _check_tau(tau)
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), c in phi._terms.items():
        # x^j d^i  ->  (-1/tau)^j tau^i d^j x^i
        cc = c * (-1) ** j * tau ** (i - j)
        for xdeg, dord, n in _d_pow_times_x_pow(j, i):
            key = (dord, xdeg)
            out[key] = out.get(key, ZERO) + cc * n
    return WeylOp._raw(out)


def homothety(phi: WeylOp, tau: RatLike) -> WeylOp:
    """x -> tau x, d -> d / tau."""
    tau = _check_tau(tau)
    return WeylOp._raw({(i, j): c * tau ** (j - i) for (i, j), c in phi._terms.items()})


def bar(phi: WeylOp) -> WeylOp:
    """x -> -x, d -> -d."""
    return WeylOp._raw({(i, j): -c if (i + j) % 2 else c for (i, j), c in phi._terms.items()})


def inverse_fourier(phi: WeylOp, tau: RatLike) -> WeylOp:
    """Inverse of :func:`fourier`, computed as H_{-1} o F_tau."""
    return homothety(fourier(phi, tau), -1)


# Theta forms


@lru_cache(maxsize=None)
def _falling_theta(i: int) -> tuple[int, ...]:
    """Coefficients of theta(theta-1)...(theta-i+1) = x^i d^i, lowest first."""
    c = [1]
    for r in range(i):
        # multiply by (theta - r)
        nxt = [0] * (len(c) + 1)
        for k, v in enumerate(c):
            nxt[k + 1] += v
            nxt[k] -= r * v
        c = nxt
    return tuple(c)


@lru_cache(maxsize=None)
def _stirling2_row(k: int) -> tuple[int, ...]:
    """S(k, r) for r = 0..k, so theta^k = sum_r S(k, r) x^r d^r."""
    row = [1]
    for n in range(1, k + 1):
        nxt = [0] * (n + 1)
        for r in range(1, n + 1):
            nxt[r] = r * (row[r] if r < len(row) else 0) + row[r - 1]
        row = nxt
    return tuple(row)


class ThetaForm:
    """x^normalizer * (original operator) = sum_i coeffs[i](x) theta^i."""

    __slots__ = ("coeffs", "normalizer")

    def __init__(self, coeffs: Iterable[Laurent], normalizer: int = 0):
        c = [a if isinstance(a, Laurent) else Laurent.const(a) for a in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.coeffs: tuple[Laurent, ...] = tuple(c)
        self.normalizer = int(normalizer)

    @property
    def order(self) -> int:
        if not self.coeffs:
            raise ZeroOperatorError("order of the zero theta form")
        return len(self.coeffs) - 1

    def is_polynomial(self) -> bool:
        return all(a.is_polynomial() for a in self.coeffs)

    def leading(self) -> Laurent:
        return self.coeffs[-1]

    def normalized(self) -> "ThetaForm":
        """Multiply through by the power of x making min exponent 0."""
        nz = [a for a in self.coeffs if a]
        if not nz:
            return self
        k = -min(a.ord() for a in nz)
        return ThetaForm([a.shift(k) for a in self.coeffs], self.normalizer + k)

    def __eq__(self, other):
        if not isinstance(other, ThetaForm):
            return NotImplemented
        return self.coeffs == other.coeffs and self.normalizer == other.normalizer

    def __hash__(self):
        return hash((self.coeffs, self.normalizer))

    def __repr__(self):
        inner = ", ".join(a.to_text() for a in self.coeffs)
        return f"ThetaForm([{inner}], normalizer={self.normalizer})"

    def to_json(self) -> dict:
        return {"normalizer": self.normalizer, "coeffs": [a.to_json() for a in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "ThetaForm":
        return cls([Laurent.from_json(a) for a in data["coeffs"]], int(data.get("normalizer", 0)))


def to_theta(phi: WeylOp) -> ThetaForm:
    """Rewrite x^l phi as sum a_i(x) theta^i with the least l keeping a_i polynomial."""
    if phi.is_zero():
        raise ZeroOperatorError("theta form of the zero operator")
    ell = max(i - j for (i, j) in phi._terms)
    acc: dict[int, dict[int, Fraction]] = {}
    for (i, j), c in phi._terms.items():
        e = j - i + ell
        for k, s in enumerate(_falling_theta(i)):
            if s:
                row = acc.setdefault(k, {})
                row[e] = row.get(e, ZERO) + c * s
    order = max(acc) if acc else 0
    return ThetaForm([Laurent(acc.get(k, {})) for k in range(order + 1)], ell)


def from_theta(t: ThetaForm, denormalize: bool = False) -> WeylOp:
    """The operator sum a_i(x) theta^i in normal form.

    With ``denormalize`` the result is divided by x^normalizer, recovering
    the operator ``to_theta`` started from.
    """
    shift = -t.normalizer if denormalize else 0
    out: dict[tuple[int, int], Fraction] = {}
    for k, a in enumerate(t.coeffs):
        s2 = _stirling2_row(k)
        for e, c in a.items():
            for r, s in enumerate(s2):
                if s:
                    key = (r, e + r + shift)
                    out[key] = out.get(key, ZERO) + c * s
    out = {k: v for k, v in out.items() if v}
    if any(j < 0 for (_, j) in out):
        raise DomainError("theta form does not define an operator with polynomial coefficients")
    return WeylOp._raw(out)


def _theta_binomial_sub(t: ThetaForm, shift_of) -> list[dict[int, Fraction]]:
    # Replace each a_{ie} x^e theta^i by a_{ie} x^e (theta + shift_of(e))^i.
    acc: list[dict[int, Fraction]] = [dict() for _ in t.coeffs]
    for i, a in enumerate(t.coeffs):
        for e, c in a.items():
            beta = shift_of(e)
            for k in range(i + 1):
                v = c * comb(i, k) * beta ** (i - k)
                if v:
                    acc[k][e] = acc[k].get(e, ZERO) + v
    return acc


def twist_alpha(t: ThetaForm, alpha: RatLike) -> ThetaForm:
    """sum a_i(x) (theta - alpha)^i, re-expanded in powers of theta."""
    alpha = rat(alpha)
    acc = _theta_binomial_sub(t, lambda e: -alpha)
    return ThetaForm([Laurent(r) for r in acc], t.normalizer)


def infinity_form(t: ThetaForm) -> ThetaForm:
    """Change of variable x -> 1/x (theta -> -theta); the normalizer flips sign."""
    return ThetaForm(
        [a.invert_variable() * (-1) ** i for i, a in enumerate(t.coeffs)], -t.normalizer
    )


def theta_adjoint(t: ThetaForm) -> ThetaForm:
    """Adjoint with respect to the derivation theta:  sum (-theta)^i a_i(x).

    Uses theta x^e = x^e (theta + e), so (-theta)^i x^e = x^e (-theta - e)^i.
    The result is a theta form in its own right (normalizer 0).
    """
    acc: list[dict[int, Fraction]] = [dict() for _ in t.coeffs]
    for i, a in enumerate(t.coeffs):
        for e, c in a.items():
            # (-theta - e)^i = sum_k C(i,k) (-1)^k theta^k (-e)^(i-k)
            for k in range(i + 1):
                v = c * comb(i, k) * (-1) ** k * Fraction(-e) ** (i - k)
                if v:
                    acc[k][e] = acc[k].get(e, ZERO) + v
    return ThetaForm([Laurent(r) for r in acc], 0)


def theta_operator(coeffs: Iterable, normalizer: int = 0) -> ThetaForm:
    """Convenience: coefficients given as lists (polynomials, lowest degree first)."""
    out = []
    for a in coeffs:
        if isinstance(a, Laurent):
            out.append(a)
        elif isinstance(a, (list, tuple)):
            out.append(Laurent.from_list(a))
        else:
            out.append(Laurent.const(a))
    return ThetaForm(out, normalizer)
