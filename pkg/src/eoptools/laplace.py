"""Formal generalized Laplace transform of twisted Laurent blocks.

A block represents A(x) x^Lambda with A(x) = sum_{i=a}^{b} A_i x^i. The
transform sends it to sum_i A_i C(i) x^(-Lambda-(i+1)), where the matrix
rising factorial C = C_{Lambda,tau} is fixed by C(0) = I and
tau C(i) = (Lambda + i) C(i-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from . import linalg as la
from .errors import DomainError, IntegerEigenvalue, IrrationalEigenvalue
from .exactnum import INF, RatLike, _check_prime, _vp_int, rat, rat_to_str, vp
from .linalg import Matrix
from .polys import poly, rational_roots
from .weyl import WeylOp

ZERO = Fraction(0)


@dataclass(frozen=True)
class TwistMatrix:
    lam: tuple  # rows of Fractions
    eigenvalues: tuple
    d: int  # common denominator of the eigenvalues

    @property
    def n(self) -> int:
        return len(self.lam)

    def matrix(self) -> Matrix:
        return [list(r) for r in self.lam]

    def negated(self) -> "TwistMatrix":
        return TwistMatrix(
            tuple(tuple(-c for c in r) for r in self.lam),
            tuple(sorted(-e for e in self.eigenvalues)),
            self.d,
        )

    def to_json(self) -> list:
        return la.matrix_to_json(self.matrix())


def check_twist(lam: Sequence[Sequence[RatLike]]) -> TwistMatrix:
    """Certify that Lambda has rational, non-integer eigenvalues."""
    m = la.as_matrix(lam)
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise DomainError("twist must be a nonempty square matrix")
    roots, residual = rational_roots(poly(la.charpoly(m)))
    if residual or len(roots) != n:
        raise IrrationalEigenvalue("twist has eigenvalues outside Q")
    ints = [r for r in roots if r.denominator == 1]
    if ints:
        raise IntegerEigenvalue(f"twist has integer eigenvalue {ints[0]}")
    d = lcm(*(r.denominator for r in roots))
    return TwistMatrix(tuple(tuple(r) for r in m), tuple(roots), d)


def _integer_scaled(tw: TwistMatrix) -> tuple[list[list[int]], int]:
    """(M, D) with Lambda = M / D, M integral."""
    den = lcm(*(c.denominator for row in tw.lam for c in row))
    return [[int(c * den) for c in row] for row in tw.lam], den


def _imul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def _int_adjugate(m: list[list[int]]) -> tuple[list[list[int]], int]:
    """(adj(m), det(m)) over Z, via the exact rational inverse."""
    q = [[Fraction(c) for c in row] for row in m]
    det = la.det(q)
    inv = la.inverse(q)
    return [[int(c * det) for c in row] for row in inv], int(det)


class CCache:
    """Memo of C(i) for one (Lambda, tau).

    Internally C(i) = scale_i * N_i with N_i an integer matrix, so each new
    index costs one small-by-big integer matrix product.
    """

    def __init__(self, twist: TwistMatrix, tau: RatLike):
        tau = rat(tau)
        if tau == 0:
            raise DomainError("tau must be nonzero")
        self.twist = twist
        self.tau = tau
        self._M, self._D = _integer_scaled(twist)
        n = twist.n
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        self._raw: dict[int, tuple[list[list[int]], Fraction]] = {0: (ident, Fraction(1))}
        self._hi = 0
        self._lo = 0
        self._values: dict[int, Matrix] = {}

    def _shifted(self, k: int) -> list[list[int]]:
        """D * (Lambda + k) as an integer matrix."""
        return [[c + (k * self._D if i == j else 0) for j, c in enumerate(row)] for i, row in enumerate(self._M)]

    def _extend_to(self, i: int) -> None:
        while self._hi < i:
            k = self._hi + 1
            N, s = self._raw[self._hi]
            # tau C(k) = (Lambda + k) C(k-1)
            self._raw[k] = (_imul(self._shifted(k), N), s / (self._D * self.tau))
            self._hi = k
        while self._lo > i:
            k = self._lo
            N, s = self._raw[k]
            # C(k-1) = tau (Lambda + k)^-1 C(k)
            adj, det = _int_adjugate(self._shifted(k))
            self._raw[k - 1] = (_imul(adj, N), s * self.tau * self._D / det)
            self._lo = k - 1

    def raw(self, i: int) -> tuple[list[list[int]], Fraction]:
        self._extend_to(i)
        return self._raw[i]

    def get(self, i: int) -> Matrix:
        if i not in self._values:
            N, s = self.raw(i)
            self._values[i] = [[s * c for c in row] for row in N]
        return self._values[i]

    def cached_indices(self) -> list[int]:
        return sorted(self._raw)

    def valuation(self, i: int, p: int) -> Fraction:
        """Minimum entrywise vp of C(i), without forming the fractions."""
        N, s = self.raw(i)
        return _raw_vp(N, s, p)


def _raw_vp(N, s: Fraction, p: int):
    nz = [_vp_int(c, p) for row in N for c in row if c]
    if not nz:
        return INF
    return Fraction(min(nz)) + vp(s, p)


def c_lambda(cache: CCache, twist: TwistMatrix | None, i: int) -> Matrix:
    if twist is not None and twist != cache.twist:
        raise DomainError("cache was built for a different twist")
    return cache.get(i)


@dataclass(frozen=True)
class TwistedBlock:
    """sum_{i in window} coeffs[i] x^i, times x^twist on the right."""

    coeffs: Mapping[int, Matrix]
    twist: TwistMatrix
    shape: tuple = field(default=None)

    def __post_init__(self):
        c = {int(i): la.as_matrix(m) for i, m in self.coeffs.items()}
        shp = self.shape
        if shp is None:
            if not c:
                raise DomainError("empty block needs an explicit shape")
            shp = la.shape(next(iter(c.values())))
        c = {i: m for i, m in c.items() if not la.is_zero(m)}
        if any(la.shape(m) != shp for m in c.values()):
            raise DomainError("coefficients of different shapes")
        if shp[1] != self.twist.n:
            raise DomainError("coefficient columns must match the twist size")
        object.__setattr__(self, "coeffs", dict(sorted(c.items())))
        object.__setattr__(self, "shape", tuple(shp))

    @property
    def window(self) -> tuple[int, int] | None:
        if not self.coeffs:
            return None
        ks = list(self.coeffs)
        return ks[0], ks[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Matrix:
        return self.coeffs.get(i, la.zeros(*self.shape))

    def __eq__(self, other):
        if not isinstance(other, TwistedBlock):
            return NotImplemented
        return self.twist.lam == other.twist.lam and self.coeffs == other.coeffs and self.shape == other.shape

    def __add__(self, other: "TwistedBlock") -> "TwistedBlock":
        if other.twist.lam != self.twist.lam or other.shape != self.shape:
            raise DomainError("blocks with different twists or shapes")
        out = dict(self.coeffs)
        for i, m in other.coeffs.items():
            out[i] = la.add(out[i], m) if i in out else m
        return TwistedBlock(out, self.twist, self.shape)

    def scale(self, c) -> "TwistedBlock":
        c = rat(c)
        return TwistedBlock({i: la.scale(c, m) for i, m in self.coeffs.items()}, self.twist, self.shape)

    def right_mul(self, m: Matrix) -> "TwistedBlock":
        """Multiply every coefficient on the right by a constant matrix commuting with x^twist."""
        return TwistedBlock({i: la.mul(a, m) for i, a in self.coeffs.items()}, self.twist, self.shape)

    def shift(self, k: int) -> "TwistedBlock":
        """Multiply by x^k."""
        return TwistedBlock({i + k: m for i, m in self.coeffs.items()}, self.twist, self.shape)

    def reflect(self) -> "TwistedBlock":
        """A(x) -> A(-x)."""
        return TwistedBlock(
            {i: (la.scale(-1, m) if i % 2 else m) for i, m in self.coeffs.items()}, self.twist, self.shape
        )

    def to_json(self) -> dict:
        w = self.window
        return {
            "window": list(w) if w else None,
            "twist": self.twist.to_json(),
            "coeffs": {str(i): la.matrix_to_json(m) for i, m in self.coeffs.items()},
        }

    @classmethod
    def from_json(cls, data) -> "TwistedBlock":
        tw = check_twist(data["twist"])
        coeffs = {int(i): la.as_matrix(m) for i, m in data["coeffs"].items()}
        return cls(coeffs, tw, None if coeffs else (1, tw.n))


def block(coeffs: Mapping[int, Sequence], twist) -> TwistedBlock:
    tw = twist if isinstance(twist, TwistMatrix) else check_twist(twist)
    return TwistedBlock({i: la.as_matrix(m) for i, m in coeffs.items()}, tw)


def laplace_transform(f: TwistedBlock, tau: RatLike, cache: CCache | None = None) -> TwistedBlock:
    """Coefficient at -(i+1) is A_i C(i); the output twist is -Lambda."""
    cache = cache or CCache(f.twist, tau)
    if cache.tau != rat(tau) or cache.twist.lam != f.twist.lam:
        raise DomainError("cache does not match the block")
    out = {-(i + 1): la.mul(a, cache.get(i)) for i, a in f.coeffs.items()}
    return TwistedBlock(out, f.twist.negated(), f.shape)


def derivative_twisted(f: TwistedBlock) -> TwistedBlock:
    """d/dx (A_i x^i x^Lambda) = A_i (Lambda + i) x^(i-1) x^Lambda."""
    lam = f.twist.matrix()
    out = {i - 1: la.mul(a, la.add_scalar(lam, i)) for i, a in f.coeffs.items()}
    return TwistedBlock(out, f.twist, f.shape)


def apply_operator(phi: WeylOp, f: TwistedBlock) -> TwistedBlock:
    """phi = sum c x^j d^i acting on the block, derivatives first."""
    derivs = [f]
    result = TwistedBlock({}, f.twist, f.shape)
    for i, j, c in phi.items():
        while len(derivs) <= i:
            derivs.append(derivative_twisted(derivs[-1]))
        result = result + derivs[i].shift(j).scale(c)
    return result


@dataclass(frozen=True)
class CCIdentity:
    i: int
    lhs: Matrix
    rhs: Matrix

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "lhs": la.matrix_to_json(self.lhs),
            "rhs": la.matrix_to_json(self.rhs),
            "equal": self.equal,
        }


def cc_identity(twist: TwistMatrix, tau: RatLike, i: int, caches: tuple[CCache, CCache] | None = None) -> CCIdentity:
    """C_Lambda(i) C_{-Lambda}(-i-1) against (-1)^(i+1) tau Lambda^-1."""
    tau = rat(tau)
    cp, cm = caches or (CCache(twist, tau), CCache(twist.negated(), tau))
    lhs = la.mul(cp.get(i), cm.get(-i - 1))
    sign = 1 if (i + 1) % 2 == 0 else -1
    rhs = la.scale(sign * tau, la.inverse(twist.matrix()))
    return CCIdentity(i, lhs, rhs)


def _check_p_vs_d(twist: TwistMatrix, p: int) -> None:
    _check_prime(p)
    if twist.d % p == 0:
        raise DomainError(f"p = {p} divides the eigenvalue denominator {twist.d}")


def expected_c_slope(tau: RatLike, p: int) -> Fraction:
    """1/(p-1) - vp(tau)."""
    return Fraction(1, p - 1) - vp(tau, p)


@dataclass(frozen=True)
class SlopeReport:
    label: str
    expected: Fraction
    empirical: float
    tolerance: float

    @property
    def verdict(self) -> str:
        return "PASS" if abs(self.empirical - float(self.expected)) <= self.tolerance else "FAIL"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "expected": rat_to_str(self.expected),
            "empirical": self.empirical,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
        }


def c_valuation_slope(
    twist: TwistMatrix, tau: RatLike, p: int, horizon: int, tolerance: float = 0.02
) -> tuple[SlopeReport, SlopeReport]:
    """vp(C(h))/h and vp(C(-h))/h at h = horizon, with their limits +-(1/(p-1) - vp(tau))."""
    _check_p_vs_d(twist, p)
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    cache = CCache(twist, tau)
    kappa = expected_c_slope(tau, p)
    plus = float(cache.valuation(horizon, p)) / horizon
    minus = float(cache.valuation(-horizon, p)) / horizon
    return (
        SlopeReport("plus", kappa, plus, tolerance),
        SlopeReport("minus", -kappa, minus, tolerance),
    )


def radius_shift_check(
    f: TwistedBlock,
    tau: RatLike,
    p: int,
    horizon: int,
    slope_pos: RatLike | None = None,
    slope_neg: RatLike | None = None,
    tolerance: float = 0.02,
) -> list[SlopeReport]:
    """Tail valuation slopes of the transform against the shifted envelopes.

    ``slope_pos`` is the declared limit of vp(A_i)/i as i -> +inf (outer radius
    p^slope_pos); ``slope_neg`` that of vp(A_-i)/i (inner radius p^-slope_neg).
    The transform's tails then have slopes slope_pos + kappa (towards -inf)
    and slope_neg - kappa (towards +inf), kappa = 1/(p-1) - vp(tau).
    Only the tails that reach distance ``horizon`` are checked.
    """
    _check_p_vs_d(f.twist, p)
    if slope_pos is None and slope_neg is None:
        raise DomainError("no valuation envelope supplied")
    kappa = expected_c_slope(tau, p)
    cache = CCache(f.twist, tau)
    reports = []
    w = f.window
    if w is None:
        return reports

    def tail_vp(i: int):
        # vp of A_i C(i), computed through the integer form of C(i).
        N, s = cache.raw(i)
        prod = _imul([[c.numerator * (_lcm_den(f.coeff(i)) // c.denominator) for c in row] for row in f.coeff(i)], N)
        return _raw_vp(prod, s / _lcm_den(f.coeff(i)), p)

    if slope_pos is not None and w[1] >= horizon:
        i = w[1]
        v = tail_vp(i)
        reports.append(SlopeReport("negative_tail", rat(slope_pos) + kappa, float(v) / (i + 1), tolerance))
    if slope_neg is not None and w[0] <= -horizon:
        i = w[0]
        v = tail_vp(i)
        reports.append(SlopeReport("positive_tail", rat(slope_neg) - kappa, float(v) / (-i - 1), tolerance))
    return reports


def _lcm_den(m: Matrix) -> int:
    return lcm(*(c.denominator for row in m for c in row))
