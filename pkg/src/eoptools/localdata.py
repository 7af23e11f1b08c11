"""Local data at a regular singular point.

Systems are written dX/dx = A(x) X with A a matrix of Laurent polynomials over
a common scalar denominator (:class:`PolyMat`). Power series are truncated
matrix Laurent series with an explicit window (:class:`SeriesMat`). The gauge
action is Y[A] = Y A Y^-1 + Y' Y^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .errors import (
    DomainError,
    IrrationalEigenvalue,
    NotARoot,
    NotRegularAtZero,
    PoleOrderTooHigh,
    PrecisionError,
    ResonantExponent,
    ResonantResidue,
    SingularMatrixError,
    ZeroOperatorError,
)
from .exactnum import INF, RatLike, rat, rat_to_str
from .linalg import Matrix
from .polys import Laurent, Poly, poly, poly_eval, rational_roots
from .weyl import ThetaForm, WeylOp, infinity_form

ZERO = Fraction(0)
ONE = Fraction(1)


# Matrices of Laurent polynomials


class PolyMat:
    """entries / denominator, entries a matrix of Laurent polynomials."""

    __slots__ = ("entries", "denominator")

    def __init__(self, entries: Sequence[Sequence], denominator: Laurent | RatLike = 1):
        rows = []
        for row in entries:
            rows.append(tuple(e if isinstance(e, Laurent) else Laurent.const(e) for e in row))
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DomainError("ragged matrix")
        den = denominator if isinstance(denominator, Laurent) else Laurent.const(denominator)
        if den.is_zero():
            raise DomainError("zero denominator")
        self.entries: tuple[tuple[Laurent, ...], ...] = tuple(rows)
        self.denominator = den

    @classmethod
    def constant(cls, m: Matrix, denominator: Laurent | RatLike = 1) -> "PolyMat":
        return cls([[Laurent.const(c) for c in row] for row in m], denominator)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    def __eq__(self, other):
        if not isinstance(other, PolyMat):
            return NotImplemented
        # Cross-multiplied comparison, so different denominators can be equal.
        return all(
            a * other.denominator == b * self.denominator
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        ) and self.shape == other.shape

    def __neg__(self):
        return PolyMat([[-e for e in row] for row in self.entries], self.denominator)

    def transpose(self) -> "PolyMat":
        return PolyMat([list(c) for c in zip(*self.entries)], self.denominator)

    def invert_variable(self) -> "PolyMat":
        """Substitute x -> 1/x."""
        return PolyMat(
            [[e.invert_variable() for e in row] for row in self.entries],
            self.denominator.invert_variable(),
        )

    def pole_order(self) -> int:
        """Pole order at x = 0 (negative when A vanishes there); 0 for the zero matrix."""
        nz = [e.ord() for row in self.entries for e in row if e]
        if not nz:
            return 0
        return self.denominator.ord() - min(nz)

    def to_series(self, k_min: int, upto: int) -> "SeriesMat":
        """Laurent expansion at 0 with coefficients k in [k_min, upto)."""
        if self.pole_order() > -k_min:
            raise PoleOrderTooHigh(f"pole of order {self.pole_order()} at 0")
        d0 = self.denominator.ord()
        unit = self.denominator.shift(-d0)
        n_terms = upto - k_min
        # Every exponent ex - d0 is >= k_min, so n_terms terms of 1/unit suffice.
        need = n_terms
        u0 = unit.coeff(0)
        inv = [ONE / u0]
        for k in range(1, need):
            acc = ZERO
            for e, c in unit.items():
                if 1 <= e <= k:
                    acc += c * inv[k - e]
            inv.append(-acc / u0)
        n, m = self.shape
        coeffs = [la.zeros(n, m) for _ in range(n_terms)]
        for r, row in enumerate(self.entries):
            for c, e in enumerate(row):
                for ex, val in e.items():
                    # val x^(ex - d0) * sum inv_j x^j
                    base = ex - d0
                    for j in range(upto - base):
                        if inv[j]:
                            coeffs[base + j - k_min][r][c] += val * inv[j]
        return SeriesMat(k_min, coeffs)

    def to_json(self) -> dict:
        return {
            "entries": [[e.to_json() for e in row] for row in self.entries],
            "denominator": self.denominator.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "PolyMat":
        return cls(
            [[Laurent.from_json(e) for e in row] for row in data["entries"]],
            Laurent.from_json(data.get("denominator", {"0": "1"})),
        )

    def __repr__(self):
        return f"PolyMat({[[e.to_text() for e in r] for r in self.entries]}, den={self.denominator.to_text()})"


class SeriesMat:
    """sum_{k = k_min}^{k_min + prec - 1} M_k x^k  +  O(x^(k_min + prec))."""

    __slots__ = ("k_min", "coeffs")

    def __init__(self, k_min: int, coeffs: Sequence[Matrix]):
        self.k_min = int(k_min)
        self.coeffs: list[Matrix] = [la.as_matrix(m) for m in coeffs]
        if not self.coeffs:
            raise PrecisionError("series with an empty window")

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    @property
    def valid_until(self) -> int:
        """First exponent whose coefficient is unknown."""
        return self.k_min + len(self.coeffs)

    @property
    def shape(self) -> tuple[int, int]:
        return la.shape(self.coeffs[0])

    @classmethod
    def constant(cls, m: Matrix, prec: int) -> "SeriesMat":
        n, c = la.shape(m)
        return cls(0, [la.as_matrix(m)] + [la.zeros(n, c) for _ in range(prec - 1)])

    @classmethod
    def identity(cls, n: int, prec: int) -> "SeriesMat":
        return cls.constant(la.identity(n), prec)

    @classmethod
    def scalar(cls, coeffs: Sequence[RatLike], k_min: int = 0) -> "SeriesMat":
        return cls(k_min, [[[rat(c)]] for c in coeffs])

    def coeff(self, k: int) -> Matrix:
        if k < self.k_min:
            return la.zeros(*self.shape)
        if k >= self.valid_until:
            raise PrecisionError(f"coefficient {k} is beyond the known window")
        return self.coeffs[k - self.k_min]

    def scalar_coeffs(self) -> list[Fraction]:
        return [m[0][0] for m in self.coeffs]

    def truncate(self, upto: int) -> "SeriesMat":
        if upto > self.valid_until:
            raise PrecisionError("cannot extend a truncated series")
        return SeriesMat(self.k_min, self.coeffs[: upto - self.k_min])

    def strip(self) -> "SeriesMat":
        """Drop leading zero coefficients (moves k_min up, shrinks prec)."""
        k = 0
        while k < len(self.coeffs) - 1 and la.is_zero(self.coeffs[k]):
            k += 1
        return SeriesMat(self.k_min + k, self.coeffs[k:])

    def is_zero(self) -> bool:
        return all(la.is_zero(m) for m in self.coeffs)

    def __add__(self, other: "SeriesMat") -> "SeriesMat":
        lo = min(self.k_min, other.k_min)
        hi = min(self.valid_until, other.valid_until)
        if hi <= lo:
            raise PrecisionError("no overlap between the windows")
        return SeriesMat(lo, [la.add(self.coeff(k), other.coeff(k)) for k in range(lo, hi)])

    def __neg__(self):
        return SeriesMat(self.k_min, [la.scale(-1, m) for m in self.coeffs])

    def __sub__(self, other: "SeriesMat") -> "SeriesMat":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SeriesMat):
            return series_mul(self, other)
        if isinstance(other, list):
            return SeriesMat(self.k_min, [la.mul(m, other) for m in self.coeffs])
        c = rat(other)
        return SeriesMat(self.k_min, [la.scale(c, m) for m in self.coeffs])

    def __rmul__(self, other):
        if isinstance(other, list):
            return SeriesMat(self.k_min, [la.mul(other, m) for m in self.coeffs])
        c = rat(other)
        return SeriesMat(self.k_min, [la.scale(c, m) for m in self.coeffs])

    def shift(self, k: int) -> "SeriesMat":
        """Multiply by x^k."""
        return SeriesMat(self.k_min + k, self.coeffs)

    def derivative(self) -> "SeriesMat":
        return SeriesMat(
            self.k_min - 1, [la.scale(self.k_min + i, m) for i, m in enumerate(self.coeffs)]
        )

    def transpose(self) -> "SeriesMat":
        return SeriesMat(self.k_min, [la.transpose(m) for m in self.coeffs])

    def inverse(self) -> "SeriesMat":
        s = self.strip()
        s0 = s.coeffs[0]
        try:
            t0 = la.inverse(s0)
        except SingularMatrixError:
            raise SingularMatrixError("leading coefficient is not invertible") from None
        out = [t0]
        for k in range(1, s.prec):
            acc = la.zeros(*la.shape(t0))
            for i in range(1, k + 1):
                if not la.is_zero(s.coeffs[i]):
                    acc = la.add(acc, la.mul(s.coeffs[i], out[k - i]))
            out.append(la.scale(-1, la.mul(t0, acc)))
        return SeriesMat(-s.k_min, out)

    def __eq__(self, other):
        if not isinstance(other, SeriesMat):
            return NotImplemented
        return self.k_min == other.k_min and self.coeffs == other.coeffs

    def to_json(self) -> dict:
        return {
            "k_min": self.k_min,
            "prec": self.prec,
            "coeffs": [la.matrix_to_json(m) for m in self.coeffs],
        }

    @classmethod
    def from_json(cls, data) -> "SeriesMat":
        return cls(int(data["k_min"]), [la.matrix_from_json(m) for m in data["coeffs"]])

    def __repr__(self):
        return f"SeriesMat(k_min={self.k_min}, prec={self.prec}, shape={self.shape})"


def series_mul(a: SeriesMat, b: SeriesMat) -> SeriesMat:
    prec = min(a.prec, b.prec)
    n, _ = a.shape
    _, m = b.shape
    nz_a = [(i, c) for i, c in enumerate(a.coeffs[:prec]) if not la.is_zero(c)]
    nz_b = {j: c for j, c in enumerate(b.coeffs[:prec]) if not la.is_zero(c)}
    out = [la.zeros(n, m) for _ in range(prec)]
    for i, ca in nz_a:
        for j in range(prec - i):
            cb = nz_b.get(j)
            if cb is not None:
                out[i + j] = la.add(out[i + j], la.mul(ca, cb))
    return SeriesMat(a.k_min + b.k_min, out)


def _as_series(A, k_min: int, upto: int) -> SeriesMat:
    if isinstance(A, SeriesMat):
        return A
    return A.to_series(k_min, upto)


def gauge(Y: SeriesMat, A: PolyMat | SeriesMat) -> SeriesMat:
    """Y[A] = Y A Y^-1 + Y' Y^-1, on the largest window the inputs determine."""
    Yi = Y.inverse()
    if isinstance(A, PolyMat):
        k0 = min(-A.pole_order(), 0)
        A = A.to_series(k0, k0 + Y.prec)
    return series_mul(series_mul(Y, A), Yi) + series_mul(Y.derivative(), Yi)


def gauge_residual(Y: SeriesMat, A, gamma: Matrix) -> SeriesMat:
    """Y[A] - gamma/x."""
    g = gauge(Y, A)
    return g - SeriesMat(-1, [gamma] + [la.zeros(*la.shape(gamma)) for _ in range(g.valid_until)])


# Companion systems


def companion(phi: WeylOp) -> PolyMat:
    """System for (y, y', ..., y^(m-1)): superdiagonal 1, last row -a_k / a_m."""
    if phi.is_zero():
        raise ZeroOperatorError("companion of the zero operator")
    m = phi.order
    if m < 1:
        raise DomainError("companion matrix needs an operator of order >= 1")
    a = phi.coefficients()
    am = a[m]
    rows = [[Laurent() for _ in range(m)] for _ in range(m)]
    for r in range(m - 1):
        rows[r][r + 1] = am
    for k in range(m):
        rows[m - 1][k] = -a[k]
    return PolyMat(rows, am)


def theta_companion(t: ThetaForm) -> PolyMat:
    """System for (y, theta y, ..., theta^(m-1) y), written for d/dx: C(x)/(x a_m)."""
    m = t.order
    if m < 1:
        raise DomainError("companion matrix needs an operator of order >= 1")
    am = t.coeffs[m]
    rows = [[Laurent() for _ in range(m)] for _ in range(m)]
    for r in range(m - 1):
        rows[r][r + 1] = am
    for k in range(m):
        rows[m - 1][k] = -t.coeffs[k]
    return PolyMat(rows, am.shift(1))


# Indicial polynomials and exponents


def _lowest_row(t: ThetaForm) -> int:
    nz = [a.ord() for a in t.coeffs if a]
    if not nz:
        raise ZeroOperatorError("indicial polynomial of the zero form")
    return min(nz)


def indicial_at_zero(t: ThetaForm) -> Poly:
    """sum_i a_{i,e} s^i where x^e is the lowest power present (e = 0 when normalized)."""
    e = _lowest_row(t)
    return poly(a.coeff(e) for a in t.coeffs)


def indicial_at_infinity(t: ThetaForm) -> Poly:
    return indicial_at_zero(infinity_form(t))


def is_regular_at_zero_theta(t: ThetaForm) -> bool:
    """Fuchs criterion: ord a_m is the least order among the a_i."""
    return t.coeffs[-1].ord() == _lowest_row(t)


@dataclass(frozen=True)
class ExponentSet:
    roots: tuple  # rational roots with multiplicity, sorted
    non_rational: bool

    def to_json(self) -> dict:
        return {"exponents": [rat_to_str(r) for r in self.roots], "non_rational_flag": self.non_rational}


def exponents_at_zero(t: ThetaForm) -> ExponentSet:
    if not is_regular_at_zero_theta(t):
        raise NotRegularAtZero("operator is irregular at 0")
    roots, residual = rational_roots(indicial_at_zero(t))
    return ExponentSet(tuple(roots), residual)


def exponents_at_infinity(t: ThetaForm) -> ExponentSet:
    return exponents_at_zero(infinity_form(t))


# Reduction


@dataclass(frozen=True)
class ReductionResult:
    Y: SeriesMat  # coefficients Y_0 .. Y_prec
    gamma: Matrix
    prec: int
    at: str = "0"
    Y_inv: SeriesMat | None = None

    def to_json(self) -> dict:
        d = self.Y.to_json()
        d["gamma"] = la.matrix_to_json(self.gamma)
        d["at"] = self.at
        d["reduction_prec"] = self.prec
        return d


def residue_eigenvalues(gamma: Matrix) -> list[Fraction]:
    roots, residual = rational_roots(poly(la.charpoly(gamma)))
    if residual or len(roots) != len(gamma):
        raise IrrationalEigenvalue("residue has non-rational eigenvalues")
    return roots


def _check_non_resonant(eigs: list[Fraction]) -> None:
    for a in eigs:
        for b in eigs:
            d = a - b
            if d != 0 and d.denominator == 1:
                raise ResonantResidue(f"eigenvalues {a} and {b} differ by an integer")


def reduce_at_zero(A: PolyMat | SeriesMat, prec: int, with_inverse: bool = False) -> ReductionResult:
    """Y with Y[A] = Gamma/x through order prec - 1, Gamma the residue, Y_0 = Identity.

    Coefficient k solves (Gamma - k) Y_k - Y_k Gamma = sum_{l<k} Y_l A_{k-1-l}.
    With ``with_inverse`` the inverse is computed from its own recurrence
    (Z' = A Z - Z Gamma/x), much cheaper than a series inversion.
    """
    if prec < 1:
        raise DomainError("prec must be >= 1")
    if isinstance(A, PolyMat):
        if A.pole_order() > 1:
            raise PoleOrderTooHigh(f"pole of order {A.pole_order()} at 0; not of the first kind")
        S = A.to_series(-1, prec)
    else:
        S = A
        st = S.strip()
        if st.k_min < -1 and not st.is_zero():
            raise PoleOrderTooHigh("pole of order > 1 at 0")
        if S.valid_until < prec:
            raise PrecisionError("system known to insufficient order")
    n = S.shape[0]
    gamma = S.coeff(-1)
    _check_non_resonant(residue_eigenvalues(gamma))
    a = [S.coeff(k) for k in range(0, prec)]
    nz = [(j, m) for j, m in enumerate(a) if not la.is_zero(m)]
    Y = [la.identity(n)]
    Z = [la.identity(n)]
    for k in range(1, prec + 1):
        shifted = la.add_scalar(gamma, -k)
        rhs = la.zeros(n)
        for j, aj in nz:
            l = k - 1 - j
            if l < 0:
                break
            rhs = la.add(rhs, la.mul(Y[l], aj))
        Y.append(la.sylvester_solve(shifted, gamma, rhs))
        if with_inverse:
            rhs = la.zeros(n)
            for j, aj in nz:
                l = k - 1 - j
                if l < 0:
                    break
                rhs = la.sub(rhs, la.mul(aj, Z[l]))
            Z.append(la.sylvester_solve(shifted, gamma, rhs))
    Zs = SeriesMat(0, Z) if with_inverse else None
    return ReductionResult(SeriesMat(0, Y), gamma, prec, "0", Zs)


def system_at_infinity(A: PolyMat) -> PolyMat:
    """B(w) = -w^-2 A(1/w), the system in the variable w = 1/x."""
    inv = A.invert_variable()
    return PolyMat([[-e for e in row] for row in inv.entries], inv.denominator.shift(2))


def reduce_at_infinity(A: PolyMat, prec: int) -> ReductionResult:
    """Reduction in w = 1/x; the returned Gamma is Gamma_inf, Y_inf(1/x)[A] = -Gamma_inf/x."""
    r = reduce_at_zero(system_at_infinity(A), prec)
    return ReductionResult(r.Y, r.gamma, r.prec, "inf", r.Y_inv)


def shift_reduction(r: ReductionResult, m: int) -> ReductionResult:
    """x^m Y is again a reduction matrix, with Gamma + m."""
    inv = r.Y_inv.shift(-m) if r.Y_inv is not None else None
    return ReductionResult(r.Y.shift(m), la.add_scalar(r.gamma, m), r.prec, r.at, inv)


def growth_slope(Y: SeriesMat, p: int, upto: int | None = None) -> float | None:
    """max over k in (n/2, n] of -vp(Y_k)/k, n the last known index.

    Estimates lambda with radius p^-lambda for the coefficient growth. Returns
    None when no nonzero coefficient lies in the window.
    """
    n = Y.valid_until - 1 if upto is None else upto
    best = None
    for k in range(n // 2 + 1, n + 1):
        v = la.matrix_vp(Y.coeff(k), p)
        if v == INF:
            continue
        e = float(-v) / k
        best = e if best is None else max(best, e)
    return best


def growth_profile(Y: SeriesMat, p: int) -> list[tuple[int, float]]:
    """Running values of growth_slope at each index, for trend detection."""
    out = []
    for n in range(1, Y.valid_until):
        g = growth_slope(Y, p, n)
        if g is not None:
            out.append((n, g))
    return out


# Frobenius solutions


@dataclass(frozen=True)
class FrobeniusSeries:
    rho: Fraction
    coeffs: tuple  # y_0 = 1, y_1, ..., y_{prec-1}

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def to_json(self) -> dict:
        return {"rho": rat_to_str(self.rho), "coeffs": [rat_to_str(c) for c in self.coeffs]}


def _rows(t: ThetaForm) -> dict[int, Poly]:
    """P_j(s) with  t = sum_j x^(j + e0) P_j(theta)."""
    e0 = _lowest_row(t)
    rows: dict[int, list[Fraction]] = {}
    for i, a in enumerate(t.coeffs):
        for e, c in a.items():
            rows.setdefault(e - e0, [ZERO] * len(t.coeffs))[i] = c
    return {j: poly(r) for j, r in rows.items()}


def frobenius_solution(t: ThetaForm, rho: RatLike, prec: int) -> FrobeniusSeries:
    """y with t(x^rho y) = O(x^(rho + prec)), y_0 = 1."""
    rho = rat(rho)
    if prec < 1:
        raise DomainError("prec must be >= 1")
    P = _rows(t)
    P0 = P[0]
    if poly_eval(P0, rho) != 0:
        raise NotARoot(f"{rho} is not a root of the indicial polynomial")
    roots, _ = rational_roots(P0)
    if roots.count(rho) > 1:
        raise ResonantExponent(f"{rho} is a multiple root")
    for r in roots:
        d = r - rho
        if d > 0 and d.denominator == 1:
            raise ResonantExponent(f"{r} = {rho} + {d} is also a root")
    others = sorted((j, q) for j, q in P.items() if j > 0)
    y = [ONE]
    for n in range(1, prec):
        acc = ZERO
        for j, q in others:
            if j > n:
                break
            if y[n - j]:
                acc += poly_eval(q, rho + n - j) * y[n - j]
        y.append(-acc / poly_eval(P0, rho + n))
    return FrobeniusSeries(rho, tuple(y))


def apply_theta_to_series(t: ThetaForm, rho: RatLike, coeffs: Sequence[RatLike]) -> list[Fraction]:
    """Coefficients r_n of t(x^rho sum y_k x^k) = x^(rho + e0) sum r_n x^n, n < len(coeffs)."""
    rho = rat(rho)
    y = [rat(c) for c in coeffs]
    P = _rows(t)
    out = []
    for n in range(len(y)):
        acc = ZERO
        for j, q in P.items():
            if 0 <= n - j < len(y) and y[n - j]:
                acc += poly_eval(q, rho + n - j) * y[n - j]
        out.append(acc)
    return out


# Wronskians


@dataclass(frozen=True)
class TwistedSeries:
    """S(x) x^D with D = diag(exponents), one exponent per column."""

    S: SeriesMat
    exponents: tuple

    def to_json(self) -> dict:
        d = self.S.to_json()
        d["exponents"] = [rat_to_str(e) for e in self.exponents]
        return d


def twisted_derivative(S: SeriesMat, exponents: Sequence[Fraction]) -> SeriesMat:
    """Untwisted part of (S x^D)' = (S' + S D / x) x^D."""
    n, m = S.shape
    D = [[rat(exponents[j]) if i == j else ZERO for j in range(m)] for i in range(m)]
    return S.derivative() + (S * D).shift(-1)


def wronskian(solutions: Sequence[tuple[Sequence[RatLike], RatLike]], prec: int) -> TwistedSeries:
    """Rows are derivatives 0..m-1 of the solutions x^rho y(x), m = number of solutions."""
    m = len(solutions)
    if m == 0:
        raise DomainError("no solutions given")
    cols = []
    for coeffs, rho in solutions:
        y = [rat(c) for c in coeffs][:prec]
        if len(y) < prec:
            y += [ZERO] * (prec - len(y))
        cols.append((y, rat(rho)))
    k_min = -(m - 1)
    out = [la.zeros(m, m) for _ in range(prec)]
    for s, (y, rho) in enumerate(cols):
        for k in range(m):
            # d^k/dx^k (x^(rho+n)) = falling(rho+n, k) x^(rho+n-k)
            for n, c in enumerate(y):
                idx = n - k - k_min
                if not c or idx >= prec:
                    continue
                f = ONE
                for r in range(k):
                    f *= rho + n - r
                out[idx][k][s] += c * f
    exps = tuple(rho for _, rho in cols)
    return TwistedSeries(SeriesMat(k_min, out), exps)


def exact_series(entries: Sequence[Sequence[Laurent]], prec: int) -> SeriesMat:
    """A matrix of Laurent polynomials as a series whose window has length >= prec."""
    nz = [e for row in entries for e in row if e]
    lo = min((e.ord() for e in nz), default=0)
    hi = max((e.deg() for e in nz), default=0)
    n, m = len(entries), len(entries[0])
    coeffs = [la.zeros(n, m) for _ in range(max(hi - lo + 1, prec))]
    for r, row in enumerate(entries):
        for c, e in enumerate(row):
            for ex, v in e.items():
                coeffs[ex - lo][r][c] = v
    return SeriesMat(lo, coeffs)


def system_residual(A: PolyMat, W: TwistedSeries, sign: int = 1) -> SeriesMat:
    """den * W' - sign * num * W on the untwisted part.

    Zero means W x^D solves dX/dx = sign * A X.
    """
    n, m = W.S.shape
    dW = twisted_derivative(W.S, W.exponents)
    den = Laurent.const(1) * A.denominator
    scalar = [[den if i == j else Laurent() for j in range(n)] for i in range(n)]
    lhs = series_mul(exact_series(scalar, dW.prec), dW)
    entries = A.entries if sign > 0 else [[-e for e in row] for row in A.entries]
    rhs = series_mul(exact_series(entries, W.S.prec), W.S)
    return lhs - rhs


def adjoint_solution_matrix(psi: WeylOp, solutions: Sequence[tuple[Sequence[RatLike], RatLike]], prec: int) -> TwistedSeries:
    """Columns (u_1, ..., u_m) built from solutions z of the adjoint operator:
    u_m = a_m z,  u_{m-i} = (a_{m-i}/a_m) u_m - u'_{m-i+1}.

    The result solves dX/dx = -transpose(A) X, A the companion of ``psi``.
    """
    m = psi.order
    a = psi.coefficients()
    am = a[m]
    # Series of 1/a_m at 0, pole allowed.
    inv_am = PolyMat([[Laurent.const(1)]], am).to_series(-am.ord(), -am.ord() + prec)
    cols_u: list[list[SeriesMat]] = []
    exps = []
    for coeffs, rho in solutions:
        rho = rat(rho)
        z = SeriesMat.scalar([rat(c) for c in coeffs][:prec])
        u = [None] * (m + 1)
        u[m] = series_mul(_laurent_as_series(am, prec), z)
        for i in range(1, m):
            ratio = series_mul(_laurent_as_series(a[m - i], prec), inv_am)
            u[m - i] = series_mul(ratio, u[m]) - twisted_derivative(u[m - i + 1], [rho])
        cols_u.append(u[1:])
        exps.append(rho)
    lo = min(s.k_min for col in cols_u for s in col)
    hi = min(s.valid_until for col in cols_u for s in col)
    if hi <= lo:
        raise PrecisionError("prec too small for the adjoint solution matrix")
    coeffs = []
    for k in range(lo, hi):
        M = la.zeros(m)
        for c, col in enumerate(cols_u):
            for r, s in enumerate(col):
                M[r][c] = s.coeff(k)[0][0]
        coeffs.append(M)
    return TwistedSeries(SeriesMat(lo, coeffs), tuple(exps))


def _laurent_as_series(a: Laurent, prec: int) -> SeriesMat:
    return exact_series([[a]], prec)


# Laurent connection


@dataclass(frozen=True)
class Undetermined:
    """Coefficients outside the window are nonzero at these indices."""

    lo: int
    hi: int

    def to_json(self) -> dict:
        return {"undetermined": True, "offending": [self.lo, self.hi]}


def laurent_connection(Y: SeriesMat, Z: SeriesMat, window: int) -> PolyMat | Undetermined:
    """L = Y Z^-1, returned as a Laurent-polynomial matrix if it is supported in [-window, window]."""
    L = series_mul(Y, Z.inverse())
    if L.valid_until <= window:
        raise PrecisionError(
            f"L is known only below x^{L.valid_until}; cannot decide the window [-{window}, {window}]"
        )
    bad = [k for k in range(L.k_min, L.valid_until) if abs(k) > window and not la.is_zero(L.coeff(k))]
    if bad:
        return Undetermined(min(bad), max(bad))
    n, m = L.shape
    entries = [
        [Laurent({k: L.coeff(k)[r][c] for k in range(max(L.k_min, -window), window + 1)}) for c in range(m)]
        for r in range(n)
    ]
    return PolyMat(entries)
