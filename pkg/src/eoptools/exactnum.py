"""Exact rationals, p-adic valuations, Pochhammer symbols and growth profiles.

Rationals are :class:`fractions.Fraction`. A valuation is either a
``Fraction`` or ``math.inf`` (valuation of zero); ``math.inf`` is absorbing
under ``+`` and neutral under ``min``, which is exactly what valuations need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DomainError, NotPrimeError

Rat = Fraction
Val = Union[Fraction, float]  # float only ever means math.inf
INF = math.inf

RatLike = Union[Fraction, int, str]


def rat(value: RatLike) -> Fraction:
    """Coerce ``value`` (int, Fraction or "num/den" string) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_to_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def val_to_str(v: Val) -> str:
    if v == INF:
        return "inf"
    return rat_to_str(Fraction(v))


def val_from_str(text: str) -> Val:
    text = text.strip()
    if text in ("inf", "+inf"):
        return INF
    return Fraction(text)


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"{p!r} is not a prime")


def _vp_int(n: int, p: int) -> int:
    # Squaring ladder: O(log v) big divisions instead of v of them.
    n = abs(n)
    if n % p:
        return 0
    powers = [p]
    while n % (powers[-1] * powers[-1]) == 0:
        powers.append(powers[-1] * powers[-1])
    v = 0
    for k in range(len(powers) - 1, -1, -1):
        if n % powers[k] == 0:
            n //= powers[k]
            v += 1 << k
    return v


def vp(q: RatLike, p: int) -> Val:
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    _check_prime(p)
    q = rat(q)
    if q == 0:
        return INF
    return Fraction(_vp_int(q.numerator, p) - _vp_int(q.denominator, p))


def legendre_valuation(i: int, p: int) -> Fraction:
    """vp(i!) by Legendre's formula sum_k floor(i / p^k)."""
    _check_prime(p)
    if i < 0:
        raise DomainError("factorial of a negative integer")
    total, pk = 0, p
    while pk <= i:
        total += i // pk
        pk *= p
    return Fraction(total)


def pochhammer(alpha: RatLike, i: int) -> Fraction:
    """Rising factorial alpha (alpha+1) ... (alpha+i-1)."""
    if i < 0:
        raise DomainError("Pochhammer index must be >= 0")
    alpha = rat(alpha)
    # Work with a common denominator so the loop stays in integer arithmetic.
    num, den = alpha.numerator, alpha.denominator
    acc = 1
    for k in range(i):
        acc *= num + k * den
    return Fraction(acc, den**i)


@dataclass(frozen=True)
class LogRadius:
    """A radius ``p**(-lam)`` stored exactly through its exponent."""

    prime: int
    lam: Fraction

    def __post_init__(self):
        _check_prime(self.prime)
        object.__setattr__(self, "lam", rat(self.lam))

    @classmethod
    def pi_v(cls, p: int) -> "LogRadius":
        return cls(p, Fraction(1, p - 1))

    def as_float(self) -> float:
        return float(self.prime) ** (-float(self.lam))

    def to_json(self) -> dict:
        return {"prime": self.prime, "lambda": rat_to_str(self.lam)}


@dataclass(frozen=True)
class ZeroHit:
    """(alpha)_i vanishes from ``index`` on (alpha a non-positive integer)."""

    index: int

    def to_json(self) -> dict:
        return {"kind": "zero_hit", "index": self.index}


@dataclass(frozen=True)
class ExactSlope:
    """Limit of vp((alpha)_i)/i, with the finite-horizon value next to it."""

    slope: Fraction
    empirical: float
    horizon: int

    def to_json(self) -> dict:
        return {
            "kind": "exact_slope",
            "slope": rat_to_str(self.slope),
            "empirical": self.empirical,
            "horizon": self.horizon,
        }


def pochhammer_valuation(alpha: RatLike, i: int, p: int) -> Val:
    """vp((alpha)_i) accumulated factor by factor (no big product)."""
    _check_prime(p)
    alpha = rat(alpha)
    num, den = alpha.numerator, alpha.denominator
    vden = _vp_int(den, p)
    total = 0
    for k in range(i):
        n = num + k * den
        if n == 0:
            return INF
        total += _vp_int(n, p) - vden
    return Fraction(total)


def pochhammer_val_slope(alpha: RatLike, p: int, horizon: int) -> ZeroHit | ExactSlope:
    """Asymptotic slope of i -> vp((alpha)_i).

    vp(alpha) < 0 forces every factor alpha+k to have the same valuation, so
    the slope is vp(alpha). Otherwise (alpha a unit-denominator rational that
    is not a non-positive integer) the slope is 1/(p-1), the valuation of pi_v.
    """
    _check_prime(p)
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    alpha = rat(alpha)
    if alpha.denominator == 1 and alpha <= 0:
        return ZeroHit(int(-alpha) + 1)
    v = vp(alpha, p)
    exact = v if v < 0 else Fraction(1, p - 1)
    empirical = pochhammer_valuation(alpha, horizon, p) / horizon
    return ExactSlope(exact, float(empirical), horizon)


def euler_generic_radius(alpha: RatLike, p: int, r: LogRadius) -> LogRadius:
    """Generic radius of x d/dx - alpha at a generic point of radius r.

    In valuation form: lam_R = lam_r + max(0, 1/(p-1) - s), s being the
    Pochhammer slope of -alpha; alpha a non-negative integer gives R = r.
    """
    _check_prime(p)
    if r.prime != p:
        raise DomainError("radius prime does not match p")
    alpha = rat(alpha)
    if alpha.denominator == 1 and alpha >= 0:
        return r
    res = pochhammer_val_slope(-alpha, p, 1)
    assert isinstance(res, ExactSlope)
    return LogRadius(p, r.lam + max(Fraction(0), Fraction(1, p - 1) - res.slope))


def euler_generic_radius_empirical(alpha: RatLike, p: int, r: LogRadius, horizon: int) -> float:
    """Same formula with the slope replaced by vp((-alpha)_N)/N at N = horizon."""
    alpha = rat(alpha)
    if alpha.denominator == 1 and alpha >= 0:
        return float(r.lam)
    s = pochhammer_valuation(-alpha, horizon, p) / horizon
    return float(r.lam) + max(0.0, 1.0 / (p - 1) - float(s))


@dataclass(frozen=True)
class GevreyProfile:
    order_s: Fraction
    horizon: int
    size_slope: float
    denom_slope: float
    exponent_offset: Fraction  # fractional part of s, not applied to the b_n
    growing: bool  # |b_n|^(1/n) strictly increasing over the last decade

    def to_json(self) -> dict:
        return {
            "order_s": rat_to_str(self.order_s),
            "horizon": self.horizon,
            "size_slope": self.size_slope,
            "denom_slope": self.denom_slope,
            "exponent_offset": rat_to_str(self.exponent_offset),
            "growing": self.growing,
        }


def _log_abs(q: Fraction) -> float:
    return math.log(abs(q.numerator)) - math.log(q.denominator)


def gevrey_profile(coeffs: Sequence[RatLike], s: RatLike) -> GevreyProfile:
    """Archimedean size and denominator growth of a_n (n!)^(-s).

    Only the integer part of ``s`` is applied exactly; the fractional part is
    reported as ``exponent_offset``.
    """
    if not coeffs:
        raise DomainError("empty coefficient list")
    s = rat(s)
    s_int = math.floor(s)
    offset = s - s_int
    fact = 1
    den_lcm = 1
    sizes: list[float] = []
    size_slope = 0.0
    denom_slope = 1.0
    for n, a in enumerate(coeffs):
        if n > 0:
            fact *= n
        a = rat(a)
        b = a * Fraction(fact) ** (-s_int) if s_int else a
        den_lcm = math.lcm(den_lcm, b.denominator)
        if n == 0:
            continue
        denom_slope = max(denom_slope, math.exp(math.log(den_lcm) / n))
        if b != 0:
            g = math.exp(_log_abs(b) / n)
            sizes.append(g)
            size_slope = max(size_slope, g)
    tail = sizes[-max(2, len(sizes) // 10):]
    growing = len(tail) >= 2 and all(u < w for u, w in zip(tail, tail[1:]))
    return GevreyProfile(s, len(coeffs) - 1, size_slope, denom_slope, offset, growing)

