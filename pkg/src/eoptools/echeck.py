"""Necessary-condition checker for E-operators.

The slope condition and rationality of the exponents at 0 are decided
exactly. The analytic condition at finite places is only sampled: for each
requested prime we look at the coefficient growth of the reduction matrix at
0 and compare it to 1/(p-1). The report can say NOT_E or CONSISTENT_WITH_E,
never that the operator is an E-operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, ZeroOperatorError
from .exactnum import _check_prime, rat_to_str
from .localdata import (
    ExponentSet,
    exponents_at_zero,
    growth_slope,
    reduce_at_zero,
    theta_companion,
)
from .nrpolygon import (
    e_slope_condition,
    is_regular_at_zero,
    nr_polygon,
    offending_slopes,
    singular_only_at_zero_and_infinity,
)
from .weyl import WeylOp, to_theta

PASS_TOL = 0.05
FAIL_MARGIN = 0.2
TREND_SPAN = 10

NOT_E = "NOT_E"
CONSISTENT = "CONSISTENT_WITH_E"


@dataclass(frozen=True)
class PlaceEvidence:
    p: int
    reduction_growth_slope: float | None
    pi_v_benchmark: Fraction
    verdict: str
    note: str = ""

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "reduction_growth_slope": self.reduction_growth_slope,
            "pi_v_benchmark": rat_to_str(self.pi_v_benchmark),
            "verdict": self.verdict,
            "note": self.note,
        }


@dataclass(frozen=True)
class ECheckReport:
    slope_condition: bool
    offending_slopes: tuple
    vertical_side: bool
    regular_at_zero: bool
    exponents: ExponentSet | None
    place_evidence: tuple
    overall: str
    singular_only_at_0_and_inf: bool
    notes: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "slope_condition": self.slope_condition,
            "offending_slopes": [rat_to_str(s) for s in self.offending_slopes],
            "vertical_side": self.vertical_side,
            "regular_at_zero": self.regular_at_zero,
            "exponents": self.exponents.to_json() if self.exponents else None,
            "place_evidence": [e.to_json() for e in self.place_evidence],
            "overall": self.overall,
            "singular_only_at_0_and_inf": self.singular_only_at_0_and_inf,
            "notes": list(self.notes),
        }


def _place_verdict(Y, Yi, p: int, horizon: int) -> PlaceEvidence:
    bench = Fraction(1, p - 1)
    n = min(horizon, Y.valid_until - 1, Yi.valid_until - 1)

    def slope_at(k):
        vals = [g for g in (growth_slope(Y, p, k), growth_slope(Yi, p, k)) if g is not None]
        return max(vals) if vals else None

    g = slope_at(n)
    if g is None:
        return PlaceEvidence(p, None, bench, "PASS", "reduction matrix vanishes beyond order 0 in the window")
    if g <= float(bench) + PASS_TOL:
        return PlaceEvidence(p, g, bench, "PASS")
    if g > float(bench) + FAIL_MARGIN:
        earlier = slope_at(max(n - TREND_SPAN, 1))
        if earlier is not None and g >= earlier - 1e-12:
            return PlaceEvidence(p, g, bench, "FAIL", "growth exceeds the benchmark and is not decreasing")
    return PlaceEvidence(p, g, bench, "INCONCLUSIVE", "growth slope between the pass and fail thresholds")


def check_e(
    phi: WeylOp, primes=(2, 3, 5), prec: int = 200, horizon: int = 500
) -> ECheckReport:
    if phi.is_zero():
        raise ZeroOperatorError("check of the zero operator")
    for p in primes:
        _check_prime(p)
    P = nr_polygon(phi)
    slope_ok = e_slope_condition(phi)
    reg0 = is_regular_at_zero(P)
    notes = [
        "finite places are sampled at the listed primes only; a CONSISTENT_WITH_E verdict is not a proof",
    ]
    exps = None
    evidence = []
    if reg0 and phi.order >= 1:
        t = to_theta(phi)
        exps = exponents_at_zero(t)
        n_terms = max(prec, horizon)
        try:
            red = reduce_at_zero(theta_companion(t), n_terms, with_inverse=True)
            Y, Yi = red.Y, red.Y_inv
        except DomainError as exc:
            for p in primes:
                evidence.append(
                    PlaceEvidence(p, None, Fraction(1, p - 1), "INCONCLUSIVE", f"{type(exc).__name__}: {exc}")
                )
        else:
            for p in primes:
                evidence.append(_place_verdict(Y, Yi, p, horizon))
    elif not reg0:
        notes.append("irregular at 0: no exponents and no reduction matrix")
    else:
        notes.append("order 0 operator: no differential system")
    overall = NOT_E if (not slope_ok or (exps is not None and exps.non_rational)) else CONSISTENT
    return ECheckReport(
        slope_condition=slope_ok,
        offending_slopes=tuple(offending_slopes(phi)),
        vertical_side=P.vertical_side is not None,
        regular_at_zero=reg0,
        exponents=exps,
        place_evidence=tuple(evidence),
        overall=overall,
        singular_only_at_0_and_inf=singular_only_at_zero_and_infinity(phi),
        notes=tuple(notes),
    )
