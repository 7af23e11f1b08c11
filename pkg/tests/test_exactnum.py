import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from eoptools.errors import DomainError, NotPrimeError
from eoptools.exactnum import (
    INF,
    ExactSlope,
    LogRadius,
    ZeroHit,
    euler_generic_radius,
    euler_generic_radius_empirical,
    gevrey_profile,
    legendre_valuation,
    pochhammer,
    pochhammer_val_slope,
    pochhammer_valuation,
    rat_to_str,
    val_to_str,
    vp,
)

nonzero_rats = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4).filter(lambda q: q != 0)


def factorint_vp(q: Fraction, p: int) -> int:
    return sympy.factorint(q.numerator).get(p, 0) - sympy.factorint(q.denominator).get(p, 0)


class TestVp:
    def test_examples(self):
        assert vp(24, 2) == 3
        assert vp(0, 5) == INF
        assert vp(math.factorial(10), 2) == 8
        assert vp(Fraction(3, 8), 2) == -3

    def test_against_factorization(self):
        rng = random.Random(1)
        for _ in range(200):
            q = Fraction(rng.randint(1, 10**9), rng.randint(1, 10**6))
            for p in (2, 3, 5, 7):
                assert vp(q, p) == factorint_vp(q, p)

    def test_rejects_non_prime(self):
        with pytest.raises(NotPrimeError):
            vp(3, 4)
        with pytest.raises(DomainError):
            vp(3, 1)

    def test_valuation_axioms_500_pairs(self):
        rng = random.Random(7)
        for _ in range(500):
            a = Fraction(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**4))
            b = Fraction(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**4))
            p = rng.choice([2, 3, 5, 7])
            assert vp(a * b, p) == vp(a, p) + vp(b, p)
            assert vp(a + b, p) >= min(vp(a, p), vp(b, p))

    @given(nonzero_rats, nonzero_rats, st.sampled_from([2, 3, 5, 7, 11]))
    def test_valuation_axioms_property(self, a, b, p):
        assert vp(a * b, p) == vp(a, p) + vp(b, p)
        assert vp(a + b, p) >= min(vp(a, p), vp(b, p))

    def test_serialization(self):
        assert rat_to_str(Fraction(-3, 4)) == "-3/4"
        assert rat_to_str(Fraction(5)) == "5"
        assert val_to_str(INF) == "inf"


class TestLegendre:
    def test_examples(self):
        assert legendre_valuation(10, 2) == 8
        assert legendre_valuation(0, 3) == 0
        for p in (2, 3, 5, 7):
            assert legendre_valuation(p, p) == 1

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_matches_pochhammer_of_one(self, p):
        # vp((1)_i) = vp(i!), accumulated incrementally as an independent route.
        acc = 0
        for i in range(1, 2001):
            acc += vp(i, p)
            assert legendre_valuation(i, p) == acc
        assert pochhammer_valuation(1, 2000, p) == legendre_valuation(2000, p)


class TestPochhammer:
    def test_examples(self):
        assert pochhammer(Fraction(3, 2), 2) == Fraction(15, 4)
        assert pochhammer(Fraction(7, 3), 0) == 1
        assert pochhammer(-2, 4) == 0

    @given(st.fractions(min_value=-20, max_value=20, max_denominator=50), st.integers(0, 30))
    def test_against_product(self, alpha, i):
        assert pochhammer(alpha, i) == math.prod((alpha + k for k in range(i)), start=Fraction(1))

    @given(st.fractions(min_value=-20, max_value=20, max_denominator=50), st.integers(0, 60), st.sampled_from([2, 3, 5]))
    def test_incremental_valuation(self, alpha, i, p):
        assert pochhammer_valuation(alpha, i, p) == vp(pochhammer(alpha, i), p)


class TestPochhammerSlope:
    def test_examples(self):
        r = pochhammer_val_slope(1, 2, 1000)
        assert isinstance(r, ExactSlope) and r.slope == 1
        r = pochhammer_val_slope(Fraction(1, 2), 2, 1000)
        assert isinstance(r, ExactSlope) and r.slope == -1 and r.empirical == -1.0
        assert pochhammer_val_slope(-3, 5, 10) == ZeroHit(4)

    def test_zero_hit_index(self):
        for n in range(0, 6):
            hit = pochhammer_val_slope(-n, 3, 50)
            assert pochhammer(-n, hit.index) == 0
            assert pochhammer(-n, hit.index - 1) != 0

    def test_empirical_close_to_exact(self):
        rng = random.Random(3)
        done = 0
        while done < 20:
            p = rng.choice([2, 3, 5, 7])
            alpha = Fraction(rng.randint(1, 60), rng.randint(1, 30))
            if vp(alpha, p) < 0:
                continue
            r = pochhammer_val_slope(alpha, p, 2000)
            assert r.slope == Fraction(1, p - 1)
            assert abs(r.empirical - float(r.slope)) <= 0.01
            done += 1

    def test_bad_horizon(self):
        with pytest.raises(DomainError):
            pochhammer_val_slope(1, 2, 0)


class TestEulerRadius:
    def test_examples(self):
        r = LogRadius(5, Fraction(1, 3))
        assert euler_generic_radius(3, 5, r) == r
        assert euler_generic_radius(Fraction(1, 2), 3, LogRadius(3, 0)).lam == 0
        assert euler_generic_radius(Fraction(1, 2), 2, LogRadius(2, 0)).lam == 2

    def test_prime_mismatch(self):
        with pytest.raises(DomainError):
            euler_generic_radius(Fraction(1, 2), 3, LogRadius(2, 0))

    def test_monotone_in_lambda_r(self):
        rng = random.Random(5)
        for _ in range(50):
            p = rng.choice([2, 3, 5, 7])
            alpha = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
            l1, l2 = sorted([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(2)])
            R1 = euler_generic_radius(alpha, p, LogRadius(p, l1))
            R2 = euler_generic_radius(alpha, p, LogRadius(p, l2))
            assert R1.lam <= R2.lam
            if vp(alpha, p) >= 0 or (alpha.denominator == 1 and alpha >= 0):
                assert R1.lam == l1

    def test_pi_v(self):
        assert LogRadius.pi_v(3).lam == Fraction(1, 2)
        assert abs(LogRadius.pi_v(3).as_float() - 3 ** -0.5) < 1e-12


class TestGevrey:
    def test_inverse_factorials(self):
        coeffs = [Fraction(1, math.factorial(n)) for n in range(21)]
        g = gevrey_profile(coeffs, -1)
        assert g.size_slope == pytest.approx(1.0)
        assert g.denom_slope == pytest.approx(1.0)

    def test_geometric(self):
        g = gevrey_profile([2**n for n in range(30)], 0)
        assert g.size_slope == pytest.approx(2.0)
        assert g.denom_slope == 1.0

    def test_factorial_grows(self):
        g1 = gevrey_profile([math.factorial(n) for n in range(20)], 0)
        g2 = gevrey_profile([math.factorial(n) for n in range(40)], 0)
        assert g2.size_slope > g1.size_slope
        assert g2.growing

    def test_fractional_order_offset(self):
        # floor(-3/2) = -2 is applied exactly, so b_n = a_n (n!)^2 = 1.
        coeffs = [Fraction(1, math.factorial(n) ** 2) for n in range(21)]
        g = gevrey_profile(coeffs, Fraction(-3, 2))
        assert g.exponent_offset == Fraction(1, 2)
        assert g.size_slope == pytest.approx(1.0)

    def test_denominators(self):
        g = gevrey_profile([Fraction(1, 2**n) for n in range(10)], 0)
        assert g.denom_slope == pytest.approx(2.0)

    def test_empty(self):
        with pytest.raises(DomainError):
            gevrey_profile([], 0)


def test_euler_radius_empirical_agrees():
    assert euler_generic_radius_empirical(Fraction(1, 2), 2, LogRadius(2, 0), 500) == 2.0
