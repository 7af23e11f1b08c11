import random
from fractions import Fraction

import pytest
import sympy

from corpus import small_rat
from eoptools import linalg as la
from eoptools.errors import SingularMatrixError


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in m])


def from_sympy(m):
    return [[Fraction(int(c.p), int(c.q)) for c in row] for row in m.tolist()]


def random_matrix(rng, n, m=None):
    return [[small_rat(rng, nonzero=False) for _ in range(m or n)] for _ in range(n)]


def test_against_sympy():
    rng = random.Random(1)
    s = sympy.Symbol("s")
    for _ in range(30):
        n = rng.randint(1, 4)
        a = random_matrix(rng, n)
        A = to_sympy(a)
        assert la.det(a) == Fraction(str(A.det()))
        cp = A.charpoly(s).all_coeffs()[::-1]
        assert la.charpoly(a) == [Fraction(str(c)) for c in cp]
        if A.det() != 0:
            assert la.inverse(a) == from_sympy(A.inv())


def test_singular():
    with pytest.raises(SingularMatrixError):
        la.inverse([[1, 2], [2, 4]])
    assert la.det([[1, 2], [2, 4]]) == 0


def test_sylvester():
    rng = random.Random(2)
    for _ in range(20):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        p = la.add_scalar(random_matrix(rng, n), Fraction(1, 2))
        q = la.add_scalar(random_matrix(rng, m), Fraction(1, 3))
        b = random_matrix(rng, n, m)
        try:
            x = la.sylvester_solve(p, q, b)
        except SingularMatrixError:
            continue
        assert la.sub(la.mul(p, x), la.mul(x, q)) == la.as_matrix(b)


def test_matrix_vp():
    assert la.matrix_vp([[Fraction(1, 4), 8], [0, 6]], 2) == -2
    assert la.matrix_vp([[0]], 3) == float("inf")
