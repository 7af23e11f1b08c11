"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from eoptools import linalg as la
from eoptools.laplace import TwistMatrix, TwistedBlock, block, check_twist
from eoptools.linalg import inverse, mul
from eoptools.localdata import PolyMat, reduce_at_zero, theta_companion
from eoptools.polys import Laurent
from eoptools.weyl import ThetaForm, WeylOp

T = WeylOp.theta()

TAUS = [Fraction(1), Fraction(2), Fraction(-3), Fraction(1, 2)]


def small_rat(rng: random.Random, nonzero: bool = True, bound: int = 9) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or not nonzero:
            return q


def random_op(rng: random.Random, max_order: int = 4, max_degree: int = 4, max_terms: int = 8) -> WeylOp:
    n = rng.randint(1, max_terms)
    terms = {}
    for _ in range(n):
        terms[(rng.randint(0, max_order), rng.randint(0, max_degree))] = small_rat(rng)
    return WeylOp(terms)


def op_corpus(seed: int, size: int, **kw) -> list[WeylOp]:
    rng = random.Random(seed)
    return [random_op(rng, **kw) for _ in range(size)]


def random_theta(rng: random.Random, max_order: int = 3, max_degree: int = 3, monic: bool = False) -> ThetaForm:
    m = rng.randint(1, max_order)
    coeffs = []
    for i in range(m + 1):
        a = {e: small_rat(rng) for e in range(max_degree + 1) if rng.random() < 0.5}
        coeffs.append(Laurent(a))
    if monic:
        coeffs[m] = Laurent.const(1)
    elif coeffs[m].is_zero():
        coeffs[m] = Laurent.const(small_rat(rng))
    return ThetaForm(coeffs)


def theta_with_roots(rng: random.Random, roots, max_degree: int = 2, lead=1) -> ThetaForm:
    """Theta form whose row x^0 is lead * prod (s - r) and with random higher rows;
    the leading coefficient stays the constant ``lead`` (regular at 0)."""
    s = sympy.Symbol("s")
    P = sympy.Poly(sympy.prod([s - sympy.Rational(r.numerator, r.denominator) for r in roots]) * lead, s)
    m = len(roots)
    row0 = [Fraction(int(c.p), int(c.q)) for c in reversed(P.all_coeffs())]
    coeffs = []
    for i in range(m + 1):
        a = {0: row0[i]}
        if i < m:
            for e in range(1, max_degree + 1):
                if rng.random() < 0.6:
                    a[e] = small_rat(rng)
        coeffs.append(Laurent(a))
    return ThetaForm(coeffs)


def non_resonant_roots(rng: random.Random, m: int) -> list[Fraction]:
    """m rationals, pairwise not differing by a nonzero integer (equal not allowed either)."""
    roots: list[Fraction] = []
    while len(roots) < m:
        r = Fraction(rng.randint(-12, 12), rng.choice([1, 2, 3, 4, 5, 7]))
        if all((r - q).denominator != 1 for q in roots):
            roots.append(r)
    return roots


def random_twist(rng: random.Random, n: int, jordan: bool | None = None) -> TwistMatrix:
    """P J P^-1 with J a Jordan-type upper triangular matrix of non-integer eigenvalues."""
    while True:
        eig = []
        for _ in range(n):
            while True:
                q = Fraction(rng.randint(-9, 9), rng.choice([2, 3, 4, 5, 7]))
                if q.denominator != 1:
                    break
            eig.append(q)
        use_jordan = rng.random() < 0.5 if jordan is None else jordan
        if use_jordan:
            eig = [eig[0]] * n
        J = [[eig[i] if i == j else (Fraction(1) if (use_jordan and j == i + 1) else Fraction(0)) for j in range(n)] for i in range(n)]
        P = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        try:
            Pi = inverse(P)
        except ValueError:
            continue
        return check_twist(mul(mul(P, J), Pi))


def random_block(rng: random.Random, twist: TwistMatrix, rows: int, max_len: int = 8) -> TwistedBlock:
    a = rng.randint(-6, 4)
    length = rng.randint(1, max_len)
    coeffs = {}
    for i in range(a, a + length):
        coeffs[i] = [[small_rat(rng, nonzero=False) for _ in range(twist.n)] for _ in range(rows)]
    return TwistedBlock(coeffs, twist, (rows, twist.n))


def apply_to_poly(op: WeylOp, f):
    """Independent action of an operator on a sympy expression in x."""
    x = sympy.Symbol("x")
    total = 0
    for i, j, c in op.items():
        total += sympy.Rational(c.numerator, c.denominator) * x**j * sympy.diff(f, x, i)
    return sympy.expand(total)


def transport_cases():
    rng = random.Random(10)
    cases = []
    # Euler
    for _ in range(10):
        al = Fraction(rng.randint(-20, 20), rng.choice([2, 3, 5, 7]))
        if al.denominator == 1:
            continue
        cases.append((T - al, block({0: [[1]]}, [[al]])))
    # First order: phi = p theta - (alpha p + x p'), killing p(x) x^alpha.
    for _ in range(10):
        al = Fraction(rng.randint(-20, 20), rng.choice([2, 3, 5]))
        if al.denominator == 1:
            continue
        coeffs = {k: small_rat(rng) for k in range(rng.randint(1, 4))}
        p = sum((WeylOp.monomial(0, k, c) for k, c in coeffs.items()), WeylOp())
        xp1 = sum((WeylOp.monomial(0, k, k * c) for k, c in coeffs.items()), WeylOp())
        phi = p * T - (al * p + xp1)
        cases.append((phi, block({k: [[c]] for k, c in coeffs.items()}, [[al]])))
    # Order two with a diagonal twist: (x^a, x^b) in one row.
    a, b = Fraction(1, 3), Fraction(-5, 2)
    cases.append(((T - a) * (T - b), block({0: [[1, 1]]}, [[a, 0], [0, b]])))
    # Jordan twist: (x^a, x^a log x).
    cases.append(((T - a) * (T - a), block({0: [[1, 0]]}, [[a, 1], [0, a]])))
    return cases


def planted_connection(rng, t, k, prec):
    """Reduce A and, independently, (x^-k C^-1)[A]; return (Y, Z, L0 = x^k C)."""
    n = t.order
    A = theta_companion(t)
    while True:
        C = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if la.det(C) != 0:
            break
    Ci = la.inverse(C)
    # A2 = C^-1 A C - k/x = (x C^-1 N C - k den) / (x den)
    N = [[None] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            acc = Laurent()
            for i in range(n):
                for j in range(n):
                    if Ci[r][i] and C[j][c]:
                        acc = acc + A.entries[i][j] * (Ci[r][i] * C[j][c])
            acc = acc.shift(1)
            if r == c:
                acc = acc - A.denominator * k
            N[r][c] = acc
    A2 = PolyMat(N, A.denominator.shift(1))
    Y = reduce_at_zero(A, prec).Y
    Y2 = reduce_at_zero(A2, prec).Y
    Z = (Y2 * Ci).shift(-k)
    L0 = PolyMat([[Laurent.monomial(k, C[r][c]) for c in range(n)] for r in range(n)])
    return Y, Z, L0
