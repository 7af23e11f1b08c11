"""Small dense exact linear algebra over Q.

Matrices are lists of row lists of Fractions. Sizes here are tiny (n <= 4 or
so), so plain Gauss-Jordan is the right tool; nothing is cached.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DomainError, SingularMatrixError
from .exactnum import INF, Val, rat, rat_to_str, vp

Matrix = list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    mat = [[rat(c) for c in row] for row in rows]
    if mat and any(len(r) != len(mat[0]) for r in mat):
        raise DomainError("ragged matrix")
    return mat


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def is_zero(a: Matrix) -> bool:
    return all(c == 0 for row in a for c in row)


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def add_scalar(a: Matrix, c) -> Matrix:
    """a + c * Identity."""
    return [[x + c if i == j else x for j, x in enumerate(row)] for i, row in enumerate(a)]


def mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    cols = list(zip(*b))
    out = []
    for row in a:
        out.append([sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in cols])
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    if any(len(r) != n for r in a):
        raise DomainError("inverse of a non-square matrix")
    work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv_p = 1 / work[col][col]
        work[col] = [x * inv_p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def solve(a: Matrix, b: list[Fraction]) -> list[Fraction]:
    """Solve a x = b for square nonsingular a."""
    n = len(a)
    work = [list(row) + [bv] for row, bv in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("linear system is singular")
        work[col], work[piv] = work[piv], work[col]
        inv_p = 1 / work[col][col]
        work[col] = [x * inv_p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[n] for row in work]


def det(a: Matrix) -> Fraction:
    n = len(a)
    work = [list(r) for r in a]
    d = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            return ZERO
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            d = -d
        d *= work[col][col]
        for r in range(col + 1, n):
            if work[r][col] != 0:
                f = work[r][col] / work[col][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return d


def charpoly(a: Matrix) -> list[Fraction]:
    """Coefficients (constant term first) of det(s I - a), via Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [ZERO] * n + [ONE]
    m = zeros(n)
    for k in range(1, n + 1):
        m = add_scalar(mul(a, m), coeffs[n - k + 1])
        am = mul(a, m)
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), ZERO) / k
    return coeffs


def sylvester_solve(p: Matrix, q: Matrix, b: Matrix) -> Matrix:
    """Solve p X - X q = b (unique iff spec(p) and spec(q) are disjoint)."""
    n, m = len(p), len(q)
    # Unknown X[i][j] sits at index i*m + j.
    size = n * m
    system = [[ZERO] * size for _ in range(size)]
    rhs = [ZERO] * size
    for i in range(n):
        for j in range(m):
            row = system[i * m + j]
            for k in range(n):
                if p[i][k]:
                    row[k * m + j] += p[i][k]
            for k in range(m):
                if q[k][j]:
                    row[i * m + k] -= q[k][j]
            rhs[i * m + j] = b[i][j]
    sol = solve(system, rhs)
    return [[sol[i * m + j] for j in range(m)] for i in range(n)]


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, c in enumerate(row):
                out[off + i][off + j] = c
        off += len(b)
    return out


def matrix_vp(a: Matrix, p: int) -> Val:
    """Minimum entrywise valuation, i.e. -log_p of the max v-adic absolute value."""
    return min((vp(c, p) for row in a for c in row if c), default=INF)


def matrix_to_json(a: Matrix) -> list[list[str]]:
    return [[rat_to_str(c) for c in row] for row in a]


def matrix_from_json(rows) -> Matrix:
    return as_matrix(rows)
