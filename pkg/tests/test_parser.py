from fractions import Fraction

import pytest

from corpus import op_corpus
from eoptools import ParseError, parse
from eoptools.parser import print_op, tokenize
from eoptools.weyl import WeylOp

X, D, T = WeylOp.x(), WeylOp.d(), WeylOp.theta()


def test_atoms_and_products():
    assert parse("x") == X
    assert parse("d*x") == X * D + 1
    assert parse("t") == T
    assert parse("x*d - 1/2 - 2*x^2") == T - Fraction(1, 2) - 2 * X**2
    assert parse("(t - 1)^2") == (T - 1) ** 2
    assert parse("-d + 3") == -D + 3
    assert parse("d^0") == WeylOp.const(1)


def test_order_matters():
    assert parse("d*x") != parse("x*d")


def test_whitespace_and_newlines():
    assert parse("  x *\n d  ") == T


def test_round_trip_500():
    for phi in op_corpus(99, 500):
        assert parse(print_op(phi)) == phi


def test_canonical_text_is_fixed_point():
    for phi in op_corpus(98, 100):
        s = print_op(phi)
        assert print_op(parse(s)) == s


def test_zero():
    assert parse("x - x").is_zero()
    assert parse(print_op(WeylOp())) == WeylOp()


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("x + ", 1, 5),
        ("x $ d", 1, 3),
        ("x +\n  * d", 2, 3),
        ("(x + d", 1, 7),
        ("x^d", 1, 3),
        ("1/0", 1, 3),
        ("", 1, 1),
        ("x d", 1, 3),
        ("1/x", 1, 3),
    ],
)
def test_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)


def test_tokenize_positions():
    toks = tokenize("12*x\n+d")
    assert [(t.text, t.line, t.column) for t in toks] == [
        ("12", 1, 1), ("*", 1, 3), ("x", 1, 4), ("+", 2, 1), ("d", 2, 2), ("", 2, 3),
    ]
