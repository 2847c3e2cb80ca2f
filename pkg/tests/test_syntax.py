import pytest
from hypothesis import given, settings

from conserved_ops.conservation import conserved_family, is_conserved
from conserved_ops.diffop import D, DiffOp
from conserved_ops.exactnum import GaussRat, I, symbol
from conserved_ops.fourier import E, FourierPoly
from conserved_ops.syntax import (
    Exp,
    Name,
    OperatorExpr,
    ParseError,
    parse_coefficient,
    parse_expr,
    parse_operator,
    print_operator,
)

from conftest import diffops

A, B = symbol("A"), symbol("B")


def test_parse_examples():
    assert parse_operator("A - i*B*D1 + B*D2") == conserved_family(A, B)
    assert parse_operator("D3") == D(3)
    p = parse_operator("2 - i*E(1)*D1 + E(1)*D2")
    assert p == DiffOp({0: 2, 1: E(1, -I), 2: E(1)})
    assert is_conserved(p)


def test_parse_tree():
    tree = parse_expr("A*E(-2)*D4")
    assert isinstance(tree, OperatorExpr)
    (sign, term), = tree.terms
    assert sign == 1 and term.order == 4
    assert term.coeff.factors == (Name("A"), Exp(-2))


@pytest.mark.parametrize(
    "src, expected",
    [
        ("3/4", FourierPoly.coerce(GaussRat("3/4"))),
        ("(1 + i)*E(1)", E(1, GaussRat(1, 1))),
        ("-(A - 2)", FourierPoly.coerce(2 - A)),
        ("  A *\n  A ", FourierPoly.coerce(A * A)),
        ("hbar", FourierPoly.coerce(symbol("hbar"))),
        ("E(+3)", E(3)),
    ],
)
def test_coefficients(src, expected):
    assert parse_coefficient(src) == expected


def test_like_terms_combine():
    assert parse_operator("D1 + D1 - 2*D1") == DiffOp()
    assert parse_operator("A*D2 + B*D2") == DiffOp({2: A + B})


def test_print_examples():
    assert print_operator(DiffOp({1: -I})) == "-i*D1"
    assert print_operator(DiffOp()) == "0"
    assert print_operator(DiffOp({0: A, 2: E(-1)})) == "A + E(-1)*D2"
    assert print_operator(DiffOp({2: E(1) + 1})) == "(1 + E(1))*D2"
    assert print_operator(DiffOp({0: GaussRat("-1/2", 3)})) == "-1/2 + 3*i"


@pytest.mark.parametrize(
    "src, line, col, fragment",
    [
        ("A +", 1, 4, "expected a coefficient"),
        ("A * (B", 1, 7, "expected ')'"),
        ("D1*A", 1, 3, "last factor"),
        ("A*(D1)", 1, 4, "coefficient position"),
        ("D-1", 1, 1, "negative"),
        ("D1.5", 1, 1, "non-integer"),
        ("1.5*D1", 1, 1, "non-integer"),
        ("A\n  + $", 2, 5, "unexpected character"),
        ("1/0", 1, 1, "division by zero"),
        ("", 1, 1, "empty"),
        ("A B", 1, 3, "unexpected"),
        ("E(x)", 1, 3, "frequency"),
    ],
)
def test_errors_report_position(src, line, col, fragment):
    with pytest.raises(ParseError) as err:
        parse_operator(src)
    assert (err.value.line, err.value.column) == (line, col)
    assert fragment in err.value.message


@settings(max_examples=500)
@given(diffops)
def test_round_trip(p):
    assert parse_operator(print_operator(p)) == p


@given(diffops)
def test_printing_is_deterministic(p):
    assert print_operator(p) == print_operator(parse_operator(print_operator(p)))
