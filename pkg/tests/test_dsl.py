import pytest

from widgets.cli import format_expr, parse_expr
from widgets.errors import DimensionMismatchError, DslSyntaxError
from widgets.manifold import (
    expr_of,
    m_atom,
    projective_space,
    repeated,
    sphere_expr,
    sphere_product,
    symbolic_suspension,
    twisted_product,
    wu_manifold,
    x_atom,
)
from widgets.selftest.suites import random_one_connected_sum


def test_parse_simple_sum():
    m = parse_expr("SxS(2,3) # M(3)")
    assert m == expr_of(sphere_product(2, 3), m_atom(3))
    assert m.dim == 5


def test_parse_evaluates_suspensions():
    m = parse_expr("Sig1(SxS(2,3)) # SxS(3,3)")
    assert m.dim == 6
    assert format_expr(m) == "SxS(2,4) # 2*SxS(3,3)"
    assert parse_expr("Sig0(Surf(2))") == repeated(sphere_product(1, 2), 4)


def test_parse_dimension_mismatch():
    with pytest.raises(DimensionMismatchError, match="dimension mismatch 3 vs 5"):
        parse_expr("S(3) # SxS(2,3)")


def test_multiplicity_and_grouping():
    assert parse_expr("3*SxS(2,3)") == repeated(sphere_product(2, 3), 3)
    assert parse_expr("2*(SxS(2,3) # M(3))") == expr_of(*[sphere_product(2, 3), m_atom(3)] * 2)
    assert parse_expr("0*M(3)") == sphere_expr(5)
    assert parse_expr("  SxS( 2 , 3 )#W ") == expr_of(sphere_product(2, 3), wu_manifold())


@pytest.mark.parametrize(
    "text, offset, expected",
    [
        ("SxS(2,3", 7, "')'"),
        ("Foo(3)", 0, "S"),
        ("", 0, "integer"),
        ("S(3) S(3)", 5, "end of input"),
        ("M(x)", 2, "integer"),
    ],
)
def test_syntax_errors_report_offset_and_expected(text, offset, expected):
    with pytest.raises(DslSyntaxError) as info:
        parse_expr(text)
    assert info.value.offset == offset
    assert expected in info.value.expected
    assert f"at offset {offset}" in str(info.value)


def test_unexpected_character():
    with pytest.raises(DslSyntaxError, match="unexpected character '\\$' at offset 9"):
        parse_expr("SxS(2,3) $")


@pytest.mark.parametrize(
    "m",
    [
        expr_of(projective_space("C", 3), twisted_product(4)),
        expr_of(x_atom(2), m_atom(6), wu_manifold()),
        expr_of(symbolic_suspension(1, expr_of(projective_space("C", 2)))),
        expr_of(symbolic_suspension(0, expr_of(symbolic_suspension(1, expr_of(projective_space("C", 2)))))),
        sphere_expr(9),
    ],
)
def test_round_trip(m):
    assert parse_expr(format_expr(m)) == m


def test_round_trip_random(rng):
    for _ in range(100):
        m = random_one_connected_sum(rng, rng.randint(4, 8))
        assert parse_expr(format_expr(m)) == m
