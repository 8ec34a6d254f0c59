import pytest
from hypothesis import given

from dcurve.curves import LinearCurve
from dcurve.diffpoly import DiffPoly
from dcurve.ore import D, OreOp
from dcurve.parsing import (
    Context,
    ParseError,
    format_fraction,
    format_param,
    parse_diffpoly,
    parse_expression,
    parse_fraction,
    parse_operator,
    parse_param,
    parse_scalar,
    tokenize,
)
from dcurve.scalar import ONE, T
from strategies import diffpolys, operators, scalars


def test_scalar_syntax():
    assert parse_scalar("(t^2+1)/(t+2)") == (T * T + 1) / (T + 2)
    assert parse_scalar("-2^2") == -4
    assert parse_scalar("2*-t") == -2 * T
    assert parse_scalar(" 1 / 3 ") == ONE / 3


def test_precedence():
    assert parse_diffpoly("-x^2") == -(DiffPoly.var("x") ** 2)
    assert parse_diffpoly("x'^2") == DiffPoly.var("x", 1) ** 2
    assert parse_diffpoly("x^(3)^2") == DiffPoly.var("x", 3) ** 2
    assert parse_diffpoly("1 - x - y") == parse_diffpoly("1 - (x + y)")
    assert parse_diffpoly("x*y/2") == parse_diffpoly("(1/2)*x*y")


def test_curve_and_fraction_inputs():
    F = parse_expression("y' - x' - x", "curve")
    assert F == LinearCurve(OreOp([-1, -1]), D, 0)
    assert parse_fraction("(u''+1)/u") == (parse_diffpoly("u'' + 1"), parse_diffpoly("u"))
    (n1, d1), (n2, d2) = parse_param("(-u'/u^2, (u-u')/u^2)")
    assert d1 == d2 == parse_diffpoly("u^2")


def test_syntax_errors_are_positioned():
    with pytest.raises(ParseError) as exc:
        parse_diffpoly("x^(-1)")
    assert exc.value.pos == 3 and exc.value.token == "-"
    for bad in ("x +", "(x", "x y", "3 $", "x'^", "", "z"):
        with pytest.raises(ParseError):
            parse_diffpoly(bad)
    with pytest.raises(ParseError):
        parse_diffpoly("x/y")
    with pytest.raises(ParseError):
        parse_operator("D/0")
    with pytest.raises(ParseError):
        parse_param("(x, y, u)")
    with pytest.raises(ParseError):
        parse_expression("x*y", "curve")


def test_field_and_parameter_name():
    q = Context(field="q")
    with pytest.raises(ParseError):
        parse_diffpoly("t*x", q)
    assert parse_diffpoly("2*x", q) == 2 * DiffPoly.var("x")
    v = Context(param="v")
    assert parse_diffpoly("v'' + x", v) == parse_diffpoly("u'' + x")
    with pytest.raises(ParseError):
        parse_diffpoly("u", v)


def test_operator_division_is_right_scalar_multiplication():
    assert parse_operator("D/t") == D * OreOp.scalar(ONE / T)
    assert parse_operator("(1/t)*D") == OreOp([0, ONE / T])


def test_tokens():
    kinds = [tok.kind for tok in tokenize("x'' + 3*D^(2)")]
    assert kinds[0] == "name" and kinds[-1] == "end"


@given(scalars())
def test_scalar_roundtrip(c):
    assert parse_scalar(str(c)) == c


@given(operators())
def test_operator_roundtrip(L):
    assert parse_operator(str(L)) == L


@given(diffpolys())
def test_diffpoly_roundtrip(f):
    assert parse_diffpoly(str(f)) == f


@given(diffpolys(), diffpolys())
def test_fraction_and_param_roundtrip(n, d):
    if not d:
        d = DiffPoly.const(1)
    text = format_fraction(n, d)
    n2, d2 = parse_fraction(text)
    assert n2 * d == n * d2
    pair = ((n, d), (d, DiffPoly.const(1)))
    (a, b), (c, e) = parse_param(format_param(pair))
    assert a * d == n * b and c == d * e


@given(diffpolys())
def test_roundtrip_under_renamed_parameter(f):
    ctx = Context(param="w")
    from dcurve.parsing import format_diffpoly

    assert parse_diffpoly(format_diffpoly(f, "w"), ctx) == f
