import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from dcurve.ore import (
    D,
    ONE_OP,
    ZERO_OP,
    OreOp,
    ele,
    ele_trace,
    gcld,
    gcrd,
    lcrm,
    lquo_lrem,
    lrem,
    ore_apply,
    ore_mul,
    rquo_rrem,
    rrem,
    wronskian,
)
from dcurve.parsing import parse_operator as op
from dcurve.scalar import NEG_INF, ONE, T, ScalarRat, up_gcd
from strategies import operators, poly_scalars, scalars

t = OreOp.scalar(T)


def test_commutation_rule():
    assert D * t == t * D + ONE_OP
    assert op("(t*D + t)") * op("D + 1") == op("t*D^2 + 2*t*D + t")
    assert op("t*D + 1") * ZERO_OP == ZERO_OP


@given(operators(), operators(), operators())
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(operators(nonzero=True), operators(nonzero=True))
def test_degree_is_additive(a, b):
    assert (a * b).degree == a.degree + b.degree


@given(operators(max_deg=2), operators(max_deg=2), scalars())
def test_application_is_a_module_action(a, b, r):
    assert ore_apply(a * b, r) == ore_apply(a, ore_apply(b, r))


def test_application_examples():
    assert ore_apply(D ** 2, T ** 3) == 6 * T
    assert ore_apply(op("t*D + t + 1"), ONE / T) == ONE
    assert ore_apply(op("D^3 + t"), ScalarRat(0)) == 0


@given(operators(), operators(nonzero=True))
def test_left_division_contract(a, b):
    q, r = lquo_lrem(a, b)
    assert ore_mul(b, q) + r == a
    assert r.degree < b.degree


@given(operators(), operators(nonzero=True))
def test_right_division_contract(a, b):
    q, r = rquo_rrem(a, b)
    assert ore_mul(q, b) + r == a
    assert r.degree < b.degree


def test_division_examples():
    assert lquo_lrem(D ** 2, D) == (D, ZERO_OP)
    assert lquo_lrem(op("t*D + t + 1"), op("D + 1")) == (t, ZERO_OP)
    assert rquo_rrem(op("t*D + t"), op("D + 1")) == (t, ZERO_OP)
    # the quotient must absorb the commutator: (1/t)D*t = D + 1/t
    assert rquo_rrem(op("D + 1"), t) == (op("(1/t)*D + (t-1)/t^2"), ZERO_OP)
    L = op("t*D^2 + 1")
    assert lquo_lrem(L, L) == (ONE_OP, ZERO_OP)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        lquo_lrem(D, ZERO_OP)
    with pytest.raises(ZeroDivisionError):
        rquo_rrem(D, ZERO_OP)


small_ops = operators(max_deg=3, coeff=poly_scalars(1))
rational_ops = operators(max_deg=2, coeff=scalars(max_deg=1))


@given(small_ops | rational_ops, small_ops | rational_ops)
def test_ele_bezout_invariant(a, b):
    assume(a or b)
    tr = ele_trace(a, b)
    for R, A, B in zip(tr.R, tr.A, tr.B):
        assert R == a * A + b * B
    assert not tr.R[tr.n]


@given(operators(max_deg=3, coeff=poly_scalars(1), nonzero=True), operators(max_deg=3, coeff=poly_scalars(1), nonzero=True))
def test_ele_degree_law(a, b):
    # the law assumes the first division really divides: deg L1 >= deg L2
    assume(a.degree >= b.degree >= 1)
    tr = ele_trace(a, b)
    for i in range(2, tr.n + 1):
        assert tr.A[i].degree == b.degree - tr.R[i - 1].degree
        assert tr.B[i].degree == a.degree - tr.R[i - 1].degree


def test_ele_examples():
    R, An, Bn, _, _ = ele(op("-D - 1"), D)
    assert R.degree == 0
    c = ore_mul(An, OreOp.scalar(An.lc.inverse()))
    assert c == D and ore_mul(Bn, OreOp.scalar(An.lc.inverse())) == op("D + 1")
    R, *_ = ele(op("D + 1"), op("t*D + t + 1"))
    assert ore_mul(R, OreOp.scalar(R.lc.inverse())) == op("D + 1")
    L = op("t*D^2 + 3")
    assert ele(L, ZERO_OP) == (L, ONE_OP, ZERO_OP, ONE_OP, ZERO_OP)[:1] + ele(L, ZERO_OP)[1:]
    assert ele(L, ZERO_OP)[0] == L
    with pytest.raises(ValueError):
        ele(ZERO_OP, ZERO_OP)


def test_gcd_examples():
    assert gcld(D ** 2, D) == D
    assert gcld(op("D + 1"), op("t*D + t + 1")) == op("D + 1")
    assert gcld(op("t*D + t"), op("D + 1")) == ONE_OP
    assert gcrd(op("t*D + t"), op("D + 1")) == op("D + 1")
    assert gcrd(D, D) == D
    m = lcrm(op("t*D + t"), op("D + 1"))
    assert m == op("D^2 + ((2*t-2)/t)*D + (t^2-2*t+2)/t^2")
    assert not lrem(m, op("t*D + t")) and not lrem(m, op("D + 1"))
    # right-normalized associate of (t*D + t)*(D + 1) = t*D^2 + 2*t*D + t
    assert m == op("t*D^2 + 2*t*D + t") * OreOp.scalar(ONE / T)
    with pytest.raises(ValueError):
        gcrd(ZERO_OP, ZERO_OP)
    with pytest.raises(ValueError):
        lcrm(D, ZERO_OP)


@given(operators(max_deg=2), operators(max_deg=2))
def test_gcld_left_divides_and_is_monic(a, b):
    assume(a or b)
    g = gcld(a, b)
    assert g.lc == ONE
    assert not lrem(a, g) and not lrem(b, g)


@given(operators(max_deg=2), operators(max_deg=2))
def test_gcrd_right_divides_and_is_monic(a, b):
    assume(a or b)
    g = gcrd(a, b)
    assert g.lc == ONE
    assert not rrem(a, g) and not rrem(b, g)


@given(operators(max_deg=2, coeff=poly_scalars(1), nonzero=True), operators(max_deg=2, nonzero=True))
def test_lcrm_is_minimal_common_right_multiple(a, b):
    m = lcrm(a, b)
    assert m.lc == ONE
    assert not lrem(m, a) and not lrem(m, b)
    assert m.degree == a.degree + b.degree - gcld(a, b).degree


@given(operators(max_deg=2), operators(max_deg=2), operators(max_deg=2, nonzero=True))
def test_gcrd_of_common_right_factor(a, b, m):
    assume(a or b)
    g = gcrd(a * m, b * m)
    assert not rrem(g, m)
    assert g.degree >= m.degree


@given(operators(max_deg=2), operators(max_deg=2), operators(max_deg=2, nonzero=True))
def test_gcld_of_common_left_factor(a, b, m):
    assume(a or b)
    g = gcld(m * a, m * b)
    assert not lrem(g, m)


def _const_ops(max_deg, values=(-1, 0, 1, 2)):
    for deg in range(max_deg + 1):
        for cs in itertools.product(values, repeat=deg + 1):
            if cs[-1]:
                yield OreOp([ScalarRat(c) for c in cs])


def test_gcld_against_exhaustive_search():
    # constant coefficients commute, so every common left divisor is a common
    # polynomial factor; search all small monic candidates for one of maximal degree
    pool = list(_const_ops(2))
    monic_divisors = {d.scale_left(d.lc.inverse()) for d in _const_ops(2, (-2, -1, 0, 1, 2))}
    for a, b in itertools.islice(itertools.product(pool, repeat=2), 0, None, 7):
        best = max((d.degree for d in monic_divisors if not lrem(a, d) and not lrem(b, d)), default=0)
        g = gcld(a, b)
        assert g.degree == best
        poly = up_gcd(tuple(c.constant_value() for c in a.coeffs), tuple(c.constant_value() for c in b.coeffs))
        assert tuple(c.constant_value() for c in g.coeffs) == poly


def test_wronskian_examples():
    assert wronskian([1, T, T ** 2]) == 2
    assert wronskian([T, 2 * T]) == 0
    assert wronskian([ONE / T, T]) == 2 / T
    with pytest.raises(ValueError):
        wronskian([])


@given(st.lists(poly_scalars(max_deg=2), min_size=1, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_wronskian_vanishes_on_dependent_families(elems, cs):
    combo = sum((c * e for c, e in zip(cs, elems)), ScalarRat(0))
    assert wronskian(elems + [combo]) == 0


def test_degree_sentinel_and_printing():
    assert ZERO_OP.degree == NEG_INF
    assert str(op("t*D^2 + (t+1)*D + 1")) == "t*D^2 + (t+1)*D + 1"
    assert str(op("-D - 1")) == "-D - 1"
    assert str(ZERO_OP) == "0"
    assert OreOp([Fraction(1, 2)]) == OreOp.scalar(ScalarRat(Fraction(1, 2)))
