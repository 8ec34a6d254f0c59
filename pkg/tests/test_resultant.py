import random
import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dcurve.diffpoly import DiffPoly, substitute_rational
from dcurve.parsing import parse_diffpoly as P
from dcurve.resultant import (
    build_resultant_matrix,
    det_cofactor,
    det_fraction_free,
    det_scalar_block,
    diff_resultant,
)
from generators import rand_diffpoly, rand_poly_scalar
from strategies import diffpolys, poly_scalars


def test_matrix_shapes_and_labels():
    M = build_resultant_matrix(P("x - u"), P("y - u'"))
    assert M.size == 3
    assert M.row_labels == ((1, 1), (1, 0), (2, 0))
    assert M.col_labels == (1, 0, None)
    assert M.entries[0] == (P("-1"), P("0"), P("x'"))
    assert build_resultant_matrix(P("x*u - u'' - 1"), P("y*u - u'' - 1")).size == 6
    assert build_resultant_matrix(P("x - u'"), P("y - u - u'")).size == 4


def test_matrix_rejects_bad_inputs():
    with pytest.raises(ValueError):
        build_resultant_matrix(P("x - u^2"), P("y - u"))
    with pytest.raises(ValueError):
        build_resultant_matrix(P("x - 1"), P("y - u"))


def test_small_determinants():
    assert det_fraction_free([[P("1"), P("0")], [P("0"), P("1")]]) == P("1")
    assert det_fraction_free([[P("x"), P("y")], [P("y"), P("x")]]) == P("x^2 - y^2")
    assert det_fraction_free([]) == P("1")
    with pytest.raises(ValueError):
        det_fraction_free([[P("x"), P("y")]])


def test_resultant_examples():
    start = time.perf_counter()
    R = diff_resultant(P("x*u - u'' - 1"), P("y*u - u'' - 1"))
    assert time.perf_counter() - start < 1.0
    assert R == P("(y - x)^3")
    assert diff_resultant(P("x - u'"), P("y - u - u'")) == P("y' - x' - x")
    assert diff_resultant(P("x - u"), P("y - u")) == P("x - y")


def test_fraction_free_matches_cofactor_on_resultant_matrices():
    for f1, f2 in [("x*u - u'' - 1", "y*u - u'' - 1"), ("x - u'", "y - u - u'"), ("t*x*u' - u + y", "y*u'' - x'")]:
        M = build_resultant_matrix(P(f1), P(f2))
        assert det_fraction_free(M) == det_cofactor(M)


@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_fraction_free_matches_cofactor(n, rng):
    m = [[rand_diffpoly(rng, max_terms=2) for _ in range(n)] for _ in range(n)]
    assert det_fraction_free(m) == det_cofactor(m)


@given(st.integers(1, 5), st.randoms(use_true_random=False))
def test_scalar_block_matches_cofactor(n, rng):
    def scalar():
        s, d = rand_poly_scalar(rng, 2), rand_poly_scalar(rng, 1)
        return s / d if d and rng.random() < 0.3 else s

    m = [[DiffPoly.const(scalar()) for _ in range(n - 1)] + [rand_diffpoly(rng, max_terms=2)] for _ in range(n)]
    if n > 1 and rng.random() < 0.2:
        m[1][:-1] = m[0][:-1]  # singular scalar block
    assert det_scalar_block(m) == det_cofactor(m) == det_fraction_free(m)


def test_singular_matrix_with_pivoting():
    m = [[P("0"), P("x"), P("y")], [P("0"), P("y"), P("x")], [P("u"), P("1"), P("t")]]
    assert det_fraction_free(m) == det_cofactor(m) == P("u*x^2 - u*y^2")
    z = [[P("0"), P("x")], [P("0"), P("y")]]
    assert det_fraction_free(z) == P("0")


@given(
    st.lists(poly_scalars(1), min_size=1, max_size=3).filter(lambda c: c[-1]),
    st.lists(poly_scalars(1), min_size=1, max_size=3).filter(lambda c: c[-1]),
)
def test_resultant_vanishes_on_the_parametrization(c1, c2):
    p1 = sum((DiffPoly.var("u", j) * c for j, c in enumerate(c1)), DiffPoly.const(0))
    p2 = sum((DiffPoly.var("u", j) * c for j, c in enumerate(c2)), DiffPoly.const(0))
    R = diff_resultant(DiffPoly.var("x") - p1, DiffPoly.var("y") - p2)
    one = DiffPoly.const(1)
    num, _ = substitute_rational(R, (p1, one), (p2, one))
    assert not num
