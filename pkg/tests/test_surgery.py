from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filliform.errors import DomainError
from filliform.surgery import (
    FramedLink,
    KnotInPresentation,
    classify,
    cobordism_b2,
    dual_knot,
    extended_link,
    homology,
    knot_order,
    rational_linking,
    surgered,
    zero_slope,
)

import oracles


def knot(matrix, ell, f):
    return KnotInPresentation(FramedLink(matrix), ell, f)


UNKNOT = lambda f: knot([], [], f)  # noqa: E731


@st.composite
def presentations(draw, max_rank=4, lo=-3, hi=3):
    m = draw(st.integers(0, max_rank))
    entries = st.integers(lo, hi)
    mat = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            mat[i][j] = mat[j][i] = draw(entries)
    ell = draw(st.lists(entries, min_size=m, max_size=m))
    return knot(mat, ell, draw(entries))


def b1_oracle(matrix):
    """Betti number as corank over Q, via the characteristic polynomial."""
    if not matrix:
        return 0
    return oracles.descartes_signature(matrix)[2]


def test_homology_examples():
    assert homology(FramedLink([])).b1 == 0
    assert homology(FramedLink([[0]])).b1 == 1
    assert homology(FramedLink([[0] * 3] * 3)).b1 == 3
    lens = homology(FramedLink([[7]]))
    assert lens.torsion_factors == (7,) and lens.torsion_order == 7


def test_knot_order_examples():
    assert knot_order(UNKNOT(3)) == 1
    assert knot_order(knot([[6]], [1], 0)) == 6
    assert knot_order(knot([[6]], [2], 0)) == 3
    assert knot_order(knot([[0]], [1], 0)) is None


def test_zero_slope_examples():
    s = zero_slope(UNKNOT(0))
    assert (s.d, s.lambda0, s.mu_dot_lambda0) == (1, (0, 1), 1)
    s = zero_slope(UNKNOT(4))
    assert (s.d, s.lambda0, s.mu_dot_lambda0) == (1, (-4, 1), 1)
    s = zero_slope(knot([[0]], [1], 0))
    assert (s.lambda0, s.mu_dot_lambda0) == ((1, 0), 0)
    # Z/4 with K twice a generator: [K] has order 2, and a multiple of the slope dies
    s = zero_slope(knot([[4]], [2], 0))
    assert s.d * s.mu_dot_lambda0 == 2


def test_classify_examples():
    assert classify(UNKNOT(0)) == 2
    assert classify(UNKNOT(3)) == 3 and classify(UNKNOT(-2)) == 3
    assert classify(knot([[0]], [1], 0)) == 1


def test_cobordism_examples():
    w = cobordism_b2(UNKNOT(-1))
    assert (w.case, w.b2_plus, w.b2_minus) == (3, 0, 1)
    w = cobordism_b2(UNKNOT(1))
    assert (w.case, w.b2_plus, w.b2_minus) == (3, 1, 0)
    w = cobordism_b2(UNKNOT(0))
    assert (w.case, w.b2_plus, w.b2_minus, w.b2_zero) == (2, 0, 0, 1)


def test_rational_linking_examples():
    assert rational_linking(UNKNOT(5)) == 5
    assert rational_linking(knot([[3]], [1], 0)) == Fraction(-1, 3)
    with pytest.raises(DomainError):
        rational_linking(knot([[0]], [1], 0))


def test_dual_examples():
    assert surgered(dual_knot(UNKNOT(0))).b1 == 0
    assert surgered(dual_knot(UNKNOT(5))) == homology(FramedLink([]))
    assert classify(dual_knot(knot([[0]], [1], 0))) == 2
    assert extended_link(UNKNOT(2)).names == ("K",)


@settings(max_examples=200, deadline=None)
@given(presentations())
def test_case_matches_betti_change(k):
    case = classify(k)
    before = b1_oracle([list(r) for r in k.link.matrix])
    after = b1_oracle([list(r) for r in extended_link(k).matrix])
    assert after - before == {1: -1, 2: 1, 3: 0}[case]


@settings(max_examples=200, deadline=None)
@given(presentations())
def test_order_is_divisibility_times_slope(k):
    s = zero_slope(k)
    order = knot_order(k)
    assert (order or 0) == s.d * s.mu_dot_lambda0


@settings(max_examples=150, deadline=None)
@given(presentations())
def test_dual_swaps_cases_and_restores_homology(k):
    case = classify(k)
    dual = dual_knot(k)
    assert classify(dual) == {1: 2, 2: 1, 3: 3}[case]
    assert surgered(dual) == homology(k.link)


@settings(max_examples=150, deadline=None)
@given(presentations())
def test_mirror_flips_b2(k):
    w = cobordism_b2(k)
    assert w.b2_plus + w.b2_minus == (1 if w.case == 3 else 0)
    mirror = knot([[-x for x in r] for r in k.link.matrix], [-e for e in k.ell], -k.framing)
    wm = cobordism_b2(mirror)
    assert (wm.case, wm.b2_plus, wm.b2_minus, wm.b2_zero) == (w.case, w.b2_minus, w.b2_plus, w.b2_zero)


@settings(max_examples=100, deadline=None)
@given(presentations())
def test_extended_determinant_is_torsion_order(k):
    after = surgered(k)
    if after.b1 == 0:
        assert abs(oracles.cofactor_det([list(r) for r in extended_link(k).matrix])) == after.torsion_order
