import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filliform import linalg
from filliform.errors import DomainError

import oracles

small = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def symmetric(max_n=5):
    def build(n):
        return st.lists(small, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
            lambda xs: _sym(n, xs)
        )
    return st.integers(1, max_n).flatmap(build)


def _sym(n, xs):
    it = iter(xs)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = next(it)
    return g


def test_snf_examples():
    assert linalg.smith_normal_form([[2, 4], [6, 8]]).d == (2, 4)
    assert linalg.smith_normal_form([[0, 0, 0], [0, 0, 0]]).d == (0, 0)
    assert linalg.smith_normal_form([[1, 2, 3], [4, 5, 6], [7, 8, 9]]).d == (1, 3, 0)


def test_cokernel_examples():
    assert linalg.cokernel([[0]]) == (1, [])
    assert linalg.cokernel([[5]]) == (0, [5])
    assert linalg.cokernel([[2, 0], [0, 6]]) == (0, [2, 6])
    assert linalg.cokernel([[4, 6], [6, 4]]) == (0, [2, 10])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_round_trip(a):
    res = linalg.smith_normal_form(a)
    m, n = len(a), len(a[0])
    lhs = linalg.matmul(linalg.matmul(res.u, a), res.v)
    diag = [[res.d[i] if i == j else 0 for j in range(n)] for i in range(m)]
    assert lhs == diag
    assert abs(linalg.determinant(res.u)) == 1 and abs(linalg.determinant(res.v)) == 1
    nz = [d for d in res.d if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert res.d.index(0) >= len(nz) if 0 in res.d else True


@settings(max_examples=80, deadline=None)
@given(matrices(3, 3))
def test_snf_matches_determinantal_divisors(a):
    res = linalg.smith_normal_form(a)
    assert [d for d in res.d if d] == oracles.determinantal_divisors(a)


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_cofactor(a):
    assert linalg.determinant(a) == oracles.cofactor_det(a)


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_determinant_multiplicative(a, b):
    n = min(len(a), len(a[0]), len(b), len(b[0]))
    a = [r[:n] for r in a[:n]]
    b = [r[:n] for r in b[:n]]
    assert linalg.determinant(linalg.matmul(a, b)) == linalg.determinant(a) * linalg.determinant(b)


def test_determinant_rejects_non_square():
    with pytest.raises(DomainError):
        linalg.determinant([[1, 2]])


def test_known_determinants():
    d4 = [[-2, 0, 1, 0], [0, -2, 1, 0], [1, 1, -2, 1], [0, 0, 1, -2]]
    assert linalg.determinant(d4) == oracles.cofactor_det(d4) == 4
    assert linalg.determinant([]) == 1


@settings(max_examples=120, deadline=None)
@given(symmetric())
def test_signature_matches_charpoly(g):
    assert linalg.signature(g) == oracles.descartes_signature(g)


@settings(max_examples=60, deadline=None)
@given(symmetric(4), st.integers(0, 10**6))
def test_signature_congruence_invariant(g, seed):
    u = oracles.random_unimodular(random.Random(seed), len(g))
    assert linalg.signature(oracles.congruence(g, u)) == linalg.signature(g)


def test_signature_examples():
    assert linalg.signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert linalg.signature([[1, 0], [0, 0]]) == (1, 0, 1)
    with pytest.raises(DomainError):
        linalg.signature([[0, 1], [2, 0]])


@settings(max_examples=100, deadline=None)
@given(matrices(3, 5))
def test_integer_kernel_is_saturated_basis(a):
    n = len(a[0])
    ker = linalg.integer_kernel(a, n)
    assert len(ker) == n - linalg.rank(a, n)
    for v in ker:
        assert linalg.matvec(a, v) == [0] * len(a)
    if ker:
        assert linalg.is_primitive_set(ker, n)


@settings(max_examples=100, deadline=None)
@given(matrices(4, 4), st.lists(small, min_size=4, max_size=4))
def test_element_order(a, coeffs):
    m = len(a)
    vec = coeffs[:m]
    order = linalg.element_order(a, vec)
    if order is None:
        assert linalg.solve_rational(a, vec) is None
    else:
        # order * vec lies in the column span, and no smaller multiple does
        assert _in_image(a, [order * x for x in vec])
        assert not any(_in_image(a, [k * x for x in vec]) for k in range(1, order))


def _in_image(a, target):
    sol = linalg.solve_rational(a, target)
    if sol is None:
        return False
    # integral solvability: compare with SNF
    res = linalg.smith_normal_form(a)
    y = linalg.matvec(res.u, target)
    for i, yi in enumerate(y):
        d = res.d[i] if i < len(res.d) else 0
        if (d == 0 and yi) or (d and yi % d):
            return False
    return True


def test_extend_to_basis():
    basis = linalg.extend_to_basis([[2, 3, 0]], 3)
    assert [row[0] for row in basis] == [2, 3, 0]
    assert abs(linalg.determinant(basis)) == 1
    with pytest.raises(DomainError):
        linalg.extend_to_basis([[2, 4, 0]], 3)


def test_solve_rational():
    assert linalg.solve_rational([[2]], [1]) == [Fraction(1, 2)]
    assert linalg.solve_rational([[0]], [1]) is None


def test_snf_round_trip_500_random():
    rng = random.Random(20240611)
    for _ in range(500):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        res = linalg.smith_normal_form(a)
        lhs = linalg.matmul(linalg.matmul(res.u, a), res.v)
        assert lhs == [[res.d[i] if i == j else 0 for j in range(n)] for i in range(m)]
