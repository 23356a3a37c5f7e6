import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filliform import linalg
from filliform.errors import DomainError
from filliform.lattice import (
    Form,
    adjunction_genus,
    char_base,
    complement_quotient,
    direct_sum,
    dual_pairing,
    invariants,
    is_isometric,
    minimal_part,
    nondegenerate_part,
    overlattice_glue,
    root_system,
    shadow,
    short_vectors,
    standard_form,
)
from filliform.lattice.forms import _d_basis, gamma_basis

import oracles

E8 = standard_form("E8")


def cube(n):
    return standard_form("cube", n)


def gamma_quotient(g):
    k = 4 * g + 5
    x = [2 * g + 1] + [-g] * 4 + [-1] * (4 * g + 1)
    return complement_quotient(standard_form("lorentz", k), x)


# -- invariants -------------------------------------------------------------


def test_invariants_examples():
    inv = invariants(E8)
    assert (inv.rank, inv.signature, inv.det, inv.parity) == (8, (0, 8, 0), 1, "even")
    one = invariants(Form([[-1]]))
    assert (one.rank, one.det, one.parity, one.definiteness) == (1, -1, "odd", "neg-def")
    zero = invariants(Form([[0, 0], [0, 0]]))
    assert zero.signature == (0, 0, 2) and zero.definiteness == "zero"
    assert invariants(Form([])).det == 1


def test_form_rejects_asymmetric():
    with pytest.raises(DomainError):
        Form([[0, 1], [0, 0]])


def test_nondegenerate_part():
    assert nondegenerate_part(Form([[-1, 0], [0, 0]])) == Form([[-1]])
    q = nondegenerate_part(Form([[-2, -2, 0], [-2, -2, 0], [0, 0, -2]]))
    assert q.rank == 2 and linalg.determinant(q.gram) == 4
    assert is_isometric(q, Form([[-2, 0], [0, -2]]))[0]
    assert nondegenerate_part(E8) == E8


def test_dual_pairing():
    assert dual_pairing(cube(5), [1] * 5, [1] * 5) == -5
    assert dual_pairing(Form([[-2]]), [1], [1]) == Fraction(-1, 2)
    root = [1, 0, 0, 0, 0, 0, 0, 0]
    dual = linalg.matvec(E8.gram, root)
    assert dual_pairing(E8, dual, dual) == -2
    with pytest.raises(DomainError):
        dual_pairing(Form([[0]]), [1], [1])


def test_char_base():
    assert char_base(E8).coords == (0,) * 8
    assert char_base(cube(4)).coords == (1, 1, 1, 1)
    assert char_base(Form([[-1, 0], [0, -2]])).coords == (1, 0)


# -- standard forms ---------------------------------------------------------


@pytest.mark.parametrize("k", [4, 5, 6, 9])
def test_d_determinant(k):
    assert abs(oracles.cofactor_det(standard_form("D", k).rows())) == 4


def test_gamma_needs_multiple_of_four():
    with pytest.raises(DomainError):
        standard_form("Gamma", 6)
    for k in (4, 8, 12):
        assert abs(linalg.determinant(standard_form("Gamma", k).gram)) == 1


def test_small_gammas():
    assert is_isometric(standard_form("Gamma", 4), cube(4))[0]
    ok, w = is_isometric(standard_form("Gamma", 8), E8)
    assert ok and linalg.congruent(standard_form("Gamma", 8).gram, w) == E8.rows()


def test_lorentz_and_cube():
    assert standard_form("lorentz", 2) == Form([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    assert standard_form("cube", 2, eps=1) == Form([[1, 0], [0, 1]])
    assert standard_form("hyperbolic") == Form([[0, 1], [1, 0]])


# -- short vectors ----------------------------------------------------------


def test_short_vector_examples():
    assert short_vectors(cube(2), 1) == {-1: [(0, 1), (1, 0)]}
    assert short_vectors(Form([[-2]]), 1) == {}
    sv = short_vectors(E8, 2)
    assert list(sv) == [-2]
    assert 2 * len(sv[-2]) == oracles.e8_root_count_model() == 240


def random_definite(rng, n, spread=3):
    """A random negative-definite Gram: -(B^T B + I) for a small integer B."""
    b = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
    return Form([[-(sum(b[k][i] * b[k][j] for k in range(n)) + (i == j)) for j in range(n)] for i in range(n)])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6), st.integers(1, 8))
def test_short_vectors_match_box_scan(n, seed, bound):
    f = random_definite(random.Random(seed), n, spread=2)
    got = Counter()
    for norm, reps in short_vectors(f, bound).items():
        for v in reps:
            assert f.norm(v) == norm
            got[tuple(v)] += 1
            got[tuple(-a for a in v)] += 1
    pos = [[-x for x in row] for row in f.gram]
    want = Counter(x for _, x in oracles.box_short_vectors(pos, bound))
    assert got == want


# -- shadow -----------------------------------------------------------------


def test_shadow_examples():
    st_e8 = shadow(E8)
    assert (st_e8.s, st_e8.s_bar) == (0, 8)
    for n in range(1, 7):
        s = shadow(cube(n))
        assert (s.s, s.s_bar) == (n, 0)
    assert shadow(Form([])).s == 0 and shadow(Form([])).s_bar == 0
    with pytest.raises(DomainError):
        shadow(standard_form("hyperbolic"))


def test_gamma12_shadow_against_model():
    roots, halves, basis = oracles.gamma12_model()

    def characteristic(v):
        # in doubled coordinates the true pairing is (v.b)/4
        return all((sum(a * c for a, c in zip(v, b)) - sum(c * c for c in b)) % 8 == 0 for b in basis)

    # nothing of norm 2 or 3 is characteristic; 2 e_1 (norm 4) is
    assert not any(characteristic(v) for v in roots + halves)
    assert characteristic([4] + [0] * 11)
    st12 = shadow(standard_form("Gamma", 12))
    assert st12.s == 4 and st12.s_bar == 8
    assert dual_pairing(standard_form("Gamma", 12), st12.witness.coords, st12.witness.coords) == -4


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_shadow_matches_box_scan(n, seed):
    f = random_definite(random.Random(seed), n, spread=1)
    got = shadow(f)
    assert got.s == oracles.box_shadow(f.rows())
    assert dual_pairing(f, got.witness.coords, got.witness.coords) == -got.s
    assert all((c - f.gram[j][j]) % 2 == 0 for j, c in enumerate(got.witness.coords))


# -- roots ------------------------------------------------------------------


def test_root_system_examples():
    assert root_system(Form([[-2]])).components == (("A", 1),)
    e8 = root_system(E8)
    assert e8.components == (("E", 8),) and e8.root_count == 240 and e8.spans_full_rank
    g12 = root_system(standard_form("Gamma", 12))
    assert g12.components == (("D", 12),) and g12.root_count == 264
    assert root_system(standard_form("D", 3)).components == (("A", 3),)
    d2 = root_system(standard_form("D", 2))
    assert d2.components == (("A", 1), ("A", 1))
    assert root_system(cube(3)).root_count == 12  # D3 = A3 inside Z^3


def test_root_system_mixed():
    f = direct_sum(standard_form("A", 2), standard_form("D", 5), Form([[-1]]))
    rs = root_system(f)
    assert rs.components == (("D", 5), ("A", 2)) and rs.root_count == 6 + 40
    assert not rs.spans_full_rank


# -- glue -------------------------------------------------------------------


def _d_in_gamma(k):
    cols = linalg.transpose(gamma_basis(k), k)
    return [[int(c) for c in linalg.solve_rational(cols, [2 * x for x in r])] for r in _d_basis(k)]


def test_overlattice_glue():
    g8 = overlattice_glue(standard_form("Gamma", 8), _d_in_gamma(8))
    assert g8.index == 2 and g8.overlattice_class == "Gamma" and len(g8.glue) == 1
    z4 = overlattice_glue(cube(4), _d_basis(4))
    assert z4.index == 2 and z4.overlattice_class == "Z"
    same = overlattice_glue(E8, linalg.identity(8))
    assert same.index == 1 and same.glue == ()
    with pytest.raises(DomainError):
        overlattice_glue(cube(2), [[1, 1], [2, 2]])


# -- isometry ---------------------------------------------------------------


def test_isometry_examples():
    assert not is_isometric(E8, cube(8))[0]
    ok, w = is_isometric(E8, E8)
    assert ok and w == linalg.identity(8)
    with pytest.raises(DomainError):
        is_isometric(standard_form("hyperbolic"), standard_form("hyperbolic"))


def test_isometry_equivalence_on_pool():
    rng = random.Random(7)
    base = [standard_form("D", 4), direct_sum(standard_form("A", 2), cube(2)), standard_form("A", 4)]
    pool = []
    for f in base:
        pool.append(f)
        pool.append(Form(oracles.congruence(f.rows(), oracles.random_unimodular(rng, f.rank))))
    for a in pool:
        for b in pool:
            ok, w = is_isometric(a, b)
            ok2, w2 = is_isometric(b, a)
            assert ok == ok2
            if ok:
                assert linalg.congruent(a.gram, w) == b.rows()
                # composing with the inverse witness gives the identity isometry class
                back = linalg.matmul(w, w2)
                assert linalg.congruent(a.gram, back) == a.rows()
    # transitivity via composition
    a, b, c = pool[0], pool[1], pool[0]
    _, w1 = is_isometric(a, b)
    _, w2 = is_isometric(b, c)
    assert linalg.congruent(a.gram, linalg.matmul(w1, w2)) == c.rows()


# -- quotients, genus, minimal part -----------------------------------------


def test_complement_quotient_examples():
    q1 = gamma_quotient(1)
    assert is_isometric(q1, E8)[0]
    q2 = gamma_quotient(2)
    inv = invariants(q2)
    assert (inv.rank, abs(inv.det), inv.parity) == (12, 1, "odd")
    assert root_system(q2).components == (("D", 12),)
    assert short_vectors(q2, 1) == {}
    assert complement_quotient(standard_form("lorentz", 1), [1, -1]) == Form([])


def test_complement_quotient_errors():
    amb = standard_form("lorentz", 1)
    with pytest.raises(DomainError) as e1:
        complement_quotient(amb, [2, -2])
    with pytest.raises(DomainError) as e2:
        complement_quotient(amb, [1, 0])
    assert e1.value.kind == "not-primitive" and e2.value.kind == "not-isotropic"


def _isotropic_classes(max_k=5, spread=3):
    import itertools
    from math import isqrt
    out = []
    for k in range(1, max_k + 1):
        for bs in itertools.product(range(-spread, spread + 1), repeat=k):
            sq = sum(b * b for b in bs)
            a = isqrt(sq)
            x = [a, *bs]
            if a and a * a == sq and linalg.is_primitive_set([x], k + 1):
                out.append(tuple(x))
    return out


ISOTROPIC = _isotropic_classes()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ISOTROPIC))
def test_quotient_unimodular_and_parity(x):
    k = len(x) - 1
    q = complement_quotient(standard_form("lorentz", k), x)
    assert q.rank == k - 1 and abs(linalg.determinant(q.gram)) == 1
    x_characteristic = all(c % 2 == 1 for c in x)
    assert (invariants(q).parity == "even") == x_characteristic


def test_adjunction_genus():
    assert adjunction_genus(standard_form("lorentz", 0), [1]) == 0
    assert adjunction_genus(standard_form("lorentz", 0), [2]) == 0
    for g in range(0, 5):
        k = 4 * g + 5
        c = [2 * g + 1] + [-g] * 4 + [-1] * (4 * g + 1)
        amb = standard_form("lorentz", k)
        assert amb.norm(c) == 0 and adjunction_genus(amb, c) == g
    assert adjunction_genus(standard_form("lorentz", 1), [0, 1]) == 0
    with pytest.raises(DomainError):
        adjunction_genus(standard_form("lorentz", 1), [0, 2])  # (-2 - 4 + 2)/2 < 0


def test_adjunction_rejects_bad_ambient():
    with pytest.raises(DomainError):
        adjunction_genus(E8, [0] * 8)


def test_minimal_part():
    assert minimal_part(cube(3)) == (3, Form([]))
    assert minimal_part(E8) == (0, E8)
    m, rest = minimal_part(direct_sum(E8, cube(1)))
    assert m == 1 and is_isometric(rest, E8)[0]
    m, rest = minimal_part(standard_form("Gamma", 4))
    assert m == 4 and rest.rank == 0


# -- invariance properties --------------------------------------------------


FIXTURES = {
    "E8": E8,
    "D4+A2": direct_sum(standard_form("D", 4), standard_form("A", 2)),
    "Z3+A1": direct_sum(cube(3), Form([[-2]])),
}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_isometry_invariance(name):
    f = FIXTURES[name]
    rng = random.Random(name)
    ref_shadow, ref_roots = shadow(f), root_system(f)
    for _ in range(10):
        g = Form(oracles.congruence(f.rows(), oracles.random_unimodular(rng, f.rank)))
        sg = shadow(g)
        assert (sg.s, sg.s_bar) == (ref_shadow.s, ref_shadow.s_bar)
        rg = root_system(g)
        assert (rg.components, rg.root_count) == (ref_roots.components, ref_roots.root_count)


def test_s_bar_even_and_unit_stability():
    for f in (E8, direct_sum(standard_form("D", 4), standard_form("D", 4)), standard_form("A", 3)):
        assert shadow(f).s == 0 and shadow(f).s_bar == f.rank
        assert shadow(direct_sum(f, cube(1))).s_bar == shadow(f).s_bar
    odd = Form([[-3]])
    assert shadow(odd).s != 0
