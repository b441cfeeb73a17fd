import random
from itertools import permutations
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exoticnc.affine import abi_elements, abi_word
from exoticnc.coinv import (
    Coinvariants,
    antisymmetrize,
    antisymmetrize_fast,
    basis_X,
    coinvariant_slice,
    congruent_exponents,
    exact_determinant,
    finite_staircase_pairing,
    frobenius_pairing,
    invariant_gens,
    J_operator,
    normal_form,
    pi_m,
    top_degree,
    y_variables,
)
from exoticnc.demazure import word_apply
from exoticnc.exactnum import CyclotomicRing
from exoticnc.linalg import ExactField
from exoticnc.poly import MultiPoly, complete_symmetric, monomials_of_degree, random_poly
from exoticnc.refrep import apply_sigma, delta, phi1m, simple_reflection_matrix, staircase

from strategies import exponents


def mono(e, ring, c=None):
    return MultiPoly.monomial(e, ring.one() if c is None else c, ring)


def is_anti(f, n):
    return all(simple_reflection_matrix(i, n).apply(f) == -f for i in range(n))


def is_invariant(f, n):
    return all(simple_reflection_matrix(i, n).apply(f) == f for i in range(n))


# -- invariants


@pytest.mark.parametrize("n,m", [(2, 3), (3, 2), (3, 3), (4, 2)])
def test_invariant_gens(n, m):
    gens = invariant_gens(n, m)
    assert sorted(gens.degrees) == sorted([k * m for k in range(1, n)] + [n])
    for g in gens.gens:
        assert is_invariant(g, n)


def test_degree_two_generator_m2():
    C = CyclotomicRing(3, 2)
    g = invariant_gens(3, 2).gens[0]
    want = mono((2, 0, 0), C) + mono((0, 2, 0), C, C.zeta(2)) + mono((0, 0, 2), C, C.zeta(4))
    assert g == want.scale(C.zeta(2))


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 2)])
def test_top_elementary_is_power_of_a(n, m):
    C = CyclotomicRing(n, m)
    ys = y_variables(n, m, C)
    en = ys[0]
    for y in ys[1:]:
        en = en * y
    assert en == mono((m,) * n, C, C.zeta(m * comb(n, 2)))


# -- the bases X


def test_pi_m_examples():
    assert pi_m(3, 2) == [1, 3, 5, 6, 5, 3, 1]
    for n, m in [(3, 2), (3, 3), (4, 2), (3, 5)]:
        assert sum(pi_m(n, m)) == factorial(n) * m ** (n - 1)
        assert len(pi_m(n, m)) == top_degree(n, m) + 1


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (3, 4), (4, 2), (2, 5)])
def test_basis_X_counts_for_every_order(n, m):
    for order in permutations(range(1, n + 1)):
        b = basis_X(order, n, m)
        assert b.graded_counts() == pi_m(n, m)
        assert len(b.monomials) == factorial(n) * m ** (n - 1)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_basis_X_contains_stated_families(m):
    X = set(basis_X((1, 2, 3), 3, m).monomials)
    assert (0, 0, 0) in X
    for a in range(1, 2 * m + 1):
        assert (a, 0, 0) in X
        for b in range(1, m + 1):
            assert (a, b, 0) in X
    assert (2 * m + 1, 0, 0) not in X


def test_basis_X_rejects_bad_order():
    with pytest.raises(ValueError):
        basis_X((1, 1, 2), 3, 2)


# -- coinvariant slices


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 2)])
def test_slice_dims_match_pi_m(n, m):
    Cv = Coinvariants(n, m)
    assert Cv.dims == pi_m(n, m)
    assert Cv.basis(-1) == [] and Cv.basis(Cv.top + 1) == []


def test_low_degree_slices_are_free():
    s = coinvariant_slice(3, 3, 2)
    assert s.standard == s.monomials
    C = CyclotomicRing(3, 3)
    f = mono((1, 1, 0), C) + mono((0, 2, 0), C, C.zeta(1))
    assert normal_form(f, 3) == f


def test_slice_cache_round_trip(tmp_path):
    from exoticnc.coinv import clear_memory_cache

    clear_memory_cache()
    a = coinvariant_slice(3, 2, 4, cache_dir=tmp_path)
    files = list(tmp_path.glob("slice_n3_m2_d4_*.json"))
    assert len(files) == 1
    clear_memory_cache()
    b = coinvariant_slice(3, 2, 4, cache_dir=tmp_path)
    assert a.standard == b.standard and a.nf == b.nf
    clear_memory_cache()
    c = coinvariant_slice(3, 2, 4, cache_dir="")
    assert c.nf == a.nf


@pytest.mark.parametrize("m", [2, 3])
def test_normal_form_idempotent_and_kills_ideal(m):
    C = CyclotomicRing(3, m)
    Cv = Coinvariants(3, m)
    gens = invariant_gens(3, m).gens
    rng = random.Random(m)
    for _ in range(30):
        f = random_poly(rng, C, 3, Cv.top, 5)
        nf = Cv.normal_form(f)
        assert Cv.normal_form(nf) == nf
        g = gens[rng.randrange(len(gens))]
        assert not Cv.normal_form(g * f)
        # f and its normal form differ by an ideal element
        assert not Cv.normal_form(f - nf)


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 2)])
def test_complete_symmetric_relations(n, m):
    C = CyclotomicRing(n, m)
    Cv = Coinvariants(n, m)
    ys = y_variables(n, m, C)
    for k in range(1, n + 1):
        yk = ys[:k]
        assert not Cv.normal_form(complete_symmetric(n - k + 1, yk))
        head = mono(tuple(1 if j < k else 0 for j in range(n)), C)
        assert not Cv.normal_form(head * complete_symmetric(n - k, yk))


# -- antisymmetrization


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 2)])
def test_antisymmetrize_is_antiinvariant(n, m):
    C = CyclotomicRing(n, m)
    rng = random.Random(7)
    for _ in range(10):
        f = random_poly(rng, C, n, top_degree(n, m) + 2, 3)
        A = antisymmetrize(f, m)
        assert is_anti(A, n)
        assert apply_sigma(A) == antisymmetrize(apply_sigma(f), m)


@given(st.sampled_from([2, 3]), exponents(3, 9))
@settings(max_examples=1000)
def test_antisymmetrization_rules(m, e):
    C = CyclotomicRing(3, m)
    f = mono(e, C)
    A = antisymmetrize(f, m)
    if len(set(e)) < 3 or not congruent_exponents(e, m):
        assert not A
    else:
        assert A == antisymmetrize(f, m, "finite").scale(m**2)
    assert A == antisymmetrize_fast(f, m)


def test_antisymmetrize_bad_variant():
    C = CyclotomicRing(3, 2)
    with pytest.raises(ValueError):
        antisymmetrize(mono((1, 0, 0), C), 2, "other")


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3)])
def test_antiinvariants_are_delta_multiples(n, m):
    C = CyclotomicRing(n, m)
    D = delta(n, m, C)
    rng = random.Random(11)
    top = top_degree(n, m)
    for _ in range(6):
        f = random_poly(rng, C, n, 0, 4, homogeneous=top + rng.randint(0, 3))
        A = antisymmetrize(f, m)
        q = A
        for r in phi1m(n, m):
            q = q.divide_linear(r.i, r.j, C.zeta(r.e))
        assert q * D == A
        assert is_invariant(q, n)


# -- J


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (3, 4), (4, 2)])
def test_J_of_staircase_is_one(n, m):
    C = CyclotomicRing(n, m)
    assert J_operator(staircase(n, m, C), m) == MultiPoly.const(C.one(), n, C)


@pytest.mark.parametrize("m", [2, 3])
def test_J_properties(m):
    C = CyclotomicRing(3, m)
    top = top_degree(3, m)
    gens = invariant_gens(3, m).gens
    rng = random.Random(5)
    for d in range(top):
        for e in monomials_of_degree(3, d):
            assert not J_operator(mono(e, C), m)
    for _ in range(8):
        f = random_poly(rng, C, 3, 0, 4, homogeneous=top + rng.randint(0, 2))
        g = gens[rng.randrange(len(gens))]
        Jf = J_operator(f, m)
        assert is_invariant(Jf, 3)
        assert J_operator(g * f, m) == g * Jf
        assert J_operator(apply_sigma(f), m) == apply_sigma(Jf)
        if Jf:
            assert Jf.degree() == f.degree() - top


@pytest.mark.parametrize("m", [2, 3])
def test_top_degree_operators_are_multiples_of_J(m):
    C = CyclotomicRing(3, m)
    P = staircase(3, m, C)
    d = 3 * m
    mons = [mono(e, C) for e in monomials_of_degree(3, d)]
    Js = [J_operator(f, m) for f in mons]
    for t in abi_elements(d, 3):
        w = abi_word(t.a, t.b, t.i, 3)
        xi = word_apply(w, P).constant_term()
        for f, Jf in zip(mons, Js):
            assert word_apply(w, f) == Jf.scale(xi)


# -- the pairing


@pytest.mark.parametrize("m", [2, 3, 4])
def test_pairing_is_nondegenerate(m):
    P = frobenius_pairing(3, m)
    assert len(P.rows) == len(P.cols) == 6 * m * m
    assert P.determinant()


@pytest.mark.parametrize("m", [2, 3])
def test_pairing_structure(m):
    n = 3
    P = frobenius_pairing(n, m)
    F = ExactField(n, m)
    for r, b in enumerate(P.rows):
        for c, cc in enumerate(P.cols):
            v = P.matrix[r, c]
            e = tuple(x + y for x, y in zip(b, cc))
            if all(a >= 1 for a in e):
                assert not v
            # the row's first zero is at i, the column's last zero at j; zero unless i <= j
            i, j = P.row_blocks[r], n + 1 - P.col_blocks[c]
            if i > j:
                assert not v
            if v:
                assert v.as_xi_power()[0] in (1, -1)
    for k in range(1, n + 1):
        rows = [r for r in range(len(P.rows)) if P.row_blocks[r] == k]
        cols = [c for c in range(len(P.cols)) if n + 1 - P.col_blocks[c] == k]
        assert len(rows) == len(cols)
        assert exact_determinant(P.matrix[np.ix_(rows, cols)], F)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_finite_staircase_pairing_is_unimodular(n):
    rows, cols, M = finite_staircase_pairing(n)
    assert len(rows) == len(cols) == factorial(n)
    import sympy

    assert abs(sympy.Matrix(M).det()) == 1
