import itertools
import random
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exoticnc.affine import all_words, coxeter_length, is_reduced, word_to_perm
from exoticnc.exactnum import CyclotomicRing, FormalRing
from exoticnc.poly import MultiPoly, random_poly
from exoticnc.refrep import (
    MonomialMatrix,
    Root,
    apply_sigma,
    apply_tau,
    braid_scalar,
    classify_image,
    delta,
    enumerate_finite_Sn,
    enumerate_Wm,
    omega_check,
    phi1,
    phi1m,
    root_counting_length,
    simple_reflection_matrix,
    staircase,
    t_long_word,
    tau_delta_scalar,
    translation_action,
    word_matrix,
)


def test_simple_reflection_images():
    s1 = simple_reflection_matrix(1, 3)
    assert s1.image(0) == (1, 1)  # s1(x1) = z x2
    assert s1.image(1) == (0, -1)  # s1(x2) = z^-1 x1
    assert s1.image(2) == (2, 0)  # s1(x3) = x3
    R = FormalRing(3)
    x = lambda j: MultiPoly.var(j, R)
    assert s1.apply(x(1)) == x(2).scale(R.z(1))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_coxeter_relations_as_matrices(n):
    s = [simple_reflection_matrix(i, n) for i in range(n)]
    for i in range(n):
        assert (s[i] * s[i]).is_identity()
    if n == 2:
        return
    for i in range(n):
        j = (i + 1) % n
        assert s[i] * s[j] * s[i] == s[j] * s[i] * s[j]
        for k in range(n):
            if k not in (i, j, (i - 1) % n):
                assert s[i] * s[k] == s[k] * s[i]


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 2), (3, 4)])
def test_s0_tlong_has_order_m_when_specialized(n, m):
    g = word_matrix((0,) + t_long_word(n), n, m)
    h = MonomialMatrix.identity(n, n * m)
    for k in range(1, m + 1):
        h = h * g
        assert h.is_identity() == (k == m)


def test_translation_action():
    assert translation_action((0, 0, 0)).is_identity()
    for n in (3, 4):
        g = word_matrix((0,) + t_long_word(n), n)
        assert g.image(0) == (0, n)
        assert g.image(n - 1) == (n - 1, -n)
        a = [1] + [0] * (n - 2) + [-1]
        assert g == translation_action(a)
    for m in (2, 3):
        assert translation_action((m, -m, 0), m).is_identity()


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 2), (3, 4), (2, 3)])
def test_Wm_size_and_signs(n, m):
    els = enumerate_Wm(n, m)
    assert len(els) == factorial(n) * m ** (n - 1)
    assert len({g.matrix for g in els}) == len(els)
    assert els[0].matrix.is_identity() and els[0].sign == 1
    signs = {g.matrix: g.sign for g in els}
    rng = random.Random(5)
    for _ in range(200):
        w = tuple(rng.randrange(n) for _ in range(rng.randrange(12)))
        assert signs[word_matrix(w, n, m)] == (-1) ** len(w)
    assert len(enumerate_finite_Sn(n, m)) == factorial(n)


def test_phi1m_example():
    roots = phi1m(3, 2)
    assert len(roots) == 6
    # x1 - zeta x2, x1 + zeta x2, x2 - zeta x3, x1 - zeta^2 x3, x2 + zeta x3, x1 + zeta^2 x3; -1 = zeta^3
    expected = {(0, 1, 1), (0, 1, 4), (1, 2, 1), (0, 2, 2), (1, 2, 4), (0, 2, 5)}
    assert {(r.i, r.j, r.e) for r in roots} == expected


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 2), (3, 4), (4, 3)])
def test_phi1m_size(n, m):
    assert len(phi1m(n, m)) == m * comb(n, 2)


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 2)])
def test_delta_antiinvariance_and_staircase_coefficient(n, m):
    R = CyclotomicRing(n, m)
    D = delta(n, m, R)
    assert D.is_homogeneous() and D.degree() == m * comb(n, 2)
    for k in range(n):
        assert simple_reflection_matrix(k, n, m).apply(D) == -D
    assert D.coeff(tuple((n - 1 - j) * m for j in range(n))) == 1
    assert apply_sigma(D) == D
    assert apply_tau(D) == D.scale(tau_delta_scalar(n, m, R))


@settings(max_examples=1000)
@given(st.sampled_from([2, 3]), st.integers(min_value=0, max_value=2), st.integers(min_value=0, max_value=10**6))
def test_delta_times_random_polynomial(m, k, seed):
    """s_k(Delta g) = -Delta s_k(g), sigma(Delta g) = Delta sigma(g)."""
    R = CyclotomicRing(3, m)
    D = delta(3, m, R)
    g = random_poly(random.Random(seed), R, 3, 3, 3)
    s = simple_reflection_matrix(k, 3, m)
    assert s.apply(D * g) == -(D * s.apply(g))
    assert apply_sigma(D * g) == D * apply_sigma(g)
    assert apply_tau(D * g) == (D * apply_tau(g)).scale(tau_delta_scalar(3, m, R))


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 2)])
def test_phi1_specializes_into_phi1m(n, m):
    reps = {(r.i, r.j, r.e % (n * m)) for r in phi1m(n, m)}
    for r in phi1(n, 2 * m + 1):
        if r.i < r.j:
            key = (r.i, r.j, r.e % (n * m))
        else:
            key = (r.j, r.i, (-r.e) % (n * m))
        assert key in reps, r


def test_root_counting_length_examples():
    assert root_counting_length((), 3) == 0
    for i in range(3):
        assert root_counting_length((i,), 3) == 1
        g = simple_reflection_matrix(i, 3)
        for r in phi1(3, 3):
            sign, _, gamma = classify_image(g, r)
            if (r.i, r.j, r.e) == ((i - 1) % 3, i % 3, 1):
                assert sign < 0
            else:
                assert sign > 0


@pytest.mark.parametrize("n", [3, 4])
def test_root_counting_length_on_all_reduced_words(n):
    top = 7 if n == 3 else 5
    for d in range(top + 1):
        for w in all_words(n, d):
            if is_reduced(w, n):
                assert root_counting_length(w, n) == d == coxeter_length(word_to_perm(w, n))


@settings(max_examples=1000)
@given(st.integers(min_value=3, max_value=5), st.lists(st.integers(min_value=0, max_value=4), max_size=8))
def test_root_counting_length_random_words(n, letters):
    w = tuple(a % n for a in letters)
    assert root_counting_length(w, n) == coxeter_length(word_to_perm(w, n))


def test_braid_scalar():
    # z d_1 d_2 d_1 = d_2 d_1 d_2
    assert braid_scalar((1, 2, 1), (2, 1, 2), 3) == -1
    assert braid_scalar((2, 1, 2), (1, 2, 1), 3) == 1
    assert braid_scalar((1, 2, 0), (1, 2, 0), 3) == 0


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2)])
def test_omega(n, m):
    omega = omega_check(n, m)
    for j in range(n):
        assert omega.image(j) == ((j + m) % n, m % (n * m))


def test_omega_example_n3_m3():
    assert word_matrix((1, 2, 0, 1, 2, 0), 3, 3) == word_matrix((2, 0, 1, 2, 0, 1), 3, 3)


def test_monomial_matrix_inverse():
    for w in [(1, 2, 0, 1), (0,), (2, 1, 0, 2, 1)]:
        g = word_matrix(w, 3)
        assert (g * g.inverse()).is_identity()
        assert g.inverse() == word_matrix(tuple(reversed(w)), 3)
