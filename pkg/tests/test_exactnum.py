from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Poly, cyclotomic_poly, symbols

from exoticnc.exactnum import (
    ConductorMismatch,
    Cyclotomic,
    CyclotomicRing,
    FormalRing,
    FormalScalar,
    cyclotomic_arith,
    phi,
    quantum_binomial,
    quantum_factorial,
    quantum_integer,
    specialize,
)

from strategies import cyclotomics, formal_scalars


@pytest.mark.parametrize("N", [6, 12, 18, 24, 30, 36])
def test_xi_has_order_N(N):
    xi = Cyclotomic.xi(N)
    assert xi**N == 1
    for k in range(1, N):
        if N % k == 0:
            assert xi**k != 1


@pytest.mark.parametrize("N", [12, 18, 24])
def test_cyclotomic_polynomial_vanishes_at_xi(N):
    x = symbols("x")
    coeffs = Poly(cyclotomic_poly(N, x), x).all_coeffs()[::-1]
    total = Cyclotomic.zero(N)
    for k, c in enumerate(coeffs):
        total = total + Cyclotomic.xi(N, k) * int(c)
    assert total == 0
    assert phi(N) == len(coeffs) - 1


def test_zeta_for_n3_m2():
    R = CyclotomicRing(3, 2)
    zeta = R.zeta(1)
    assert zeta == Cyclotomic.xi(12) ** 2
    assert zeta**6 == 1
    assert zeta**3 == -1


def test_inverse_division_by_zero_and_conductor_mismatch():
    a = Cyclotomic.xi(12) + 2
    assert a * a.inv() == 1
    assert cyclotomic_arith(a, a, "inv") * a == 1
    assert cyclotomic_arith(a, a.inv(), "mul") == 1
    assert cyclotomic_arith(a, a, "eq") is True
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.zero(12).inv()
    with pytest.raises(ConductorMismatch):
        a + Cyclotomic.one(18)


@settings(max_examples=1000)
@given(cyclotomics(12), cyclotomics(12), cyclotomics(12))
def test_field_axioms_n12(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * a.inv() == 1
        assert (b / a) * a == b


@settings(max_examples=200)
@given(cyclotomics(18), cyclotomics(18))
def test_field_axioms_n18(a, b):
    assert a * (a + b) == a * a + a * b
    if b:
        assert (a / b) * b == a


@settings(max_examples=200)
@given(cyclotomics(24), st.integers(min_value=1, max_value=23))
def test_galois_is_a_ring_map(a, k):
    from math import gcd

    if gcd(k, 24) != 1:
        return
    b = a + Cyclotomic.xi(24, 5)
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert a.conj().conj() == a


def test_json_round_trip():
    a = Cyclotomic.from_coeffs(18, [Fraction(1, 3), 0, -2, 5])
    assert Cyclotomic.from_json(a.to_json()) == a
    s = FormalScalar({-3: Fraction(1, 2), 4: Fraction(-7)})
    assert FormalScalar.from_json(s.to_json()) == s


def test_specialize_examples():
    assert specialize(FormalScalar.const(1), 3, 2) == 1
    assert specialize(FormalScalar.z(6), 3, 2) == 1
    s = FormalScalar.const(1) + FormalScalar.z(3) + FormalScalar.z(6)
    R = CyclotomicRing(3, 2)
    direct = R.one() + R.z(3) + R.z(6)
    assert specialize(s, 3, 2) == direct == 1


@settings(max_examples=300)
@given(formal_scalars(), formal_scalars(), st.sampled_from([(3, 2), (3, 3), (4, 2), (3, 5)]))
def test_specialize_is_a_ring_map(a, b, nm):
    n, m = nm
    assert specialize(a * b, n, m) == specialize(a, n, m) * specialize(b, n, m)
    assert specialize(a + b, n, m) == specialize(a, n, m) + specialize(b, n, m)
    assert specialize(a.conj(), n, m) == specialize(a, n, m).conj()


def test_quantum_numbers_basics():
    R = FormalRing(3)
    assert quantum_integer(0, R) == 0
    assert quantum_integer(1, R) == 1
    assert quantum_binomial(5, 0, R) == 1
    assert quantum_binomial(2, 1, R) == R.q(1) + R.q(-1) == R.p(-3) + R.p(3)
    assert quantum_binomial(3, 4, R) == 0
    assert quantum_binomial(3, -1, R) == 0


@pytest.mark.parametrize("k", range(0, 8))
def test_quantum_binomial_matches_factorial_formula(k):
    R = FormalRing(3)
    for c in range(k + 1):
        lhs = quantum_binomial(k, c, R) * quantum_factorial(c, R) * quantum_factorial(k - c, R)
        assert lhs == quantum_factorial(k, R)


@pytest.mark.parametrize("k", range(0, 9))
def test_quantum_binomial_at_p_equal_one(k):
    R = FormalRing(3)
    for c in range(k + 1):
        assert quantum_binomial(k, c, R).evaluate(Fraction(1)) == comb(k, c)


def test_q_chu_vandermonde():
    R = FormalRing(3)
    for M in range(7):
        for N in range(7):
            for beta in range(7):
                lhs = R.zero()
                for j in range(beta + 1):
                    lhs = lhs + quantum_binomial(M, beta - j, R) * quantum_binomial(N, j, R) * R.q(j * (M + N))
                assert lhs == R.q(N * beta) * quantum_binomial(M + N, beta, R)


@pytest.mark.parametrize("m", range(2, 8))
def test_quantum_factorial_at_root_of_unity_is_m_times_unit(m):
    R = CyclotomicRing(3, m)
    val = (R.q(1) - R.q(-1)) ** (m - 1) * quantum_factorial(m - 1, R)
    u = val / m
    assert u**4 == 1


def test_specialized_quantum_binomial_agrees_with_formal():
    F = FormalRing(3)
    for m in (2, 3, 4):
        R = CyclotomicRing(3, m)
        for k in range(6):
            for c in range(k + 1):
                assert specialize(quantum_binomial(k, c, F), 3, m) == quantum_binomial(k, c, R)
