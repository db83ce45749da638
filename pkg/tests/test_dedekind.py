import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eisencusp.arith import euler_phi, nu
from eisencusp.cusps import LevelShape
from eisencusp.dedekind import (
    IDENTITY,
    S_MATRIX,
    T_MATRIX,
    ConvergenceError,
    GammaElement,
    congruence_check,
    dedekind_sum,
    numeric_period,
    rademacher_phi,
    random_gamma0,
    reciprocity_check,
    two_part_case_congruence,
    two_part_check,
    xi,
    xi_homomorphism_check,
)

coprime = st.tuples(st.integers(-3000, 3000), st.integers(1, 3000)).filter(lambda p: gcd(*p) == 1)


def test_dedekind_examples():
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(1, 2) == 0
    assert all(dedekind_sum(h, 1) == 0 for h in range(-3, 4))
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)
    with pytest.raises(ValueError):
        dedekind_sum(1, 3, mode="slow")


@given(coprime)
def test_brute_equals_fast(hk):
    h, k = hk
    assert dedekind_sum(h, k, "brute") == dedekind_sum(h, k, "fast")


@given(coprime)
def test_odd_and_periodic(hk):
    h, k = hk
    s = dedekind_sum(h, k)
    assert dedekind_sum(-h, k) == -s
    assert dedekind_sum(h + k, k) == s
    assert (6 * k * s).denominator == 1


def test_reciprocity_examples():
    assert reciprocity_check(1, 3)
    assert reciprocity_check(1, 1)
    assert reciprocity_check(5, 7)


@given(coprime.filter(lambda p: p[0] > 0))
def test_reciprocity_property(hk):
    assert reciprocity_check(*hk)


def test_congruence_examples():
    assert 12 * 3 * dedekind_sum(1, 3) == 2
    assert congruence_check(1, 3)
    assert congruence_check(1, 1)
    assert congruence_check(2, 5)
    with pytest.raises(ValueError):
        congruence_check(1, 4)


@given(coprime.filter(lambda p: p[1] % 2))
def test_congruence_property(hk):
    assert congruence_check(*hk)


def test_gamma_element():
    with pytest.raises(ValueError):
        GammaElement(1, 1, 1, 1)
    g = GammaElement(2, 1, 5, 3)
    assert g @ g.inverse() == IDENTITY
    assert GammaElement.parse("2, 1, 5, 3") == g
    assert (-g).as_tuple() == (-2, -1, -5, -3)
    with pytest.raises(ValueError):
        GammaElement.parse("1,2,3")


def test_phi_examples():
    for b in (-4, 0, 1, 9):
        assert rademacher_phi(GammaElement(1, b, 0, 1)) == b
    assert rademacher_phi(S_MATRIX) == 0
    for N in (2, 5, 6, 15):
        assert rademacher_phi(GammaElement(1, 0, N, 1)) == Fraction(2, N) - 12 * dedekind_sum(1, N)


def test_phi_invariant_under_negation():
    rng = random.Random(5)
    for _ in range(200):
        g = random_gamma0(1, 500, rng)
        assert rademacher_phi(g) == rademacher_phi(-g)


def test_xi_examples():
    s6 = LevelShape(6, 1)
    assert xi(6, s6, T_MATRIX) == -2
    for M in (2, 3):
        assert xi(M, s6, T_MATRIX) == 0
    assert xi(6, s6, IDENTITY) == 0
    with pytest.raises(ValueError):
        xi(6, s6, GammaElement(1, 0, 5, 1))
    with pytest.raises(ValueError):
        xi(4, s6, T_MATRIX)


@pytest.mark.parametrize("D, C", [(6, 1), (15, 1), (21, 1), (33, 1), (15, 3), (35, 5)])
def test_xi_homomorphism(D, C):
    shape = LevelShape(D, C)
    rng = random.Random(D * 100 + C)
    Ms = [m for m in range(2, D + 1) if D % m == 0]
    for i in range(150):
        g1 = random_gamma0(shape.N, 40 * shape.N, rng)
        g2 = random_gamma0(shape.N, 40 * shape.N, rng)
        assert xi_homomorphism_check(Ms[i % len(Ms)], shape, g1, g2)
    assert xi(D, shape, GammaElement(1, 2, 0, 1)) == 2 * xi(D, shape, T_MATRIX)


@pytest.mark.parametrize("D", [15, 21, 35, 105])
def test_xi_c_zero_closed_form(D):
    shape = LevelShape(D, 1)
    sgn = (-1) ** (nu(D) - 1)
    for b in (-3, 1, 7):
        for d in (1, -1):
            g = GammaElement(d, b, 0, d)
            assert xi(D, shape, g) == d * b * sgn * euler_phi(D)
            for M in (m for m in range(2, D) if D % m == 0):
                assert xi(M, shape, g) == 0


def test_two_part_examples():
    shape = LevelShape(15, 1)
    for b in (1, 2, 5):
        assert xi(15, shape, GammaElement(1, b, 0, 1)) == -8 * b
        assert xi(15, shape, GammaElement(-1, b, 0, -1)) == 8 * b
        assert two_part_check(15, shape, GammaElement(1, b, 0, 1))
        assert xi(3, shape, GammaElement(1, b, 0, 1)) == 0
    rng = random.Random(3)
    seen = 0
    while seen < 100:
        g = random_gamma0(15, 3000, rng)
        if g.c % 2 == 0:
            continue
        seen += 1
        v = xi(3, shape, g)
        assert v.denominator % 2 == 1 and v.numerator % 8 == 0
    with pytest.raises(ValueError):
        two_part_check(6, LevelShape(6, 1), T_MATRIX)
    with pytest.raises(ValueError):
        two_part_check(5, LevelShape(5, 1), T_MATRIX)


@pytest.mark.parametrize("D, C", [(15, 1), (21, 3), (35, 1), (105, 1), (33, 1), (39, 1)])
def test_two_part_random(D, C):
    shape = LevelShape(D, C)
    rng = random.Random(D + C)
    Ms = [m for m in range(2, D + 1) if D % m == 0]
    for i in range(200):
        g = random_gamma0(shape.N, 50 * shape.N, rng)
        M = Ms[i % len(Ms)]
        assert two_part_check(M, shape, g)
        rep = two_part_case_congruence(M, shape, g)
        if rep.case != "I.3":
            assert rep, (M, g, rep)


def test_displayed_even_c_congruence_counterexample():
    # the per-case congruence for M = D, c even fails when phi(D) has 2-adic valuation 2;
    # the 2-adic conclusion itself still holds
    shape = LevelShape(21, 1)
    g = GammaElement(-209, -423, 42, 85)
    assert xi(21, shape, g) == 60
    assert two_part_check(21, shape, g)
    rep = two_part_case_congruence(21, shape, g)
    assert rep.case == "I.3" and not rep


def test_numeric_period_example():
    shape = LevelShape(6, 1)
    g = GammaElement(1, 0, 6, 1)
    val = numeric_period(6, shape, g, terms=2000)
    assert abs(val - complex(xi(6, shape, g) / 24)) < 1e-6
    with pytest.raises(ValueError):
        numeric_period(6, shape, T_MATRIX)
    with pytest.raises(ValueError):
        numeric_period(6, shape, g, terms=100)


def test_numeric_period_convergence_error():
    shape = LevelShape(6, 1)
    g = GammaElement(1, 0, 6000, 1)
    with pytest.raises(ConvergenceError):
        numeric_period(6, shape, g, terms=2000)


@given(st.sampled_from([1, 6, 15, 35]), st.integers(0, 2**32))
def test_random_gamma0_in_group(N, seed):
    rng = random.Random(seed)
    g = random_gamma0(N, 10 * N, rng)
    assert g.a * g.d - g.b * g.c == 1 and g.c % N == 0
    assert max(abs(g.c), abs(g.d)) <= 10 * N


def test_random_gamma0_small_height():
    rng = random.Random(0)
    for _ in range(100):
        assert random_gamma0(15, 15, rng).c in (0, 15, -15)
    a = random_gamma0(35, 10_000, random.Random(1))
    b = random_gamma0(35, 10_000, random.Random(2))
    assert a != b
    with pytest.raises(ValueError):
        random_gamma0(10, 5, rng)
