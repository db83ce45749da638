from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eisencusp.arith import QuadExt, divisors, euler_phi, mu_plus, prime_divisors
from eisencusp.characters import gauss_sum, n_psi, quad_char
from eisencusp.cusps import Cusp, CuspRep, LevelShape, enumerate_cusps, galois_orbit, level_shapes, rep_to_cusp
from eisencusp.eisenstein import (
    ConsistencyError,
    EisIndex,
    admissible_pairs,
    constant_term,
    constant_term_oracle,
    constant_term_table,
    cuspidal_order,
    delta_divisor,
    e_psi_constant_term,
    e_psi_constant_term_b2,
    edd_unit_check,
    eigenvalue,
    eis_qexp,
    eis_qexp_bracket,
    enumerate_H,
    h_count,
    ideal_generators,
    lambda_value,
    lseries_factorization_check,
    order_nml,
    period_lattice_g1,
    r_lattice,
    r_lattice_from_divisor,
    verify_eigenform,
)
from eisencusp.qseries import QExpansion

from conftest import shapes

S61 = LevelShape(6, 1)
S33 = LevelShape(3, 3)


def test_index_validation():
    with pytest.raises(ValueError):
        EisIndex(S61, 1, 6)
    with pytest.raises(ValueError):
        EisIndex(S61, 2, 2)
    with pytest.raises(ValueError):
        EisIndex(S33, 3, 1, 3)
    assert EisIndex(S33, 3, 3, 3).disc == -3


def test_enumerate_H_examples():
    got = {(i.M, i.L, i.f) for i in enumerate_H(S61)}
    assert got == {(6, 1, 1), (2, 3, 1), (3, 2, 1)}
    for p in (3, 5, 7, 11):
        assert len(enumerate_H(LevelShape(p, p), quadratic_only=False)) == p == h_count(p * p)
    got = {(i.M, i.L, i.f) for i in enumerate_H(S33)}
    assert got == {(3, 1, 1), (3, 3, 1), (3, 3, 3)}


@given(shapes(max_level=2000))
def test_full_count_matches_dimension(shape):
    assert len(enumerate_H(shape, quadratic_only=False)) == h_count(shape.N)
    assert len(admissible_pairs(shape)) == len(divisors(shape.N)) - 1


def test_qexp_examples():
    s = eis_qexp(EisIndex(S61, 6, 1), 20)
    assert s.coeff(5) == 6 and s.coeff(2) == 1 and s.coeff(1) == 1
    for idx in enumerate_H(LevelShape(15, 15)):
        assert eis_qexp(idx, 30).coeff(1) == 1


@given(shapes(max_level=300))
def test_bracket_equals_closed_form(shape):
    for idx in enumerate_H(shape):
        eis_qexp(idx, 150)  # raises ConsistencyError on mismatch


def test_eigenvalue_examples():
    idx = EisIndex(S61, 6, 1)
    assert eigenvalue(idx, 5) == 6
    assert eigenvalue(idx, 2) == 1
    for D in (3, 15, 35):
        for f in (1, 3, 5):
            if D % f == 0:
                idx = EisIndex(LevelShape(D, D), D, D, f)
                assert all(eigenvalue(idx, ell) == 0 for ell in prime_divisors(D))


def test_verify_eigenform_examples():
    for idx in enumerate_H(S61):
        assert verify_eigenform(idx, T=100, primes=(2, 3, 5, 7, 11, 13))
    assert verify_eigenform(EisIndex(S33, 3, 3, 3), T=100)


def test_verify_eigenform_detects_corruption():
    idx = EisIndex(S61, 2, 3)
    s = eis_qexp(idx, 13 * 50)
    rat = list(s.rat)
    rat[10] += 1
    bad = QExpansion(tuple(rat), s.irr, s.level, s.disc)
    res = verify_eigenform(idx, T=50, series=bad)
    assert not res and res.failure is not None


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_constant_term_prime_examples(p):
    idx = EisIndex(LevelShape(p, 1), p, 1)
    at_r1 = constant_term(idx, CuspRep(1, 1, 1, 1))
    at_rp = constant_term(idx, CuspRep(p, 1, 1, 1))
    assert at_r1 == Fraction(p - 1, 24)
    assert at_rp == -Fraction(p - 1, 24 * p)
    assert delta_divisor(idx).total() == 0


def test_constant_term_zero_without_f_in_t():
    for D in (15, 21, 35):
        shape = LevelShape(D, D)
        for f in (3, 5, 7):
            if D % f:
                continue
            idx = EisIndex(shape, D, f, f)
            for rep in enumerate_cusps(shape):
                if rep.t % f:
                    assert constant_term(idx, rep) == 0


@given(shapes(max_level=450))
def test_galois_equivariance(shape):
    for idx in enumerate_H(shape):
        for rep in enumerate_cusps(shape):
            v = constant_term(idx, rep)
            for other in galois_orbit(rep, shape):
                # alpha with alpha * x = other.x mod t
                alpha = next(a for a in range(1, rep.t * shape.D + 1)
                             if gcd(a, shape.D) == 1 and (a * rep.x - other.x) % rep.t == 0)
                assert constant_term(idx, other) == v * idx.psi(alpha)


@given(shapes(max_level=450))
def test_closed_form_matches_oracle(shape):
    for idx in enumerate_H(shape):
        closed = constant_term_table(idx, "closed")
        oracle = constant_term_table(idx, "oracle")
        assert closed.entries == oracle.entries
        assert delta_divisor(idx).total() == 0


def test_oracle_base_case():
    assert e_psi_constant_term(quad_char(1), Cusp(1, 0)) == Fraction(-1, 24)


@pytest.mark.parametrize("f", [3, 5, 7, 15, 21])
def test_base_case_matches_bernoulli_sum(f):
    psi = quad_char(f)
    shape = LevelShape(f, f)
    for rep in enumerate_cusps(shape):
        u = rep_to_cusp(rep, shape)
        assert e_psi_constant_term(psi, u) == e_psi_constant_term_b2(psi, u)
    # and a few non-reduced points of the same classes
    for a, c in [(1, 0), (f + 1, f), (2 * f - 1, f * f), (1, 1)]:
        u = Cusp(a, c)
        assert e_psi_constant_term(psi, u) == e_psi_constant_term_b2(psi, u)


def test_delta_support():
    for shape in level_shapes(200, odd_D=True):
        for idx in enumerate_H(shape):
            g = gcd(idx.M, idx.L)
            for rep, v in delta_divisor(idx).entries.items():
                allowed = gcd(rep.s, idx.f) == 1 and (rep.s * rep.t) % g == 0 and (rep.r * rep.s) % (shape.D // idx.M) == 0
                assert bool(v) == allowed


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_r_lattice_examples(p):
    idx = EisIndex(LevelShape(p, 1), p, 1)
    # lattice generators are defined up to sign
    assert abs(r_lattice(idx).to_rational()) == Fraction(p - 1, 24)
    D = p
    edd = EisIndex(LevelShape(D, D), D, D)
    assert r_lattice(edd) == Fraction(-1, 24) * euler_phi(D) * mu_plus(D) / D


@given(shapes(max_level=300))
def test_r_lattice_is_span_of_residues(shape):
    for idx in enumerate_H(shape):
        a, b = r_lattice(idx), r_lattice_from_divisor(idx)
        assert a == b or a == -b
        assert r_lattice(idx, gamma_one=True) == r_lattice(idx) * idx.f


def test_period_lattice_g1():
    idx = EisIndex(LevelShape(5, 1), 5, 1)
    first, second = period_lattice_g1(idx)
    assert first == Fraction(1, 1) and second == r_lattice(idx, True)
    idx3 = EisIndex(S33, 3, 3, 3)
    first, _ = period_lattice_g1(idx3)
    assert first.rat == 0 and first == gauss_sum(quad_char(3)) / 3


def test_cuspidal_order_examples():
    res = cuspidal_order(EisIndex(S33, 3, 3, 3))
    assert res.order == 1 and res.inverted == frozenset({3})
    for p in (5, 7, 11, 13, 37):
        res = cuspidal_order(EisIndex(LevelShape(p, 1), p, 1))
        assert res.inverted == frozenset({2})
        assert res.order == (p - 1) // gcd(24, p - 1)


def test_order_nml_examples():
    assert order_nml(11, 1, LevelShape(11, 1)) == 5
    assert order_nml(7, 7, LevelShape(7, 7)) == 2
    assert order_nml(15, 1, LevelShape(15, 1)) == 1
    with pytest.raises(ValueError):
        order_nml(6, 1, LevelShape(6, 1))


def test_ideal_generators():
    idx = EisIndex(LevelShape(15, 15), 15, 15, 3)
    assert list(ideal_generators(idx, [3, 5])) == [(3, 0), (5, 0)]
    assert (5, 6) in list(ideal_generators(EisIndex(S61, 6, 1), [2, 3, 5]))
    assert len(ideal_generators(idx, [])) == 0


def test_lseries_examples():
    for idx in enumerate_H(S61):
        assert lseries_factorization_check(idx, quad_char(5), 500)
    assert lseries_factorization_check(EisIndex(LevelShape(7, 1), 7, 1), quad_char(1), 300)
    with pytest.raises(ValueError):
        lseries_factorization_check(EisIndex(S61, 6, 1), quad_char(3), 10)


def test_lambda_examples():
    idx = EisIndex(LevelShape(5, 1), 5, 1)
    chi = quad_char(3)
    # -(chi(-1)/2)(1 - chi(5)) B^2 = (1/2)(2)(1/9)
    assert lambda_value(idx, chi) == Fraction(1, 9)
    assert lambda_value(idx, quad_char(1)) == 0
    assert lambda_value(EisIndex(LevelShape(7, 1), 7, 1), quad_char(3)) == 0  # chi_3(7) = 1


def _L(chi_fn, F, s):
    if s == 1:
        return -sum(chi_fn(a) * mpmath.digamma(mpmath.mpf(a) / F) for a in range(1, F)) / F
    return mpmath.dirichlet(s, [chi_fn(a) for a in range(F)])


@pytest.mark.parametrize(
    "D, C, M, L, f, fchi",
    [(5, 1, 5, 1, 1, 3), (7, 7, 7, 7, 7, 1), (15, 15, 15, 15, 5, 7), (3, 3, 3, 3, 3, 5), (35, 1, 5, 7, 1, 3)],
)
def test_lambda_matches_numeric(D, C, M, L, f, fchi):
    # tau(chi) L(E, chi, 1) / (2 pi i), with L(E, chi, s) assembled from its Euler factors
    mpmath.mp.dps = 30
    idx = EisIndex(LevelShape(D, C), M, L, f)
    chi, psi = quad_char(fchi), idx.psi
    cp = quad_char(fchi * f)
    F = cp.conductor
    euler = mpmath.mpf(1)
    for p in prime_divisors(M // f):
        euler *= 1 - cp(p)
    for p in prime_divisors(L // f):
        euler *= 1 - mpmath.mpf(cp(p)) / p
    val = euler * _L(cp, F, 0) * _L(cp, F, 1)
    tau = sum(chi(a) * mpmath.exp(2j * mpmath.pi * a / fchi) for a in range(fchi)) if fchi > 1 else 1
    numeric = tau * val / (2j * mpmath.pi)
    exact = lambda_value(idx, chi).to_complex()
    assert abs(complex(numeric) - exact) < 1e-12


@pytest.mark.parametrize("D", [5, 7, 15, 21, 35])
def test_edd_units(D):
    assert edd_unit_check(LevelShape(D, D))
    with pytest.raises(ValueError):
        edd_unit_check(LevelShape(D, 1))


def test_consistency_error_is_assertion():
    assert issubclass(ConsistencyError, AssertionError)
    assert eis_qexp_bracket(EisIndex(S61, 6, 1), 10).level == 6
