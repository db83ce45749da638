import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eisencusp.arith import QuadExt
from eisencusp.characters import (
    b2_double_sum,
    gauss_disc,
    gauss_sum,
    n_psi,
    product_character,
    quad_char,
)

CONDUCTORS = [1, 3, 5, 7, 11, 13, 15, 21, 33, 35, 105]


def test_quad_char_examples():
    one = quad_char(1)
    assert all(one(n) == 1 for n in range(-5, 20))
    psi3 = quad_char(3)
    assert psi3(2) == -1 and psi3(3) == 0
    assert quad_char(15)(2) == 1


@pytest.mark.parametrize("f", [0, 2, 4, 9, 12, -3])
def test_quad_char_rejects(f):
    with pytest.raises(ValueError):
        quad_char(f)


def test_eval_on_rationals():
    assert quad_char(1).eval(Fraction(22, 7)) == 1
    psi = quad_char(3)
    assert psi.eval(2) == -1
    assert psi.eval(Fraction(4, 5)) == -1
    with pytest.raises(ValueError):
        psi.eval(Fraction(2, 3))


def test_gauss_disc_examples():
    assert gauss_disc(quad_char(1)) == 1
    assert gauss_disc(quad_char(3)) == -3
    assert gauss_disc(quad_char(5)) == 5


@pytest.mark.parametrize("f", CONDUCTORS[1:])
def test_gauss_sum_numeric(f):
    # the symbolic generator squares to the same number as the actual Gauss sum
    psi = quad_char(f)
    tau = sum(psi(a) * cmath.exp(2j * cmath.pi * a / f) for a in range(f))
    assert abs(tau * tau - gauss_disc(psi)) < 1e-9
    assert abs(gauss_sum(psi).to_complex() - tau) < 1e-9


def test_n_psi_examples():
    assert n_psi(quad_char(1)) == QuadExt(Fraction(-1, 24))
    assert n_psi(quad_char(3)) == QuadExt(0, Fraction(-1, 9), -3)
    assert b2_double_sum(quad_char(3)) == Fraction(-4, 9)


@pytest.mark.parametrize("f", CONDUCTORS[1:])
def test_g_over_f_npsi_is_rational(f):
    psi = quad_char(f)
    u = gauss_sum(psi) / (n_psi(psi) * f)
    assert u.is_rational()
    if f == 3:
        assert u == -3


@pytest.mark.parametrize("f", CONDUCTORS)
def test_parity_is_value_at_minus_one(f):
    psi = quad_char(f)
    assert psi.parity == psi(-1)


@given(st.sampled_from(CONDUCTORS), st.integers(-300, 300), st.integers(-300, 300))
def test_multiplicative_and_periodic(f, m, n):
    psi = quad_char(f)
    assert psi(m * n) == psi(m) * psi(n)
    assert psi(m + f) == psi(m)


def test_product_character():
    assert product_character(quad_char(3), quad_char(5)) == quad_char(15)
    with pytest.raises(ValueError):
        product_character(quad_char(3), quad_char(15))
