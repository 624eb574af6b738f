import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mtx.exactphase import I_UNIT, MINUS_ONE, ONE, UnitCircleExact as UCE

rational = st.fractions(min_value=-8, max_value=8, max_denominator=48)


@given(rational, rational)
def test_product_adds_exponents(q1, q2):
    assert UCE.of(q1) * UCE.of(q2) == UCE.of(q1 + q2)


@given(rational)
def test_inverse_and_conjugate_coincide(q):
    x = UCE.of(q)
    assert x.inv() == x.conj()
    assert (x * x.inv()).is_one()


@given(rational, st.integers(min_value=-7, max_value=7))
def test_integer_powers(q, n):
    x = UCE.of(q)
    expected = ONE
    for _ in range(abs(n)):
        expected = expected * (x if n >= 0 else x.inv())
    assert x ** n == expected


@given(rational)
def test_to_complex_is_unit_modulus_exponential(q):
    z = UCE.of(q).to_complex()
    assert abs(abs(z) - 1.0) < 1e-15
    assert abs(z - cmath.exp(1j * cmath.pi * float(Fraction(q) % 2))) < 1e-12


def test_normalization_mod_two():
    assert UCE.of(Fraction(5, 2)) == UCE.of(Fraction(1, 2))
    assert UCE.of(-1) == MINUS_ONE
    assert UCE.of(Fraction(-1, 4)) == UCE.of(Fraction(7, 4))


def test_axis_values_are_exact():
    assert ONE.to_complex() == 1 + 0j
    assert MINUS_ONE.to_complex() == -1 + 0j
    assert I_UNIT.to_complex() == 1j
    assert UCE.i_power(3).to_complex() == -1j


def test_i_power_and_eighth_tables():
    assert [UCE.i_power(k) for k in range(4)] == [ONE, I_UNIT, MINUS_ONE, UCE.of(Fraction(3, 2))]
    assert UCE.i_power(4) == ONE
    assert UCE.eighth(8) == ONE
    assert UCE.eighth(-1) == UCE.of(Fraction(7, 4))


def test_from_sign_and_as_sign():
    assert UCE.from_sign(1) is not None and UCE.from_sign(1).as_sign() == 1
    assert UCE.from_sign(-1).as_sign() == -1
    with pytest.raises(ValueError):
        UCE.from_sign(0)
    with pytest.raises(ValueError):
        I_UNIT.as_sign()


def test_division():
    a, b = UCE.of(Fraction(3, 4)), UCE.of(Fraction(1, 3))
    assert a / b == UCE.of(Fraction(3, 4) - Fraction(1, 3))


def test_rejects_irrational_exponent():
    with pytest.raises(TypeError):
        UCE(0.25)  # float exponents are ambiguous; Fraction is required
