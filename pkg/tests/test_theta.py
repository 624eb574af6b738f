import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import rand_sl2z, rand_sl2z_bounded
from mtx.cocycle import sqrt_branch
from mtx.errors import DomainError, InvalidParams, KindMismatch, PoleAtZ
from mtx.exactmat import H_MINUS1, Mat2, OMEGA, u, u_minus
from mtx.exactphase import UnitCircleExact as UCE
from mtx.metagroup import meta_lift, meta_mul
from mtx.multiplier import lambda_bar_chi
from mtx.numth import char_mod4, legendre_char, trivial_char
from mtx.theta import (
    DEFAULT_TOL,
    MIN_IM,
    ThetaSpec,
    eta,
    eta_cutoff,
    gamma2_sign,
    j_delta,
    j_kappa,
    kappa_for,
    slash,
    slash_pm,
    theta_matrix_pm,
    theta_series,
    theta_vector,
    theta_vector_pm,
    theta_vector_pm_slash,
    theta_vector_slash,
    truncation_cutoff,
)

TRIV = trivial_char()
CHI3 = legendre_char(3)
CHI4 = char_mod4()

THETA_AT_I = 1.0864348112133082
ETA_AT_I = 0.7682254223260566
MINUS_AT_I = 0.9135791381561168

ZS = (0.31 + 0.8j, -1.2 + 0.33j, 2.5 + 4.1j, 0.17 + 0.06j)
ZS_BOTH = ZS + (0.4 - 0.9j, -0.8 - 0.25j)


def _rand_eps(rng):
    return UCE.of(Fraction(rng.randrange(8), 4))


def _rand_pm_lift(rng):
    x = meta_lift("bar", rand_sl2z(rng), _rand_eps(rng))
    if rng.random() < 0.5:
        x = meta_mul(meta_lift("bar", H_MINUS1), x)
    return x


# -- series evaluation --------------------------------------------------------------


def _theta_half_bruteforce(z, m):
    # independent of the numpy kernel on purpose
    return sum(cmath.exp(1j * math.pi * z * n * n) for n in range(-m, m + 1))


def _eta_bruteforce(z, m):
    q = cmath.exp(2j * math.pi * z)
    val = cmath.exp(1j * math.pi * z / 12.0)
    for n in range(1, m + 1):
        val *= 1.0 - q ** n
    return val


def test_theta_half_matches_bruteforce_at_i():
    spec = ThetaSpec("plain", 1, TRIV, 1)
    got = theta_series(spec, 1j)
    ref = _theta_half_bruteforce(1j, 2 * truncation_cutoff(1, 1.0, DEFAULT_TOL))
    assert abs(got - ref) < 1e-12
    assert abs(got - THETA_AT_I) < 1e-12
    assert abs(got.imag) < 1e-14


def test_eta_matches_bruteforce_at_i():
    got = eta(1j)
    ref = _eta_bruteforce(1j, 2 * eta_cutoff(1.0, DEFAULT_TOL))
    assert abs(got - ref) < 1e-12
    assert abs(got - ETA_AT_I) < 1e-12


def test_minus_and_fermionic_agree_at_i():
    m = theta_series(ThetaSpec("minus", 1, TRIV, 1), 1j)
    f = theta_series(ThetaSpec("fermionic", 1, TRIV, 1), 1j)
    assert abs(m - MINUS_AT_I) < 1e-12
    assert abs(f - MINUS_AT_I) < 1e-12


def test_doubling_the_cutoff_does_not_move_the_value():
    spec = ThetaSpec("plain", 1, TRIV, 1)
    for z in (0.1 + 0.05j, 0.7 + 1.3j):
        m = truncation_cutoff(1, z.imag, DEFAULT_TOL)
        assert abs(theta_series(spec, z, cutoff=m) - theta_series(spec, z, cutoff=2 * m)) < 1e-12
    for z in (0.2 + 0.08j, -0.4 + 2.0j):
        m = eta_cutoff(z.imag, DEFAULT_TOL)
        assert abs(eta(z, cutoff=m) - eta(z, cutoff=2 * m + 4)) < 1e-12


def test_spec_validation():
    with pytest.raises(InvalidParams):
        ThetaSpec("sideways", 1, TRIV, 1)
    with pytest.raises(InvalidParams):
        ThetaSpec("plain", 2, TRIV, 1)
    with pytest.raises(InvalidParams):
        ThetaSpec("plain", 1, TRIV, 0)
    with pytest.raises(InvalidParams):
        ThetaSpec("plain", 1, CHI3, 1)  # odd character with kappa=1
    with pytest.raises(InvalidParams):
        ThetaSpec("plain", 3, TRIV, 1)  # even character with kappa=3
    with pytest.raises(InvalidParams):
        ThetaSpec("fermionic", 3, CHI4, 1)  # even modulus has no half-shift


def test_kappa_for_parity():
    assert kappa_for(TRIV) == 1
    assert kappa_for(CHI3) == 3
    assert kappa_for(CHI4) == 3


def test_domain_guard_rails():
    spec = ThetaSpec("plain", 1, TRIV, 1)
    with pytest.raises(DomainError):
        theta_series(spec, 0.3 + 1e-4j)
    with pytest.raises(DomainError):
        theta_series(spec, 0.3 + 1.0j, tol=1e-18)
    with pytest.raises(DomainError):
        theta_series(spec, 2e6 + 1.0j)
    with pytest.raises(DomainError):
        eta(0.3 - 1.0j)
    with pytest.raises(DomainError):
        truncation_cutoff(1, -0.5, 1e-12)
    with pytest.raises(DomainError):
        eta_cutoff(0.0, 1e-12)


def test_fermionic_periodicity():
    spec = ThetaSpec("fermionic", 1, TRIV, 1)
    for z in ZS:
        v = theta_series(spec, z)
        assert abs(theta_series(spec, z + 8) - v) < 1e-12 * max(1.0, abs(v))
        assert abs(theta_series(spec, z + 4) + v) < 1e-12 * max(1.0, abs(v))


def test_eta_translation_and_inversion():
    for z in ZS:
        lhs = eta(z + 1)
        assert abs(lhs - cmath.exp(1j * math.pi / 12.0) * eta(z)) < 1e-12 * abs(lhs)
        lhs = eta(-1.0 / z)
        assert abs(lhs - cmath.sqrt(-1j * z) * eta(z)) < 1e-11 * abs(lhs)


def test_weight_three_halves_theta_is_an_eta_cube():
    spec = ThetaSpec("plain", 3, CHI4, 1)
    for z in ZS:
        lhs = theta_series(spec, z)
        rhs = 2.0 * eta(4.0 * z) ** 3
        assert abs(lhs - rhs) < 1e-12 * abs(rhs)


def test_triple_product_is_an_eta_cube():
    # the t=2 family at z/2, i.e. the classical triple product at z itself
    for z in (0.31 + 0.8j, -1.2 + 0.33j, 2.5 + 4.1j, 0.6 + 0.21j):
        half = z / 2.0
        prod = (
            theta_series(ThetaSpec("minus", 1, TRIV, 2), half)
            * theta_series(ThetaSpec("plain", 1, TRIV, 2), half)
            * theta_series(ThetaSpec("fermionic", 1, TRIV, 2), half)
        )
        rhs = 2.0 * eta(z) ** 3
        assert abs(prod - rhs) < 1e-10 * abs(rhs)


# -- automorphy factors --------------------------------------------------------------


def test_j_kappa_on_triangular_matrices():
    x = meta_lift("bar", Mat2(4, 1, 0, Fraction(1, 4)))
    for z in ZS:
        assert abs(j_kappa(x, z, 1) - 0.5) < 1e-14
        # kappa = 3 multiplies by (cz + d) once more
        assert abs(j_kappa(x, z, 3) - 0.125) < 1e-14


def test_j_kappa_at_the_reflection_is_one():
    x = meta_lift("bar", H_MINUS1)
    for z in ZS_BOTH:
        assert abs(j_kappa(x, z, 1) - 1.0) < 1e-12
        assert np.abs(j_delta(x, z, "+") - np.eye(2)).max() < 1e-12
        assert np.abs(j_delta(x, z, "-") - np.eye(2)).max() < 1e-12


def test_j_square_law():
    rng = random.Random(20)
    for _ in range(60):
        x = _rand_pm_lift(rng)
        g = x.g
        for z in (0.31 + 0.8j, 0.4 - 0.9j):
            root = j_kappa(x, z, 1) * x.eps.to_complex()
            expect = float(g.det()) * (complex(g.c) * z + complex(g.d))
            assert abs(root * root - expect) < 1e-12 * max(1.0, abs(expect))


def test_j_kappa_chain_rule():
    rng = random.Random(21)
    for _ in range(60):
        x, y = _rand_pm_lift(rng), _rand_pm_lift(rng)
        for z in (0.31 + 0.8j, -0.8 - 0.25j):
            wz = y.g.act(z)
            lhs = j_kappa(meta_mul(x, y), z, 3)
            rhs = j_kappa(x, wz, 3) * j_kappa(y, z, 3)
            assert abs(lhs - rhs) < 1e-11 * max(1.0, abs(rhs))


def test_j_delta_chain_rule():
    rng = random.Random(22)
    for _ in range(40):
        x, y = _rand_pm_lift(rng), _rand_pm_lift(rng)
        for z in (0.31 + 0.8j, 0.4 - 0.9j):
            wz = y.g.act(z)
            for delta in ("+", "-"):
                lhs = j_delta(meta_mul(x, y), z, delta)
                rhs = j_delta(x, wz, delta) @ j_delta(y, z, delta)
                assert np.abs(lhs - rhs).max() < 1e-11 * max(1.0, np.abs(rhs).max())


def test_j_validation():
    x = meta_lift("bar", OMEGA)
    with pytest.raises(PoleAtZ):
        j_kappa(x, 0.0)
    with pytest.raises(InvalidParams):
        j_kappa(x, 1j, 2)
    with pytest.raises(KindMismatch):
        j_kappa(meta_lift("tilde", OMEGA), 1j)
    with pytest.raises(InvalidParams):
        j_delta(x, 1j, "x")
    with pytest.raises(KindMismatch):
        j_delta(meta_lift("tilde", OMEGA), 1j)
    with pytest.raises(DomainError):
        slash(ThetaSpec("plain", 1, TRIV, 1), meta_lift("bar", H_MINUS1), 1j)
    with pytest.raises(KindMismatch):
        slash(ThetaSpec("plain", 1, TRIV, 1), meta_lift("tilde", OMEGA), 1j)


# -- the even-level sheet sign --------------------------------------------------------


def test_level_four_sheet_sign():
    spec = ThetaSpec("plain", 3, CHI4, 1)
    # c = 0 mod 2*16: the printed transformation holds with sign +1
    plus = meta_lift("bar", u_minus(32))
    # c = 16 mod 32: the multiplier picks up the extra sign (-1)^(c/16)
    minus = meta_lift("bar", Mat2(9, -14, -16, 25))
    for z in (0.31 + 0.8j, 0.17 + 0.6j):
        base = theta_series(spec, z)
        got = slash(spec, plus, z) / (lambda_bar_chi(plus, CHI4).to_complex() * base)
        assert abs(got - 1.0) < 1e-9
        got = slash(spec, minus, z) / (lambda_bar_chi(minus, CHI4).to_complex() * base)
        assert abs(got + 1.0) < 1e-9


# -- vectors and the two-component series ---------------------------------------------


def test_theta_vector_agrees_with_slashed_vector():
    for n, chi, kappa in ((1, None, 1), (2, None, 1), (3, CHI3, 3)):
        for z in (0.31 + 0.8j, -1.2 + 0.33j, 0.6 + 2.2j):
            a = theta_vector(n, chi, kappa, z)
            b = theta_vector_slash(n, chi, kappa, z)
            assert a.shape == b.shape == ((3,) if n % 2 else (2,))
            assert np.abs(a - b).max() < 1e-10 * max(1.0, np.abs(a).max())


def test_pm_matrix_layout():
    z = 0.31 + 0.8j
    m = theta_matrix_pm(TRIV, "+", z)
    assert m[0, 1] == 0 and m[1, 0] == 0
    assert abs(m[0, 0] - theta_series(ThetaSpec("plain", 1, TRIV, 1), z)) == 0
    assert abs(m[1, 1] - theta_series(ThetaSpec("plain", 1, TRIV, 1), -z.conjugate())) == 0
    low = theta_matrix_pm(TRIV, "+", z.conjugate())
    assert low[0, 0] == 0 and low[1, 1] == 0
    assert abs(low[0, 1] - theta_series(ThetaSpec("plain", 1, TRIV, 1), -z.conjugate())) == 0


def test_pm_swap_law_is_exact():
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    for chi, delta in ((TRIV, "+"), (CHI3, "-")):
        for z in (0.31 + 0.8j, -0.6 + 1.5j, 0.4 - 0.9j):
            lhs = theta_matrix_pm(chi, delta, -z)
            rhs = theta_matrix_pm(chi, delta, z) @ swap
            assert np.array_equal(lhs, rhs)


def test_theta_vector_pm_agrees_with_slashed_form():
    for n, chi, delta in ((1, TRIV, "+"), (3, CHI3, "-")):
        k = 3 if n % 2 else 2
        for z in (0.31 + 0.8j, 0.4 - 0.9j):
            a = theta_vector_pm(n, chi, delta, z)
            b = theta_vector_pm_slash(n, chi, delta, z)
            assert a.shape == b.shape == (2, 2 * k)
            assert np.abs(a - b).max() < 1e-10 * max(1.0, np.abs(a).max())


def test_pm_validation():
    with pytest.raises(InvalidParams):
        theta_matrix_pm(TRIV, "x", 1j)
    with pytest.raises(DomainError):
        theta_matrix_pm(TRIV, "+", 0.5 + 1e-4j)


# -- the eta^12 sign character ---------------------------------------------------------


def test_eta_twelfth_power_law():
    rng = random.Random(23)
    z = 0.05 + 1.5j
    base = eta(z) ** 12
    checked = draws = 0
    while checked < 25 and draws < 300:
        draws += 1
        g = rand_sl2z_bounded(rng, 20)
        wz = g.act(z)
        if wz.imag < 2 * MIN_IM:
            continue
        czd = complex(g.c) * z + complex(g.d)
        lhs = eta(wz) ** 12
        rhs = czd ** 6 * base * gamma2_sign(g).as_sign()
        assert abs(lhs - rhs) < 1e-9 * abs(rhs)
        checked += 1
    assert checked == 25
    assert gamma2_sign(u(1)).as_sign() == -1
    assert gamma2_sign(OMEGA).as_sign() == -1
