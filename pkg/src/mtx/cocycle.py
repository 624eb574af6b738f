"""Metaplectic 2-cocycles on SL2(R) and GL2(R).

Three models of the same extension class are provided:

* ``tilde`` -- mu8-valued, from the Weil-index normalization;
* ``bar``   -- {+-1}-valued, obtained by twisting ``tilde`` with m_weil;
* ``hat``   -- circle-valued, the coboundary attached to the point z0 = i
               on the upper half plane.

All branch cuts go through ``arg_wrap`` (range [-pi, pi)), so sqrt(-1) = -i.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

from .errors import DomainError, SingularMatrix, ZeroInput
from .exactmat import Mat2
from .exactphase import UnitCircleExact
from .numth import hilbert_real, sign

Kind = str  # "bar" | "tilde" | "hat"


def _norm_kind(kind: str) -> str:
    k = kind.lower()
    if k not in ("bar", "tilde", "hat"):
        raise ValueError(f"unknown cocycle kind {kind!r}")
    return k


# -- branch conventions -------------------------------------------------------


def arg_wrap(w: complex) -> float:
    """Argument in [-pi, pi): the boundary value +pi is folded to -pi."""
    if w == 0:
        raise ZeroInput("arg of 0")
    t = cmath.phase(complex(w))
    if t == math.pi:
        t = -math.pi
    return t


def sqrt_branch(w: complex) -> complex:
    """|w|^{1/2} e^{i Arg(w)/2} with Arg in [-pi, pi); sqrt(-1) = -i.

    Implemented through the principal square root (exact on the axes), with
    the Arg = +pi/2 boundary folded to -pi/2."""
    w = complex(w)
    if w == 0:
        raise ZeroInput("sqrt of 0")
    r = cmath.sqrt(w)
    if r.real < 0.0 or (r.real == 0.0 and r.imag > 0.0):
        r = -r
    return r


def x_sign(g: Mat2) -> int:
    """sgn(c), falling back to sgn(d) on the parabolic locus c = 0."""
    return sign(g.d) if g.c == 0 else sign(g.c)


# -- elementary factors -------------------------------------------------------


@lru_cache(maxsize=4096)
def m_weil(g: Mat2, psi_sign: int = 1) -> UnitCircleExact:
    """Normalizing mu8-factor relating the bar and tilde models.

    On matrices of determinant != 1 the value is taken at the determinant-one
    part of the scaling split.
    """
    if g.det() != 1:
        _, g = gl_split(g)
    if g.c == 0:
        return UnitCircleExact.eighth(psi_sign * (1 - sign(g.d)))
    return UnitCircleExact.eighth(-psi_sign * sign(g.c))


def gamma_psi_half(y, psi_sign: int = 1) -> UnitCircleExact:
    """Weil index gamma(y, psi^{1/2}) = e^{i pi e (sgn y - 1)/4}."""
    if y == 0:
        raise ZeroInput("gamma needs y != 0")
    return UnitCircleExact.eighth(psi_sign * (sign(y) - 1))


# -- SL2 cocycles -------------------------------------------------------------


def c_bar(g1: Mat2, g2: Mat2) -> int:
    """Sign-valued cocycle (x1, x2)_R (-x1 x2, x3)_R."""
    # only the bottom row of g1 g2 matters; skip the full product
    c3 = g1.c * g2.a + g1.d * g2.c
    x3 = sign(g1.c * g2.b + g1.d * g2.d) if c3 == 0 else sign(c3)
    x1, x2 = x_sign(g1), x_sign(g2)
    return hilbert_real(x1, x2) * hilbert_real(-x1 * x2, x3)

def c_tilde(g1: Mat2, g2: Mat2, psi_sign: int = 1) -> UnitCircleExact:
    """mu8-valued cocycle e^{i pi e sgn(c1 c2 c3)/4} (c3 from the product)."""
    c3 = g1.c * g2.a + g1.d * g2.c
    return UnitCircleExact.eighth(psi_sign * sign(g1.c) * sign(g2.c) * sign(c3))


def epsilon_ratio(g: Mat2, z_prime: complex, z: complex) -> complex:
    """e^{i[Arg((c z'+d)^{1/2}) - Arg((c z+d)^{1/2})]}."""
    c, d = complex(g.c), complex(g.d)
    return cmath.exp(0.5j * (arg_wrap(c * z_prime + d) - arg_wrap(c * z + d)))


def c_hat(g1: Mat2, g2: Mat2, z: complex = 1j) -> complex:
    """Circle-valued cocycle at the base point z: epsilon(g1; z, g2 z)."""
    if complex(z).imag <= 0:
        raise DomainError(f"base point must lie in the upper half plane: {z}")
    return epsilon_ratio(g1, z, g2.act(z))


@lru_cache(maxsize=4096)
def s_bar(g: Mat2) -> complex:
    """Section e^{i Arg(ci+d)/2} trivializing bar against hat at z0 = i.

    Matrices of determinant != 1 are evaluated at the determinant-one part of
    the scaling split.
    """
    if g.det() != 1:
        _, g = gl_split(g)
    return cmath.exp(0.5j * arg_wrap(complex(g.c) * 1j + complex(g.d)))


def s_tilde(g: Mat2, psi_sign: int = 1) -> complex:
    """m_weil * s_bar: the analogous section for the tilde model."""
    return m_weil(g, psi_sign).to_complex() * s_bar(g)


def p_z(z: complex) -> Mat2:
    """Upper-triangular p with p(i) = z, for z in the upper half plane."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError(f"need Im z > 0, got {z}")
    r = math.sqrt(z.imag)
    return Mat2(r, z.real / r, 0.0, 1.0 / r)


def conj_by(g: Mat2, h: Mat2) -> Mat2:
    """g^h = h^{-1} g h."""
    return h.inv() @ g @ h


# -- GL2: scaling split and twisted factors -----------------------------------


@lru_cache(maxsize=4096)
def gl_split(h: Mat2) -> Tuple[Union[int, Fraction, float], Mat2]:
    """Factor h = diag(1, y) g with y = det h and det g = 1."""
    y = h.det()
    if y == 0:
        raise SingularMatrix(f"gl_split of singular {h}")
    yd = y if isinstance(y, float) else Fraction(y)
    return y, Mat2(h.a, h.b, h.c / yd, h.d / yd)


@lru_cache(maxsize=4096)
def conj_scale(g: Mat2, y) -> Mat2:
    """g^y = diag(1,y)^{-1} g diag(1,y) = [[a, by],[c/y, d]]."""
    if y == 0:
        raise ZeroInput("scaling by 0")
    yd = y if isinstance(y, float) else Fraction(y)
    return Mat2(g.a, g.b * y, g.c / yd, g.d)


def nu8_scale(y, g: Mat2, psi_sign: int = 1) -> UnitCircleExact:
    """mu8 correction nu(y, g) in the tilde model's scaling relation."""
    if y == 0:
        raise ZeroInput("nu needs y != 0")
    if g.c == 0:
        return UnitCircleExact.from_sign(hilbert_real(y, g.a))
    return UnitCircleExact.from_sign(hilbert_real(g.c, y)) * gamma_psi_half(y, psi_sign).inv()


def nu2_scale(y, g: Mat2) -> int:
    """Sign correction nu_2(y, g) in the bar model: (y, a)_R if c = 0, else 1."""
    if y == 0:
        raise ZeroInput("nu_2 needs y != 0")
    return hilbert_real(y, g.a) if g.c == 0 else 1


def nu_conj(h: Mat2, g: Mat2, kind: Kind, psi_sign: int = 1):
    """Inner-automorphism twist c(h^{-1}, g h) c(g, h) for g^h = h^{-1} g h."""
    k = _norm_kind(kind)
    if k == "bar":
        return c_bar(h.inv(), g @ h) * c_bar(g, h)
    if k == "tilde":
        return c_tilde(h.inv(), g @ h, psi_sign) * c_tilde(g, h, psi_sign)
    from .errors import HatUnsupported

    raise HatUnsupported("nu_conj is defined for the bar and tilde models only")


def nu2_omega_table(g: Mat2) -> int:
    """Closed form of nu_conj(omega, g, bar), branched on vanishing entries."""
    b, c, d = g.b, g.c, g.d
    if d != 0 and c != 0 and b != 0:
        return hilbert_real(d, -b * c)
    if d != 0 and c != 0:
        return hilbert_real(d, g.a * c)
    if d != 0 and b != 0:
        return hilbert_real(d, b)
    if d != 0:
        return 1
    return hilbert_real(-c, -b)


# -- GL2 cocycles -------------------------------------------------------------


def cocycle(kind: Kind, g1: Mat2, g2: Mat2, psi_sign: int = 1, z: complex = 1j):
    """SL2 cocycle of the given kind; bar/tilde are exact, hat is complex."""
    k = _norm_kind(kind)
    if k == "bar":
        return UnitCircleExact.from_sign(c_bar(g1, g2))
    if k == "tilde":
        return c_tilde(g1, g2, psi_sign)
    return c_hat(g1, g2, z)


@lru_cache(maxsize=8192)
def _big_bar(h1: Mat2, h2: Mat2) -> UnitCircleExact:
    _, g1 = gl_split(h1)
    y2, g2 = gl_split(h2)
    return UnitCircleExact.from_sign(nu2_scale(y2, g1) * c_bar(conj_scale(g1, y2), g2))


def big_cocycle(kind: Kind, h1: Mat2, h2: Mat2, psi_sign: int = 1):
    """GL2 cocycle through the scaling split h = diag(1, y) g.

    tilde: nu(y2, g1) c~(g1^{y2}, g2); bar: the nu_2/c_bar analogue; hat: the
    bar value corrected by the s_bar coboundary of the determinant-one parts.
    """
    k = _norm_kind(kind)
    if k == "tilde":
        _, g1 = gl_split(h1)
        y2, g2 = gl_split(h2)
        return nu8_scale(y2, g1, psi_sign) * c_tilde(conj_scale(g1, y2), g2, psi_sign)
    bar = _big_bar(h1, h2)
    if k == "bar":
        return bar
    return bar.to_complex() * s_bar(h1) * s_bar(h2) / s_bar(h1 @ h2)
