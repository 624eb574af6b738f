"""Theta series of half-integral weight, the eta function, and the
automorphy factors they transform under.

Everything here is floating-point (the series live on the upper half-plane),
in contrast to the exact multiplier/cocycle layers.  The three series
families share one summation kernel:

    plain      sum_n chi(n)      n^e exp(i pi t z n^2)
    minus      sum_n (-1)^n chi(n) n^e exp(i pi t z n^2)
    fermionic  sum_n chi(n + (N+1)/2) (n+1/2)^e exp(i pi t z (n+1/2)^2)

with e = 0 for kappa = 1 and e = 1 for kappa = 3 (weights 1/2 and 3/2).
Truncation is controlled by an explicit cutoff formula so callers can audit
the tail; the guard rails (minimum Im z, maximum |Re z|, minimum tolerance)
raise DomainError rather than silently degrade.
"""

from __future__ import annotations

import functools
import math
import cmath
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import DomainError, InvalidParams, KindMismatch, PoleAtZ
from .exactmat import Mat2
from .exactphase import UnitCircleExact
from .induction import coset_reps, tensor_character
from .metagroup import MetaElem, meta_lift
from .numth import DirichletChar, trivial_char
from .cocycle import big_cocycle, s_bar, sqrt_branch

__all__ = [
    "DEFAULT_TOL",
    "MAX_RE",
    "MIN_IM",
    "MIN_TOL",
    "ThetaSpec",
    "eta",
    "eta_cutoff",
    "gamma2_sign",
    "j_delta",
    "j_kappa",
    "kappa_for",
    "slash",
    "slash_pm",
    "theta_matrix_pm",
    "theta_series",
    "theta_vector",
    "theta_vector_pm",
    "theta_vector_pm_slash",
    "theta_vector_slash",
    "truncation_cutoff",
]

MIN_IM = 1e-3
MAX_RE = 1e6
MIN_TOL = 1e-16
DEFAULT_TOL = 1e-12

_VARIANTS = ("plain", "minus", "fermionic")


def _point(z: Union[complex, float], tol: float, lower_ok: bool = False) -> complex:
    zz = complex(z)
    if not (tol >= MIN_TOL):
        raise DomainError(f"tolerance {tol} below the supported floor {MIN_TOL}")
    if abs(zz.real) > MAX_RE:
        raise DomainError(f"|Re z| = {abs(zz.real)} exceeds {MAX_RE}")
    im = abs(zz.imag) if lower_ok else zz.imag
    if not (im >= MIN_IM):
        raise DomainError(f"Im z = {zz.imag} outside the supported region (min {MIN_IM})")
    return zz


def truncation_cutoff(t: int, im_z: float, tol: float) -> int:
    """Smallest summation radius M with the Gaussian tail below ~tol*e^-5,
    plus slack for the kappa=3 weight."""
    if im_z <= 0:
        raise DomainError("cutoff needs Im z > 0")
    return math.ceil(math.sqrt((math.log(1.0 / tol) + 5.0) / (math.pi * t * im_z))) + 5


def kappa_for(chi: DirichletChar) -> int:
    """The weight parity forced by chi: even characters pair with kappa=1,
    odd ones with kappa=3."""
    return 1 if chi.is_even() else 3


@dataclass(frozen=True)
class ThetaSpec:
    """Which member of the family: series variant, weight kappa/2, twisting
    character, and dilation t (the series runs over exp(i pi t z ...))."""

    variant: str = "plain"
    kappa: int = 1
    chi: DirichletChar = field(default_factory=trivial_char)
    t: int = 1

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise InvalidParams(f"unknown variant {self.variant!r}")
        if self.kappa not in (1, 3):
            raise InvalidParams("kappa must be 1 or 3")
        if not (isinstance(self.t, int) and self.t >= 1):
            raise InvalidParams("t must be a positive integer")
        if self.kappa == 1 and not self.chi.is_even():
            raise InvalidParams("kappa=1 needs an even character")
        if self.kappa == 3 and self.chi.is_even():
            raise InvalidParams("kappa=3 needs an odd character")
        if self.variant == "fermionic" and self.chi.modulus % 2 == 0:
            raise InvalidParams("the fermionic family needs an odd modulus")


@functools.lru_cache(maxsize=64)
def _char_table(chi: DirichletChar) -> np.ndarray:
    vals = []
    for r in range(chi.modulus):
        v = chi(r)
        vals.append(0.0 if v is None else v.to_complex())
    return np.array(vals, dtype=complex)


def theta_series(spec: ThetaSpec, z: complex, tol: float = DEFAULT_TOL,
                 cutoff: Optional[int] = None) -> complex:
    """Evaluate the series at a point of the upper half-plane.  No leading
    normalisation: the weight-1/2 plain/trivial member is sum_n e^{i pi t z n^2}.

    `cutoff` overrides the summation radius (for tail audits)."""
    zz = _point(z, tol)
    m = truncation_cutoff(spec.t, zz.imag, tol) if cutoff is None else int(cutoff)
    n = np.arange(-m, m + 1)
    table = _char_table(spec.chi)
    if spec.variant == "fermionic":
        shift = (spec.chi.modulus + 1) // 2
        coef = table[(n + shift) % spec.chi.modulus]
        x = n + 0.5
    else:
        coef = table[n % spec.chi.modulus]
        x = n.astype(float)
        if spec.variant == "minus":
            coef = coef * np.where(n % 2 == 0, 1.0, -1.0)
    if spec.kappa == 3:
        coef = coef * x
    return complex(np.sum(coef * np.exp((1j * math.pi * spec.t * zz) * (x * x))))


def eta_cutoff(im_z: float, tol: float) -> int:
    """Number of factors of the q-product needed for a relative tail < tol."""
    if im_z <= 0:
        raise DomainError("cutoff needs Im z > 0")
    absq = math.exp(-2.0 * math.pi * im_z)
    return int(math.log(tol * (1.0 - absq) / 2.0) / math.log(absq)) + 2


def eta(z: complex, tol: float = DEFAULT_TOL, cutoff: Optional[int] = None) -> complex:
    """Dedekind eta: e^{i pi z / 12} prod_{n>=1} (1 - e^{2 pi i n z})."""
    zz = _point(z, tol)
    m = eta_cutoff(zz.imag, tol) if cutoff is None else int(cutoff)
    q = cmath.exp(2j * math.pi * zz)
    qs = np.cumprod(np.full(m, q))
    return cmath.exp(1j * math.pi * zz / 12.0) * complex(np.prod(1.0 - qs))


# -- automorphy factors ---------------------------------------------------------


def _p_z_pm(z: complex) -> Mat2:
    """Triangular p with p(i) = z for z off the real axis; det p = sgn(Im z)."""
    y = z.imag
    if y == 0:
        raise DomainError("z must lie off the real axis")
    s = 1.0 if y > 0 else -1.0
    r = math.sqrt(abs(y))
    return Mat2(r, s * z.real / r, 0.0, s / r)


def _j_half_raw(g: Mat2, z: complex) -> complex:
    """The eps-free half-weight factor, both half-planes, det of either sign:

        C_hat(g, p_z)^{-1} |cz+d|^{1/2} s_bar(g)

    (base-point transport).  Its square is sgn(det g)(cz+d) when |det g| = 1,
    and on det 1 over the upper half-plane it is the principal sqrt(cz+d)."""
    zz = complex(z)
    czd = complex(g.c) * zz + complex(g.d)
    if czd == 0:
        raise PoleAtZ(f"cz+d = 0 at z = {z}")
    if g.det() == 1 and zz.imag > 0:
        return sqrt_branch(czd)
    chat = big_cocycle("hat", g, _p_z_pm(zz))
    return math.sqrt(abs(czd)) * s_bar(g) / chat


def j_kappa(x: MetaElem, z: complex, kappa: int = 1) -> complex:
    """The weight-kappa/2 factor of x = [g, eps] at z: eps^{-1} times the
    transported half-weight factor, times (cz+d) again for kappa = 3.  An
    exact character for the Bar-cover multiplication on all of C minus R."""
    if x.kind != "bar":
        raise KindMismatch("j_kappa lives on the Bar cover")
    if kappa not in (1, 3):
        raise InvalidParams("kappa must be 1 or 3")
    val = _j_half_raw(x.g, z) / x.eps.to_complex()
    if kappa == 3:
        val = val * (complex(x.g.c) * complex(z) + complex(x.g.d))
    return val


def j_delta(x: MetaElem, z: complex, delta: str = "+") -> np.ndarray:
    """Diagonal 2x2 factor for the two-component series: with r the eps-free
    half-weight factor, the entries are eps^{-1} r and eps^{-1} conj(r) for
    delta '+', and the cubes of those for delta '-'.  (The cube differs from
    r * (cz+d) by sgn(det): r^2 = sgn(det)(cz+d).)  At [diag(1,-1), 1] this
    is the identity."""
    if x.kind != "bar":
        raise KindMismatch("j_delta lives on the Bar cover")
    if delta not in ("+", "-"):
        raise InvalidParams("delta must be '+' or '-'")
    root = _j_half_raw(x.g, z)
    if delta == "-":
        root = root ** 3
    e = x.eps.inv().to_complex()
    return np.array([[e * root, 0.0], [0.0, e * root.conjugate()]], dtype=complex)


# -- slash operators and vectors -------------------------------------------------


def _require_pos_det_bar(wbar: MetaElem) -> float:
    if wbar.kind != "bar":
        raise KindMismatch("slash lives on the Bar cover")
    det = wbar.g.det()
    if det <= 0:
        raise DomainError("slash needs a positive determinant")
    return float(det)


def slash(spec: ThetaSpec, wbar: MetaElem, z: complex, tol: float = DEFAULT_TOL) -> complex:
    """Weight-kappa/2 slash:  det^{kappa/4} j_kappa(wbar, z)^{-1} theta(wbar z)."""
    det = _require_pos_det_bar(wbar)
    wz = wbar.g.act(complex(z))
    return det ** (spec.kappa / 4.0) / j_kappa(wbar, z, spec.kappa) * theta_series(spec, wz, tol)


def _vector_variants(n: int) -> tuple:
    # matches the coset_reps order: u(n) | u(1), identity, and (odd n) the
    # lower-triangular representative
    return ("minus", "plain", "fermionic") if n % 2 == 1 else ("minus", "plain")


def theta_vector_slash(n: int, chi: Optional[DirichletChar], kappa: int, z: complex,
                       tol: float = DEFAULT_TOL) -> np.ndarray:
    """Row vector of the plain series slashed through the theta-coset
    representatives of Gamma0(n^2): 3 components for odd n, 2 for even."""
    spec = ThetaSpec("plain", kappa, trivial_char() if chi is None else chi, 1)
    return np.array([slash(spec, rep, z, tol) for rep in coset_reps(n)], dtype=complex)


def theta_vector(n: int, chi: Optional[DirichletChar], kappa: int, z: complex,
                 tol: float = DEFAULT_TOL) -> np.ndarray:
    """Same vector as theta_vector_slash, evaluated componentwise through the
    closed variant series (minus, plain, and for odd n fermionic).  The two
    agree identically; this form stays well-conditioned for arguments with
    small imaginary part because it never maps z through the representatives."""
    ch = trivial_char() if chi is None else chi
    return np.array(
        [theta_series(ThetaSpec(v, kappa, ch, 1), z, tol) for v in _vector_variants(n)],
        dtype=complex,
    )


def _pm_block(variant: str, chi: DirichletChar, delta: str, z: complex,
              tol: float = DEFAULT_TOL) -> np.ndarray:
    """2x2 block of a two-component series over either half-plane.

    Upper half-plane: diag(S(z), S(-conj z)); lower: antidiag with (1,2)
    entry S(-z) and (2,1) entry S(conj z), where S is the given variant's
    series of the weight matching delta (kappa=1 for '+', 3 for '-')."""
    if delta not in ("+", "-"):
        raise InvalidParams("delta must be '+' or '-'")
    zz = _point(z, tol, lower_ok=True)
    spec = ThetaSpec(variant, 1 if delta == "+" else 3, chi, 1)
    out = np.zeros((2, 2), dtype=complex)
    if zz.imag > 0:
        out[0, 0] = theta_series(spec, zz, tol)
        out[1, 1] = theta_series(spec, -zz.conjugate(), tol)
    else:
        out[0, 1] = theta_series(spec, -zz, tol)
        out[1, 0] = theta_series(spec, zz.conjugate(), tol)
    return out


def theta_matrix_pm(chi: DirichletChar, delta: str, z: complex,
                    tol: float = DEFAULT_TOL) -> np.ndarray:
    """The 2x2 block of the plain two-component series at z, either half-plane."""
    return _pm_block("plain", chi, delta, z, tol)


def slash_pm(chi: DirichletChar, delta: str, wbar: MetaElem, z: complex,
             tol: float = DEFAULT_TOL) -> np.ndarray:
    """Two-component slash: det^{(2-delta_sign)/4} J_delta(wbar, z)^{-1}
    Theta(wbar z), with exponent 1/4 for delta+ and 3/4 for delta-."""
    det = _require_pos_det_bar(wbar)
    jd = j_delta(wbar, z, delta)
    jinv = np.array([[1.0 / jd[0, 0], 0.0], [0.0, 1.0 / jd[1, 1]]], dtype=complex)
    power = 0.25 if delta == "+" else 0.75
    return det ** power * (jinv @ theta_matrix_pm(chi, delta, wbar.g.act(complex(z)), tol))


def theta_vector_pm_slash(n: int, chi: DirichletChar, delta: str, z: complex,
                          tol: float = DEFAULT_TOL) -> np.ndarray:
    """2 x 2k block row: the two-component slash over the coset representatives."""
    return np.hstack([slash_pm(chi, delta, rep, z, tol) for rep in coset_reps(n)])


def theta_vector_pm(n: int, chi: DirichletChar, delta: str, z: complex,
                    tol: float = DEFAULT_TOL) -> np.ndarray:
    """Same block row as theta_vector_pm_slash via the closed variant series
    (identically equal, better conditioned near the real axis)."""
    return np.hstack([_pm_block(v, chi, delta, z, tol) for v in _vector_variants(n)])


# -- the sign character behind the eta^12 law ------------------------------------


def gamma2_sign(g: Mat2) -> UnitCircleExact:
    """Fourth power of the transfer character at level 1: the quadratic
    character of SL2(Z) that kills the principal congruence subgroup of
    level 2 and restricts to the sign character of the quotient S_3."""
    return tensor_character(meta_lift("bar", g), 1, None) ** 4
