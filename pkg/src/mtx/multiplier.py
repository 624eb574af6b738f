"""Multiplier systems on the theta group and its conjugates.

Everything in here is an exact root of unity (``UnitCircleExact``) except the
"hat" beta variants, which absorb the z0-section and are honest complex
numbers.  The central object is the weight-1/2 multiplier ``lambda_theta``,
returned in closed form and cross-checked against its definitional expression
(Weil index times inverse Gauss sum) on every call.  On top of it sit the
metaplectic lifts ``lambda_bar`` / ``lambda_bar_chi``, the slash-conjugated
variants (``lambda_slash``, ``nu_table``) and the quartic characters
``delta_char`` used by the twisted series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import cocycle as co
from .errors import (
    InternalMismatch,
    InvalidParams,
    KindMismatch,
    NotInDomain,
    NotInGroup,
)
from .exactmat import H_MINUS1, Mat2, OMEGA, in_theta_gamma0, is_member, u, u_minus
from .exactphase import ONE, UnitCircleExact
from .metagroup import MetaElem, meta_conj, meta_inv, meta_lift, meta_mul
from .numth import DirichletChar, asai_mu, eps_d, gauss_sum_closed, hilbert_real, kronecker

__all__ = [
    "MultiplierId",
    "beta_family",
    "chi_omega",
    "delta_char",
    "lambda_bar",
    "lambda_bar_chi",
    "lambda_slash",
    "lambda_theta",
    "nu_table",
]


def _require(cond: bool, exc, msg: str):
    if not cond:
        raise exc(msg)


# -- beta splittings ----------------------------------------------------------
#
# Two families of coboundary data: the "asai" one built from the eta-type
# invariant mu on all of SL2(Z), and the Gauss-sum one on the theta group.
# bar/tilde live in the exact circle group; hat divides out the z0-section.


def _beta_asai_bar(g: Mat2) -> UnitCircleExact:
    return UnitCircleExact.of(-asai_mu(g))  # e^{-pi i mu}


def _beta_theta_tilde(g: Mat2) -> UnitCircleExact:
    c, d = int(g.c), int(g.d)
    if c == 0:
        return ONE
    return gauss_sum_closed(d, c)


def beta_family(r: Mat2, kind: str, family: str = "gamma_theta"):
    """Splitting candidates beta(r) for the bar/tilde/hat cocycles.

    family "asai" is defined on SL2(Z); family "gamma_theta" on the theta
    group.  bar and tilde values are exact; hat values are complex (they
    involve the section s-bar).
    """
    if kind not in ("bar", "tilde", "hat"):
        raise InvalidParams(f"unknown kind {kind!r}")
    if family == "asai":
        _require(is_member(r, "SL2Z"), NotInGroup, f"not in SL2(Z): {r!r}")
        bar = _beta_asai_bar(r)
    elif family == "gamma_theta":
        _require(is_member(r, "GammaTheta"), NotInGroup, f"not in the theta group: {r!r}")
        bar = _beta_theta_tilde(r) * co.m_weil(r).inv()
    else:
        raise InvalidParams(f"unknown family {family!r}")
    if kind == "bar":
        return bar
    if kind == "tilde":
        return bar * co.m_weil(r)
    # hat: shift the bar splitting by the section (same value as tilde/s~)
    return bar.to_complex() / co.s_bar(r)


# -- the weight-1/2 multiplier ------------------------------------------------


def _lambda_closed(r: Mat2) -> UnitCircleExact:
    c, d = int(r.c), int(r.d)
    if c % 2 == 0:
        return UnitCircleExact.from_sign(kronecker(2 * c, d)) * eps_d(d).inv()
    # other coset; label it by the entries of the factor r1 = r * omega^{-1}
    r1 = r @ OMEGA.inv()
    c1, d1 = int(r1.c), int(r1.d)
    val = (
        UnitCircleExact.from_sign(kronecker(2 * c1, d1))
        * eps_d(d1).inv()
        * UnitCircleExact.eighth(-1)
    )
    if c1 != 0:
        val = val * UnitCircleExact.from_sign(hilbert_real(-c1, d1))
    return val


def lambda_theta(r: Mat2) -> UnitCircleExact:
    """Closed-form multiplier on the theta group, cross-checked definitionally.

    The definitional value is m(r) * beta~(r)^{-1}; a disagreement with the
    closed form raises InternalMismatch (it would indicate a broken Gauss-sum
    or Weil-index branch, not bad input).
    """
    _require(is_member(r, "GammaTheta"), NotInGroup, f"not in the theta group: {r!r}")
    closed = _lambda_closed(r)
    definitional = co.m_weil(r) * _beta_theta_tilde(r).inv()
    if closed != definitional:
        raise InternalMismatch(f"lambda closed/definitional split at {r!r}: {closed} vs {definitional}")
    return closed


def lambda_bar(x: MetaElem) -> UnitCircleExact:
    """Genuine character of the Bar cover of the theta group: lambda(r)*eps."""
    _require(x.kind == "bar", KindMismatch, "lambda_bar lives on the Bar cover")
    return lambda_theta(x.g) * x.eps


def lambda_bar_chi(x: MetaElem, chi: Optional[DirichletChar] = None) -> UnitCircleExact:
    """Character lambda(r)*chi(d)*eps on the Bar cover of Gamma_theta n Gamma0(N^2)."""
    _require(x.kind == "bar", KindMismatch, "lambda_bar_chi lives on the Bar cover")
    if chi is None:
        return lambda_bar(x)
    n_sq = chi.modulus * chi.modulus
    _require(in_theta_gamma0(x.g, n_sq), NotInGroup, f"not in Gamma_theta n Gamma0({n_sq}): {x.g!r}")
    cv = chi(int(x.g.d))
    if cv is None:  # cannot happen when det = 1 and N^2 | c, kept as a guard
        raise NotInDomain(f"character mod {chi.modulus} undefined at d = {x.g.d}")
    return lambda_bar(x) * cv


def lambda_slash(wbar: MetaElem, x: MetaElem, chi: Optional[DirichletChar] = None) -> UnitCircleExact:
    """Conjugated character: lambda_bar_chi at s = wbar * x * wbar^{-1}.

    wbar may sit over any invertible rational matrix (Bar cover of GL2); the
    product is formed with the big Bar cocycle, so the epsilon bookkeeping of
    the conjugation is automatic.  NotInDomain if the conjugate lands outside
    Gamma_theta n Gamma0(N^2).
    """
    _require(wbar.kind == "bar" and x.kind == "bar", KindMismatch, "slash conjugation happens in the Bar cover")
    s = meta_mul(meta_mul(wbar, x), meta_inv(wbar))
    n_sq = 1 if chi is None else chi.modulus * chi.modulus
    if not in_theta_gamma0(s.g, n_sq):
        raise NotInDomain(f"conjugate lands outside the target group: {s.g!r}")
    return lambda_bar_chi(s, chi)


def chi_omega(r: Mat2) -> UnitCircleExact:
    """Obstruction character for conjugation by h_{-1} = diag(1,-1).

    chi_omega(r) = lambda_bar(x^{h_-1}) / lambda_bar(x) for any lift x of r;
    trivial on Gamma(4,2), value i at omega.
    """
    _require(is_member(r, "GammaTheta"), NotInGroup, f"not in the theta group: {r!r}")
    x = meta_lift("bar", r, ONE)
    return lambda_bar(meta_conj(x, H_MINUS1)) / lambda_bar(x)


# -- quartic characters on Gamma(2) -------------------------------------------


def delta_char(which: str, g: Mat2) -> UnitCircleExact:
    """delta_M(g) = (i*(-1/d))^{c/2}, delta_F(g) = (i*(-1/d))^{b/2} on Gamma(2)."""
    if which not in ("M", "F"):
        raise InvalidParams(f"which must be 'M' or 'F', got {which!r}")
    _require(is_member(g, "Gamma2"), NotInGroup, f"not in Gamma(2): {g!r}")
    b, c, d = int(g.b), int(g.c), int(g.d)
    e = (c if which == "M" else b) // 2
    return UnitCircleExact.i_power(e) * UnitCircleExact.from_sign(kronecker(-1, d)) ** e


# -- the nu tables ------------------------------------------------------------

_TAGS = ("lambda", "nu_theta_t", "nu_thetaM_t", "nu_thetaF_t", "delta_M", "delta_F")


@dataclass(frozen=True)
class MultiplierId:
    """Row selector for nu_table; t is the scaling parameter where applicable."""

    tag: str
    t: int = 1

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise InvalidParams(f"unknown multiplier tag {self.tag!r}")
        if self.t < 1:
            raise InvalidParams("t must be a positive integer")


def _slash_matrix(mid: MultiplierId) -> Mat2:
    dt = Mat2(mid.t, 0, 0, 1)
    if mid.tag == "nu_theta_t":
        return dt
    if mid.tag == "nu_thetaM_t":
        return u(1) @ dt
    return u_minus(-1) @ dt  # nu_thetaF_t


def nu_table(mid: MultiplierId, r: Mat2) -> UnitCircleExact:
    """Value of the selected multiplier row at r.

    The theta/M/F rows are computed definitionally as slash-conjugates of
    lambda_bar; the branch is decided by whether the conjugated matrix lies in
    the theta group (this covers the integrality conditions on exponents like
    c/2t: a non-integral exponent means the conjugate is not integral).
    """
    if mid.tag == "lambda":
        if not is_member(r, "GammaTheta"):
            raise NotInDomain(f"not in the theta group: {r!r}")
        return lambda_theta(r)
    if mid.tag in ("delta_M", "delta_F"):
        if not is_member(r, "Gamma2"):
            raise NotInDomain(f"not in Gamma(2): {r!r}")
        return delta_char(mid.tag[-1], r)
    w = _slash_matrix(mid)
    return lambda_slash(meta_lift("bar", w, ONE), meta_lift("bar", r, ONE))
