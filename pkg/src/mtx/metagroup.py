"""Element arithmetic in the covering groups.

A ``MetaElem`` is a pair [g, eps] with the twisted product
[g1, e1][g2, e2] = [g1 g2, C(g1, g2) e1 e2], where C is the GL2 cocycle of
the element's kind.  Bar/Tilde elements carry exact roots of unity; Hat
elements carry a unit complex number that is renormalized after every
product to stop drift.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .cocycle import _norm_kind, big_cocycle, conj_by, sqrt_branch
from .errors import HatUnsupported, KindMismatch, NotOrthogonal
from .exactmat import H_MINUS1, IDENT, Mat2
from .exactphase import ONE, UnitCircleExact

Eps = Union[UnitCircleExact, complex]


@dataclass(frozen=True)
class MetaElem:
    kind: str
    g: Mat2
    eps: Eps

    def __repr__(self):
        return f"[{self.g}, {self.eps}]"


def meta_lift(kind: str, g: Mat2, eps: Eps = None) -> MetaElem:
    """The lift [g, eps] (eps defaults to the identity of the center)."""
    k = _norm_kind(kind)
    if eps is None:
        eps = (1 + 0j) if k == "hat" else ONE
    if k == "hat":
        eps = complex(eps) if not isinstance(eps, UnitCircleExact) else eps.to_complex()
        eps = eps / abs(eps)
    return MetaElem(k, g, eps)


def meta_mul(x: MetaElem, y: MetaElem) -> MetaElem:
    if x.kind != y.kind:
        raise KindMismatch(f"{x.kind} * {y.kind}")
    c = big_cocycle(x.kind, x.g, y.g)
    if x.kind == "hat":
        eps = complex(c) * x.eps * y.eps
        return MetaElem("hat", x.g @ y.g, eps / abs(eps))
    return MetaElem(x.kind, x.g @ y.g, c * x.eps * y.eps)


def meta_inv(x: MetaElem) -> MetaElem:
    gi = x.g.inv()
    c = big_cocycle(x.kind, x.g, gi)
    if x.kind == "hat":
        eps = 1.0 / (x.eps * complex(c))
        return MetaElem("hat", gi, eps / abs(eps))
    return MetaElem(x.kind, gi, x.eps.inv() * c.inv())


def meta_conj(x: MetaElem, h: Mat2) -> MetaElem:
    """Conjugate by (any lift of) h: the result [h^{-1} g h, nu(h, g) eps]
    does not depend on the choice of lift."""
    if x.kind == "hat":
        raise HatUnsupported("conjugation lifts are defined for bar/tilde only")
    hbar = meta_lift(x.kind, h)
    return meta_mul(meta_mul(meta_inv(hbar), x), hbar)


# -- kind-change isomorphisms ----------------------------------------------


def iota_bar_to_tilde(x: MetaElem) -> MetaElem:
    """[g, eps] -> [g, m_weil(g) eps]; intertwines the bar and tilde products."""
    from .cocycle import m_weil

    if x.kind != "bar":
        raise KindMismatch(f"expected bar, got {x.kind}")
    return MetaElem("tilde", x.g, m_weil(x.g) * x.eps)


def iota_tilde_to_hat(x: MetaElem) -> MetaElem:
    """[g, eps] -> [g, s_tilde(g)^{-1} eps]; intertwines tilde and hat."""
    from .cocycle import s_tilde

    if x.kind != "tilde":
        raise KindMismatch(f"expected tilde, got {x.kind}")
    eps = x.eps.to_complex() / s_tilde(x.g)
    return MetaElem("hat", x.g, eps / abs(eps))


# -- trivializations on the unit circle ----------------------------------------


def u_step(t: float) -> int:
    """2k at t = k pi, else 2k+1 on the open interval (k pi, (k+1) pi)."""
    k = math.floor(t / math.pi)
    return 2 * k if t == k * math.pi else 2 * k + 1


def u_prime(t: float) -> float:
    """u(t) + 2t/pi; satisfies u'(t + pi) = u'(t) + 4."""
    return u_step(t) + 2.0 * t / math.pi


def s_tilde_triv(t: float, psi_sign: int = 1) -> complex:
    """Section e^{-i pi e u'(t)/4} trivializing the tilde cocycle on U(C)."""
    return cmath.exp(-0.25j * math.pi * psi_sign * u_prime(t))


# -- Weil-Deligne embedding ----------------------------------------------------

OMEGA_SIGMA = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)


def weil_deligne_embed(x: MetaElem) -> np.ndarray:
    """Embedding of orthogonal lifts into U(2), modelled on the real Weil group.

    Rotations [k, eps] map to diag(eps^{-1} sqrt(a + ic), conjugate); the
    reflection lift [h_{-1}, i] maps to the antidiagonal generator omega_sigma;
    the rest is forced by multiplicativity.  The map is a monomorphism on the
    subgroup generated by rotation lifts with eps in mu_2 together with
    [h_{-1}, +-i]: central lifts [I, eps] with eps^2 != 1 land on non-scalar
    diagonal matrices, so no assignment extends multiplicatively beyond that
    subgroup.
    """
    if x.kind != "bar":
        raise KindMismatch(f"expected the mu8-bar cover, got {x.kind}")
    g = x.g
    if g.transpose() @ g != IDENT:
        raise NotOrthogonal(f"{g} is not orthogonal")
    if g.det() == 1:
        w = complex(g.a) + 1j * complex(g.c)
        top = sqrt_branch(w) / x.eps.to_complex()
        return np.array([[top, 0.0], [0.0, top.conjugate()]], dtype=complex)
    sigma = MetaElem("bar", H_MINUS1, UnitCircleExact.i_power(1))
    rest = meta_mul(meta_inv(sigma), x)
    return OMEGA_SIGMA @ weil_deligne_embed(rest)


# -- serialization -------------------------------------------------------------


def _frac_str(v) -> str:
    return str(Fraction(v))


def mat_to_json(m: Mat2) -> list:
    return [_frac_str(v) for v in m.entries()]


def mat_from_json(vals) -> Mat2:
    a, b, c, d = (Fraction(str(v)) for v in vals)
    return Mat2(a, b, c, d)


def meta_to_json(x: MetaElem) -> dict:
    if x.kind == "hat":
        eps = [float(x.eps.real), float(x.eps.imag)]
    else:
        eps = str(x.eps.q)
    return {"kind": x.kind, "matrix": mat_to_json(x.g), "eps": eps}


def meta_from_json(data: dict) -> MetaElem:
    kind = _norm_kind(data["kind"])
    g = mat_from_json(data["matrix"])
    eps = data["eps"]
    if kind == "hat":
        return meta_lift("hat", g, complex(eps[0], eps[1]))
    return MetaElem(kind, g, UnitCircleExact.of(Fraction(str(eps))))
