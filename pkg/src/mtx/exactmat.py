"""Exact 2x2 matrices, congruence-subgroup membership, Iwasawa decomposition,
and theta-group coset classification.

Matrices are stored entrywise; integer/string/Fraction entries are kept exact
(plain ``int`` when integral, :class:`fractions.Fraction` otherwise), float
entries are allowed for the numeric decompositions.  Subgroups are referred to
by string tags::

    SL2Z  SL2Zpm  GammaN(N)  Gamma0(N)  GammaUpper0(N)
    GammaTheta  Gamma2  Gamma42  P_pos  P_pos_pm
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .errors import NotInGroup, NotUnimodular, SingularMatrix

Entry = Union[int, Fraction, float]


def _coerce(x) -> Entry:
    # ints stay ints (integer matrices dominate, and int arithmetic is far
    # cheaper than Fraction); only genuinely non-integral values pay for it.
    if isinstance(x, float):
        return x
    if isinstance(x, int):
        return int(x)
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"bad matrix entry: {x!r}")


@dataclass(frozen=True)
class Mat2:
    a: Entry
    b: Entry
    c: Entry
    d: Entry

    def __post_init__(self):
        for f in ("a", "b", "c", "d"):
            object.__setattr__(self, f, _coerce(getattr(self, f)))

    # -- algebra -----------------------------------------------------------

    def det(self):
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inv(self) -> "Mat2":
        dt = self.det()
        if dt == 0:
            raise SingularMatrix(f"det = 0: {self}")
        if dt == 1:
            return Mat2(self.d, -self.b, -self.c, self.a)
        if dt == -1:
            return Mat2(-self.d, self.b, self.c, -self.a)
        if not isinstance(dt, float):
            dt = Fraction(dt)  # keep int/int divisions exact
        return Mat2(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    # -- predicates ----------------------------------------------------------

    def is_integral(self) -> bool:
        return (
            isinstance(self.a, int)
            and isinstance(self.b, int)
            and isinstance(self.c, int)
            and isinstance(self.d, int)
        )

    def entries(self) -> Tuple[Entry, Entry, Entry, Entry]:
        return (self.a, self.b, self.c, self.d)

    # -- actions ---------------------------------------------------------------

    def act(self, z: complex) -> complex:
        """Moebius action (az+b)/(cz+d)."""
        num = complex(self.a) * z + complex(self.b)
        den = complex(self.c) * z + complex(self.d)
        return num / den

    def __repr__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


# -- named elements -------------------------------------------------------

IDENT = Mat2(1, 0, 0, 1)
OMEGA = Mat2(0, -1, 1, 0)
H_MINUS1 = Mat2(1, 0, 0, -1)


def u(b) -> Mat2:
    """Upper unipotent [[1,b],[0,1]]."""
    return Mat2(1, b, 0, 1)


def u_minus(c) -> Mat2:
    """Lower unipotent [[1,0],[c,1]]."""
    return Mat2(1, 0, c, 1)


def h_diag(a) -> Mat2:
    return Mat2(Fraction(a), 0, 0, 1 / Fraction(a))


def s_scale(y) -> Mat2:
    """The section s(y) = diag(1, y) of the determinant."""
    return Mat2(1, 0, 0, y)


def mul(g1: Mat2, g2: Mat2) -> Mat2:
    return g1 @ g2


def inv(g: Mat2) -> Mat2:
    return g.inv()


# -- subgroup membership ----------------------------------------------------

_PARAM_RE = re.compile(r"^(GammaN|Gamma0|GammaUpper0)\((\d+)\)$")


def _int_entries(g: Mat2):
    if not g.is_integral():
        return None
    return tuple(int(x) for x in g.entries())


def is_member(g: Mat2, subgroup: str) -> bool:
    """Membership test for the subgroup tags listed in the module docstring."""
    if subgroup == "P_pos":
        return g.c == 0 and g.a > 0 and g.det() > 0
    if subgroup == "P_pos_pm":
        return g.c == 0 and g.a > 0 and g.det() != 0

    ents = _int_entries(g)
    if ents is None:
        return False
    a, b, c, d = ents

    if subgroup == "SL2Zpm":
        return a * d - b * c in (1, -1)
    if a * d - b * c != 1:
        return False
    if subgroup == "SL2Z":
        return True
    if subgroup == "GammaTheta":
        return a * c % 2 == 0 and b * d % 2 == 0
    if subgroup == "Gamma2":
        subgroup = "GammaN(2)"
    if subgroup == "Gamma42":
        return (a % 4 == 1 and d % 4 == 1 and b % 2 == 0 and c % 2 == 0)
    m = _PARAM_RE.match(subgroup)
    if not m:
        raise ValueError(f"unknown subgroup tag: {subgroup!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "GammaN":
        return a % n == 1 % n and d % n == 1 % n and b % n == 0 and c % n == 0
    if kind == "Gamma0":
        return c % n == 0
    return b % n == 0  # GammaUpper0


def in_theta_gamma0(g: Mat2, n_sq: int) -> bool:
    """g in Gamma_theta intersect Gamma0(n_sq)."""
    ents = _int_entries(g)
    if ents is None:
        return False
    a, b, c, d = ents
    return (
        a * d - b * c == 1
        and c % n_sq == 0
        and a * c % 2 == 0
        and b * d % 2 == 0
    )


def in_theta_gamma0_pm(g: Mat2, n_sq: int) -> bool:
    """Determinant +-1 variant; the h_{-1}-translate keeps c and the mod-2 pattern."""
    ents = _int_entries(g)
    if ents is None:
        return False
    a, b, c, d = ents
    if a * d - b * c == 1:
        pass
    elif a * d - b * c == -1:
        a, b, c, d = a, -b, c, -d  # reduce to the det-1 component via g*h_{-1}
    else:
        return False
    return c % n_sq == 0 and a * c % 2 == 0 and b * d % 2 == 0


# -- Iwasawa -----------------------------------------------------------------


def iwasawa(g: Mat2) -> Tuple[Mat2, Mat2]:
    """g = p*k with p upper triangular (positive top-left) and k in O_2.

    For det g = 1 this is the usual NA*K decomposition; for det g = -1 the
    rotation part is replaced by k*h_{-1}.  Raises NotUnimodular otherwise.
    """
    dt = float(g.det())
    if abs(abs(dt) - 1.0) > 1e-10:
        raise NotUnimodular(f"|det| = {abs(dt)}")
    if dt < 0:
        p, k = iwasawa(g @ H_MINUS1)
        return p, k @ H_MINUS1
    a, b, c, d = (float(x) for x in g.entries())
    s = math.hypot(c, d)
    p = Mat2(1.0 / s, (b * d + a * c) / s, 0.0, s)
    k = Mat2(d / s, -c / s, c / s, d / s)
    return p, k


def so2_angle(k: Mat2) -> float:
    """Rotation angle t in [-pi, pi) of k = [[cos t, -sin t],[sin t, cos t]]."""
    t = math.atan2(float(k.c), float(k.a))
    if t == math.pi:
        t = -math.pi
    return t


# -- theta-group coset classification -----------------------------------------


def theta_coset_reps(n: int):
    """Matrix parts of the coset representatives (1-based q_1, q_2, q_3).

    All representatives must lie in Gamma0(n^2) for the level-n^2 coset
    bookkeeping to be well posed; for odd n that forces the lower-triangular
    representative to be u_-(-n^2) (u_-(-n) is not in Gamma0(n^2) once n > 1).
    """
    if n % 2 == 1:
        return [u(n), IDENT, u_minus(-n * n)]
    return [u(1), IDENT]


def theta_coset_index(g: Mat2, n: int) -> Tuple[int, Mat2]:
    """Write g = s * q_i with s in Gamma_theta intersect Gamma0(n^2).

    Returns the 1-based index i and the factor s; raises NotInGroup when g is
    not in Gamma0(n^2) (no or several representatives match).
    """
    reps = theta_coset_reps(n)
    hits = []
    for i, q in enumerate(reps, start=1):
        s = g @ q.inv()
        if in_theta_gamma0(s, n * n):
            hits.append((i, s))
    if len(hits) != 1:
        raise NotInGroup(f"{g} has {len(hits)} matching cosets at N={n}")
    return hits[0]
