"""Exact arithmetic on the unit circle.

A :class:`UnitCircleExact` stores a point e^{i*pi*q} through its rational
exponent q (taken mod 2), so products, inverses and equality tests are exact.
Every root of unity that occurs in the package (mu_2, mu_4, mu_8, Dirichlet
character values, Dedekind-sum exponentials) fits this representation.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


@dataclass(frozen=True)
class UnitCircleExact:
    """The complex number e^{i*pi*q} with q rational, normalized to 0 <= q < 2."""

    q: Fraction

    # -- construction -----------------------------------------------------

    @staticmethod
    def of(q) -> "UnitCircleExact":
        return UnitCircleExact(Fraction(q) % 2)

    @staticmethod
    def one() -> "UnitCircleExact":
        return _EIGHTHS[0]

    @staticmethod
    def minus_one() -> "UnitCircleExact":
        return _EIGHTHS[4]

    @staticmethod
    def i_power(k: int) -> "UnitCircleExact":
        """i**k."""
        return UnitCircleExact.of(Fraction(k, 2))

    @staticmethod
    def eighth(k: int) -> "UnitCircleExact":
        """e^{i*pi*k/4}."""
        if isinstance(k, int):
            return _EIGHTHS[k % 8]
        return UnitCircleExact.of(Fraction(k, 4))

    @staticmethod
    def from_sign(s: int) -> "UnitCircleExact":
        if s == 1:
            return _EIGHTHS[0]
        if s == -1:
            return _EIGHTHS[4]
        raise ValueError(f"not a sign: {s!r}")

    def __post_init__(self):
        if not isinstance(self.q, Rational):
            raise TypeError(f"exponent must be rational, got {self.q!r}")
        object.__setattr__(self, "q", Fraction(self.q) % 2)

    # -- arithmetic --------------------------------------------------------

    def __mul__(self, other: "UnitCircleExact") -> "UnitCircleExact":
        return UnitCircleExact(self.q + other.q)

    def inv(self) -> "UnitCircleExact":
        return UnitCircleExact(-self.q)

    def conj(self) -> "UnitCircleExact":
        return UnitCircleExact(-self.q)

    def __pow__(self, n: int) -> "UnitCircleExact":
        return UnitCircleExact(self.q * n)

    def __truediv__(self, other: "UnitCircleExact") -> "UnitCircleExact":
        return UnitCircleExact(self.q - other.q)

    # -- views ---------------------------------------------------------------

    def to_complex(self) -> complex:
        # exact values on the axes, cmath elsewhere
        twice = self.q * 2
        if twice.denominator == 1:
            return {0: 1 + 0j, 1: 1j, 2: -1 + 0j, 3: -1j}[twice.numerator % 4]
        return cmath.exp(1j * cmath.pi * float(self.q))

    def is_one(self) -> bool:
        return self.q == 0

    def as_sign(self) -> int:
        """Return +-1, or raise if the value is not real."""
        if self.q == 0:
            return 1
        if self.q == 1:
            return -1
        raise ValueError(f"not a sign: e^(i pi {self.q})")

    def __repr__(self):
        return f"e(i*pi*{self.q})"


# the mu_8 values, cached once: hot paths (cocycles, multipliers) only ever
# construct these
_EIGHTHS = tuple(UnitCircleExact(Fraction(k, 4)) for k in range(8))

ONE = _EIGHTHS[0]
MINUS_ONE = _EIGHTHS[4]
I_UNIT = _EIGHTHS[2]
