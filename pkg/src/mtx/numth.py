"""Number-theoretic kernels: Kronecker symbol, Dedekind sums, Gauss sums,
and exact Dirichlet characters.

The Kronecker symbol follows the convention pinned for this package:
(0/1) = 1 and (0/-1) = -1 (so (a/-1) = -1 exactly when a <= 0); elsewhere it
is the standard completely multiplicative extension of the Jacobi symbol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .errors import (
    EvenInput,
    NotCoprime,
    NotInGroup,
    OddProduct,
    ZeroInput,
    ZeroModulus,
)
from .exactmat import Mat2, is_member
from .exactphase import MINUS_ONE, ONE, UnitCircleExact


def sign(x) -> int:
    return (x > 0) - (x < 0)


# -- symbols ------------------------------------------------------------------


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) with the package's (0/-1) = -1 convention."""
    a, n = int(a), int(n)
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a <= 0:
            result = -result
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        if e % 2 == 1 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def eps_d(d: int) -> UnitCircleExact:
    """1 for d = 1 mod 4, i for d = 3 mod 4 (any odd d, either sign)."""
    if d % 2 == 0:
        raise EvenInput(f"eps_d needs odd d, got {d}")
    return ONE if d % 4 == 1 else UnitCircleExact.i_power(1)


def hilbert_real(a, b) -> int:
    """Real Hilbert symbol: -1 iff both arguments are negative."""
    if a == 0 or b == 0:
        raise ZeroInput("hilbert symbol needs nonzero arguments")
    return -1 if (a < 0 and b < 0) else 1


# -- Dedekind sums ---------------------------------------------------------


def sawtooth(x) -> Fraction:
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum(d: int, c: int) -> Fraction:
    """s(d, c) = sum_{k mod |c|} ((k/c))((kd/c)); exact."""
    if c == 0:
        raise ZeroModulus("dedekind_sum needs c != 0")
    cc = abs(c)
    total = Fraction(0)
    for k in range(1, cc):
        total += sawtooth(Fraction(k, cc)) * sawtooth(Fraction(k * d, cc))
    return total


def asai_mu(g: Mat2) -> Fraction:
    """Rational exponent mu(g) on SL2(Z) with e^{-pi i mu} trivializing c_bar."""
    if not is_member(g, "SL2Z"):
        raise NotInGroup(f"asai_mu needs g in SL2(Z), got {g}")
    a, b, c, d = (int(x) for x in g.entries())
    if c == 0:
        return Fraction(b, 12 * d) + Fraction(1 - sign(d), 4)
    return Fraction(a + d, 12 * c) - sign(c) * (Fraction(1, 4) + dedekind_sum(d, abs(c)))


# -- Gauss sums -----------------------------------------------------------------


def gauss_sum_brute(c: int, d: int) -> complex:
    """G(c, d) = |d|^{-1/2} sum_{n mod |d|} e^{-pi i c n^2 / d}.

    Phases are reduced mod 2|d| in integer arithmetic before exponentiation,
    so the result is accurate to ~1e-15 even for large c.
    """
    if d == 0:
        raise ZeroModulus("gauss_sum_brute needs d != 0")
    dd = abs(d)
    n = np.arange(dd, dtype=object) if dd > 3_000_000 else np.arange(dd, dtype=np.int64)
    m = (int(c) * n * n) % (2 * dd)
    phases = np.exp((-1j * math.pi * sign(d) / dd) * m.astype(np.float64))
    return complex(phases.sum() / math.sqrt(dd))


def gauss_sum_closed(d: int, c: int) -> UnitCircleExact:
    """Exact value of G(d, c) for coprime c, d with cd even (c != 0).

    Branches on which of c, d is even and on the residue mod 4 of the odd one.
    """
    if c == 0:
        raise ZeroModulus("gauss_sum_closed needs modulus c != 0")
    if math.gcd(d, c) != 1:
        raise NotCoprime(f"({d}, {c})")
    if abs(c) == 1:
        return ONE
    if (c * d) % 2 != 0:
        raise OddProduct(f"c*d must be even, got c={c}, d={d}")
    if c % 2 == 0:
        half = c // 2
        base = UnitCircleExact.from_sign(kronecker(half, abs(d)))
        if abs(d) % 4 == 3:
            base = base * UnitCircleExact.i_power(1) * UnitCircleExact.from_sign(sign(d))
        return base * UnitCircleExact.eighth(-sign(c * d))
    half = d // 2
    base = UnitCircleExact.from_sign(kronecker(half, abs(c)))
    if abs(c) % 4 == 3:
        base = base * UnitCircleExact.i_power(-1) * UnitCircleExact.from_sign(sign(c))
    return base


# -- Dirichlet characters -----------------------------------------------------


@dataclass(frozen=True)
class DirichletChar:
    """Exact character table: values[k] is the exponent e with
    chi(k) = e^{2 pi i e / order}, or None when gcd(k, modulus) > 1."""

    modulus: int
    order: int
    values: Tuple[Optional[int], ...]

    def __post_init__(self):
        if self.modulus < 1 or self.order < 1 or len(self.values) != self.modulus:
            raise ValueError("inconsistent character data")

    def __call__(self, n: int) -> Optional[UnitCircleExact]:
        return char_eval(self, n)

    def is_even(self) -> bool:
        e = self.values[(self.modulus - 1) % self.modulus]
        return e is not None and e % self.order == 0

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "order": self.order,
            "values": {str(k): v for k, v in enumerate(self.values)},
        }

    @staticmethod
    def from_json(data: dict) -> "DirichletChar":
        n = int(data["modulus"])
        vals = [None] * n
        for k, v in data["values"].items():
            vals[int(k) % n] = None if v is None else int(v)
        return DirichletChar(n, int(data["order"]), tuple(vals))


def char_eval(chi: DirichletChar, n: int) -> Optional[UnitCircleExact]:
    """chi(n); None encodes the value 0."""
    e = chi.values[n % chi.modulus]
    if e is None:
        return None
    return UnitCircleExact.of(Fraction(2 * e, chi.order))


def char_gauss(chi: DirichletChar, n: int) -> complex:
    """Character Gauss sum G(n, conj(chi)) = sum_k conj(chi)(k) e^{2 pi i k n / N}."""
    total = 0j
    N = chi.modulus
    for k in range(N):
        v = char_eval(chi, k)
        if v is None:
            continue
        total += v.conj().to_complex() * np.exp(2j * math.pi * ((k * n) % N) / N)
    return complex(total)


def char_is_primitive(chi: DirichletChar) -> bool:
    """True when no proper modulus induces chi: for every proper divisor f of
    the modulus, chi must be nontrivial on {a = 1 mod f : gcd(a, N) = 1}."""
    N = chi.modulus
    for f in range(1, N):
        if N % f != 0:
            continue
        kernel_vals = [
            chi.values[a % N]
            for a in range(1, N + 1, f)
            if math.gcd(a, N) == 1 and chi.values[a % N] is not None
        ]
        if all(v % chi.order == 0 for v in kernel_vals):
            return False
    return True


def trivial_char() -> DirichletChar:
    return DirichletChar(1, 1, (0,))


def legendre_char(p: int) -> DirichletChar:
    """Quadratic character mod an odd prime p."""
    if p < 3 or p % 2 == 0 or any(p % q == 0 for q in range(3, int(p**0.5) + 1, 2)):
        raise ValueError(f"need an odd prime, got {p}")
    vals: list = [None] * p
    for k in range(1, p):
        vals[k] = 0 if kronecker(k, p) == 1 else 1
    return DirichletChar(p, 2, tuple(vals))


def char_mod4() -> DirichletChar:
    """The primitive (odd) character mod 4."""
    return DirichletChar(4, 2, (None, 0, None, 1))
