"""Shared samplers for the test suite.

Group elements come from bounded random walks on elementary generators, so
the exact Fraction arithmetic stays fast and every subgroup is sampled by
construction rather than by rejection from SL2(Z).  All randomness is local
(seeded random.Random instances per test); nothing here keeps global state.
"""

import random
from fractions import Fraction

from mtx.exactmat import IDENT, OMEGA, Mat2, is_member, s_scale, u, u_minus

SL2_GENS = (u(1), u(-1), u_minus(1), u_minus(-1))
THETA_GENS = (u(2), u(-2), u_minus(2), u_minus(-2), OMEGA, OMEGA.inv())
GAMMA2_GENS = (u(2), u(-2), u_minus(2), u_minus(-2))


def walk(rng: random.Random, gens, length: int, allow_minus: bool = True) -> Mat2:
    m = IDENT
    for _ in range(rng.randint(1, length)):
        m = m @ rng.choice(gens)
    if allow_minus and rng.random() < 0.25:
        m = -m
    return m


def rand_sl2z(rng, length=12):
    return walk(rng, SL2_GENS, length)


def rand_theta(rng, length=12):
    return walk(rng, THETA_GENS, length)


def rand_gamma2(rng, length=10):
    return walk(rng, GAMMA2_GENS, length)


def rand_sl2z_bounded(rng, bound, length=14):
    while True:
        m = rand_sl2z(rng, length)
        if max(abs(int(v)) for v in m.entries()) <= bound:
            return m


def rand_member(rng, pred, length=16, gens=SL2_GENS):
    while True:
        m = walk(rng, gens, length)
        if pred(m):
            return m


_SCALES = (1, 2, 3, 5, Fraction(1, 2), Fraction(3, 4), Fraction(5, 3))


def rand_gl2q(rng, length=8):
    """Invertible rational 2x2 matrix, determinant of either sign."""
    y = rng.choice(_SCALES) * rng.choice((1, -1))
    return s_scale(y) @ rand_sl2z(rng, length)


def pool(count, maker, seed):
    """A reusable fixed pool of samples (amortizes the walk cost)."""
    rng = random.Random(seed)
    return [maker(rng) for _ in range(count)]
