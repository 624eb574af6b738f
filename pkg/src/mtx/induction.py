"""Monomial matrices induced from the theta-group cosets.

The index of the theta group (intersected with Gamma0(N^2)) inside Gamma0(N^2)
is 3 for odd N and 2 for even N; inducing the rank-one character lambda_bar_chi
through those cosets yields monomial matrices with exact root-of-unity entries.
This module implements the coset bookkeeping (``classify``), the induced
matrix, the transfer-map character (the "determinant without the sign"), and
the determinant-(+-1) block versions used by the two-component series.

Index conventions: coset indices in the public API are 1-based (q_1, q_2,
q_3); inside MonomialMatrix the permutation is 0-based and column-oriented
(column j has its unique nonzero entry in row perm[j]).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import InvalidParams, KindMismatch, NotInGroup
from .exactmat import (
    H_MINUS1,
    Mat2,
    in_theta_gamma0,
    in_theta_gamma0_pm,
    is_member,
    theta_coset_index,
    theta_coset_reps,
)
from .exactphase import ONE, UnitCircleExact
from .metagroup import MetaElem, meta_conj, meta_inv, meta_lift, meta_mul
from .multiplier import lambda_bar_chi
from .numth import DirichletChar

__all__ = [
    "BlockMonomialMatrix",
    "MonomialMatrix",
    "classify",
    "coset_reps",
    "induced_matrix",
    "induced_matrix_pm",
    "lambda_pm",
    "tensor_character",
]


# -- exact monomial matrices ---------------------------------------------------


@dataclass(frozen=True)
class MonomialMatrix:
    """Exactly one nonzero root-of-unity entry per row and column."""

    dimension: int
    perm: Tuple[int, ...]  # column j -> row perm[j]
    diag: Tuple[UnitCircleExact, ...]  # column j -> its nonzero value

    def __post_init__(self):
        if sorted(self.perm) != list(range(self.dimension)) or len(self.diag) != self.dimension:
            raise InvalidParams("not a monomial shape")

    @staticmethod
    def identity(k: int) -> "MonomialMatrix":
        return MonomialMatrix(k, tuple(range(k)), (ONE,) * k)

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if self.dimension != other.dimension:
            raise InvalidParams("dimension mismatch")
        perm = tuple(self.perm[other.perm[j]] for j in range(self.dimension))
        diag = tuple(self.diag[other.perm[j]] * other.diag[j] for j in range(self.dimension))
        return MonomialMatrix(self.dimension, perm, diag)

    def scale(self, s: UnitCircleExact) -> "MonomialMatrix":
        return MonomialMatrix(self.dimension, self.perm, tuple(s * v for v in self.diag))

    def entry(self, i: int, j: int) -> Optional[UnitCircleExact]:
        return self.diag[j] if self.perm[j] == i else None

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dimension, self.dimension), dtype=complex)
        for j in range(self.dimension):
            out[self.perm[j], j] = self.diag[j].to_complex()
        return out

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "diag": [str(v.q) for v in self.diag]}


@dataclass(frozen=True)
class BlockMonomialMatrix:
    """Block-monomial with 2x2 monomial blocks; global layout is
    (coset, sign-sheet) lexicographic, so block (i, j) occupies rows
    2i..2i+1 and columns 2j..2j+1."""

    blocks_count: int
    block_perm: Tuple[int, ...]  # block-column j -> block-row block_perm[j]
    blocks: Tuple[MonomialMatrix, ...]  # block-column j -> its 2x2 block

    def __post_init__(self):
        if sorted(self.block_perm) != list(range(self.blocks_count)):
            raise InvalidParams("not a block-monomial shape")
        if any(b.dimension != 2 for b in self.blocks) or len(self.blocks) != self.blocks_count:
            raise InvalidParams("blocks must be 2x2")

    @staticmethod
    def identity(k: int) -> "BlockMonomialMatrix":
        return BlockMonomialMatrix(k, tuple(range(k)), (MonomialMatrix.identity(2),) * k)

    def __matmul__(self, other: "BlockMonomialMatrix") -> "BlockMonomialMatrix":
        if self.blocks_count != other.blocks_count:
            raise InvalidParams("block count mismatch")
        perm = tuple(self.block_perm[other.block_perm[j]] for j in range(self.blocks_count))
        blocks = tuple(
            self.blocks[other.block_perm[j]] @ other.blocks[j] for j in range(self.blocks_count)
        )
        return BlockMonomialMatrix(self.blocks_count, perm, blocks)

    def scale(self, s: UnitCircleExact) -> "BlockMonomialMatrix":
        return BlockMonomialMatrix(self.blocks_count, self.block_perm, tuple(b.scale(s) for b in self.blocks))

    def to_dense(self) -> np.ndarray:
        k = self.blocks_count
        out = np.zeros((2 * k, 2 * k), dtype=complex)
        for j in range(k):
            i = self.block_perm[j]
            out[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = self.blocks[j].to_dense()
        return out


# -- coset bookkeeping ----------------------------------------------------------


def coset_reps(n: int) -> list:
    """Bar lifts of the theta-coset representatives inside Gamma0(n^2)."""
    if n < 1:
        raise InvalidParams("n must be positive")
    return [meta_lift("bar", q, ONE) for q in theta_coset_reps(n)]


def _require_bar_over(gbar: MetaElem, n: int, pm: bool = False):
    if gbar.kind != "bar":
        raise KindMismatch("coset machinery lives on the Bar cover")
    g = gbar.g
    n_sq = n * n
    if pm:
        ok = g.is_integral() and g.det() in (1, -1) and int(g.c) % n_sq == 0
    else:
        ok = is_member(g, f"Gamma0({n_sq})")
    if not ok:
        raise NotInGroup(f"not over Gamma0({n_sq}): {g!r}")


def classify(gbar: MetaElem, i: int, n: int, chi: Optional[DirichletChar] = None) -> Tuple[int, MetaElem]:
    """Solve M_{q_i} * gbar = sbar * M_{q_j}; returns (j, sbar), 1-based i, j.

    sbar carries the full mu_2 bookkeeping (computed with meta products); its
    matrix part always lies in Gamma_theta n Gamma0(n^2).  chi is accepted for
    signature parity with the induced ops; classification does not depend on it.
    """
    _require_bar_over(gbar, n)
    reps = coset_reps(n)
    if not 1 <= i <= len(reps):
        raise InvalidParams(f"coset index {i} out of range")
    prod = meta_mul(reps[i - 1], gbar)
    j, _ = theta_coset_index(prod.g, n)
    sbar = meta_mul(prod, meta_inv(reps[j - 1]))
    return j, sbar


def induced_matrix(gbar: MetaElem, n: int, chi: Optional[DirichletChar] = None) -> MonomialMatrix:
    """Monomial matrix of the induced character: entry lambda_bar_chi(sbar)^{-1}
    in row i, column j, with (j, sbar) = classify(gbar, i)."""
    _require_bar_over(gbar, n)
    k = len(theta_coset_reps(n))
    perm = [None] * k
    diag = [None] * k
    for i in range(1, k + 1):
        j, sbar = classify(gbar, i, n)
        perm[j - 1] = i - 1
        diag[j - 1] = lambda_bar_chi(sbar, chi).inv()
    return MonomialMatrix(k, tuple(perm), tuple(diag))


def tensor_character(gbar: MetaElem, n: int, chi: Optional[DirichletChar] = None) -> UnitCircleExact:
    """Transfer-map character: the product of lambda_bar_chi over the coset
    factors.  A genuine (abelian) character of the Bar cover of Gamma0(n^2)."""
    _require_bar_over(gbar, n)
    k = len(theta_coset_reps(n))
    val = ONE
    for i in range(1, k + 1):
        _, sbar = classify(gbar, i, n)
        val = val * lambda_bar_chi(sbar, chi)
    return val


# -- determinant +-1 versions ----------------------------------------------------

_SWAP = MonomialMatrix(2, (1, 0), (ONE, ONE))


def lambda_pm(x: MetaElem, chi: Optional[DirichletChar] = None) -> MonomialMatrix:
    """Two-dimensional representation of the Bar cover of the +-1-determinant
    theta group: det-1 lifts go to diag(lambda_bar_chi(x)^{-1},
    lambda_bar_chi(x^{h_-1})^{-1}), and [h_-1, 1] goes to the swap."""
    if x.kind != "bar":
        raise KindMismatch("lambda_pm lives on the Bar cover")
    n_sq = 1 if chi is None else chi.modulus * chi.modulus
    det = x.g.det()
    if det == 1:
        if not in_theta_gamma0(x.g, n_sq):
            raise NotInGroup(f"not in Gamma_theta n Gamma0({n_sq}): {x.g!r}")
        v1 = lambda_bar_chi(x, chi).inv()
        v2 = lambda_bar_chi(meta_conj(x, H_MINUS1), chi).inv()
        return MonomialMatrix(2, (0, 1), (v1, v2))
    if det == -1:
        if not in_theta_gamma0_pm(x.g, n_sq):
            raise NotInGroup(f"not in the +-1 theta group mod {n_sq}: {x.g!r}")
        hm1 = meta_lift("bar", H_MINUS1, ONE)  # self-inverse in the Bar cover
        return _SWAP @ lambda_pm(meta_mul(hm1, x), chi)
    raise NotInGroup(f"det must be +-1, got {det}")


def _coset_index_pm(g: Mat2, n: int) -> int:
    hits = [
        i
        for i, q in enumerate(theta_coset_reps(n), start=1)
        if in_theta_gamma0_pm(g @ q.inv(), n * n)
    ]
    if len(hits) != 1:
        raise NotInGroup(f"{g} has {len(hits)} matching +- cosets at N={n}")
    return hits[0]


def induced_matrix_pm(gbar: MetaElem, n: int, chi: Optional[DirichletChar] = None) -> BlockMonomialMatrix:
    """Block version of induced_matrix with lambda_pm blocks; same coset
    bookkeeping, determinant of gbar may be -1."""
    _require_bar_over(gbar, n, pm=True)
    reps = coset_reps(n)
    k = len(reps)
    perm = [None] * k
    blocks = [None] * k
    for i in range(1, k + 1):
        prod = meta_mul(reps[i - 1], gbar)
        j = _coset_index_pm(prod.g, n)
        sbar = meta_mul(prod, meta_inv(reps[j - 1]))
        perm[j - 1] = i - 1
        blocks[j - 1] = lambda_pm(sbar, chi)
    return BlockMonomialMatrix(k, tuple(perm), tuple(blocks))
