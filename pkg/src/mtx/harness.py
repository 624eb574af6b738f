"""Randomized verification harness for the transformation laws.

Each verification draws group elements with controlled lower rows, picks
evaluation points whose images stay safely inside the convergence region,
evaluates both sides of a transformation identity, and records worst-case
deviations.  Sampling is fully deterministic: sample ``i`` of a run with
seed ``s`` is generated by ``random.Random(s * 2**32 + i)``, so two runs
with the same arguments produce byte-identical reports.

Deviation convention: each comparison reports the raw entrywise absolute
deviation and an "effective" deviation, which is relative when the
reference side is larger than 1e-6 in absolute value and absolute
otherwise.  A check passes when every effective deviation stays within the
tolerance configured for its law.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from .cocycle import sqrt_branch
from .errors import InvalidParams
from .exactmat import H_MINUS1, Mat2, is_member
from .exactphase import UnitCircleExact
from .induction import induced_matrix, induced_matrix_pm, lambda_pm, tensor_character
from .metagroup import MetaElem, meta_inv, meta_lift, meta_mul
from .multiplier import MultiplierId, lambda_bar_chi, lambda_theta, nu_table
from .numth import DirichletChar, char_mod4, legendre_char, trivial_char
from .theta import (
    ThetaSpec,
    eta,
    gamma2_sign,
    j_delta,
    j_kappa,
    theta_matrix_pm,
    theta_series,
    theta_vector,
    theta_vector_pm,
)

__all__ = [
    "TAGS",
    "TheoremId",
    "VerificationReport",
    "character_by_name",
    "sample_member",
    "sample_point",
    "check_theorem",
    "default_suite",
    "run_all",
    "reports_to_json",
]

TAGS = (
    "Shimura_Gamma04",
    "LionVergne_GammaTheta",
    "MainThm1",
    "MainThm1Bar",
    "MainTheorem1_Vector",
    "TensorInduction",
    "ExamThetaN_t",
    "ExamThetaM_t",
    "ExamThetaF_t",
    "Eta3Product",
    "Eta12Sign",
    "PMTheta",
    "PMVector",
)

_CHAR_NAMES = ("trivial", "legendre3", "chi4")

_SCALE_FLOOR = 1e-6


def character_by_name(name: str) -> DirichletChar:
    """Return one of the registry characters: trivial, legendre3, chi4."""
    if name == "trivial":
        return trivial_char()
    if name == "legendre3":
        return legendre_char(3)
    if name == "chi4":
        return char_mod4()
    raise InvalidParams("unknown character name: %r (expected one of %s)"
                        % (name, ", ".join(_CHAR_NAMES)))


@dataclass(frozen=True)
class TheoremId:
    """Names one transformation law instance (tag plus parameters)."""

    tag: str
    n: int = 1
    chi: str = "trivial"
    kappa: int = 1
    t: int = 1
    delta: str = "+"

    def __post_init__(self):
        if self.tag not in TAGS:
            raise InvalidParams("unknown theorem tag: %r" % (self.tag,))
        if not (isinstance(self.n, int) and self.n >= 1):
            raise InvalidParams("n must be a positive integer")
        if not (isinstance(self.t, int) and self.t >= 1):
            raise InvalidParams("t must be a positive integer")
        if self.kappa not in (1, 3):
            raise InvalidParams("kappa must be 1 or 3")
        if self.delta not in ("+", "-"):
            raise InvalidParams("delta must be '+' or '-'")
        chi = character_by_name(self.chi)
        if chi.modulus != self.n:
            raise InvalidParams("character modulus %d does not match n=%d"
                                % (chi.modulus, self.n))
        want = 1 if chi.is_even() else 3
        if self.kappa != want:
            raise InvalidParams("kappa=%d inconsistent with character parity"
                                % (self.kappa,))

    def character(self) -> DirichletChar:
        return character_by_name(self.chi)


@dataclass
class VerificationReport:
    theorem: TheoremId
    samples: int
    seed: int
    max_abs_dev: float
    max_rel_dev: float
    passed: bool
    failures: List[dict]

    def to_dict(self) -> dict:
        # Key order is part of the report format.
        return {
            "theorem": asdict(self.theorem),
            "samples": self.samples,
            "seed": self.seed,
            "max_abs_dev": self.max_abs_dev,
            "max_rel_dev": self.max_rel_dev,
            "pass": self.passed,
            "failures": self.failures,
        }


def reports_to_json(reports: List[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _complete_row(c: int, d: int) -> Optional[Mat2]:
    """Integral matrix with bottom row (c, d) and determinant one."""
    g, x, y = _egcd(c, d)
    if g == -1:
        g, x, y = 1, -x, -y
    if g != 1:
        return None
    return Mat2(y, -x, c, d)  # det = y*d + x*c = 1


def _c_win(c_mod: int) -> int:
    # Keep |c| <= ~110 so that sample_point can always find a usable point.
    return max(2, min(40, 108 // c_mod))


def sample_member(rng: random.Random, pred: Callable[[Mat2], bool],
                  c_mod: int = 1, c_win: Optional[int] = None,
                  d_win: int = 28, shifts: int = 2) -> Mat2:
    """Draw an integral determinant-one matrix satisfying ``pred``.

    The lower-left entry is a multiple of ``c_mod``; the top row is
    completed by the extended Euclid algorithm and then shifted by small
    multiples of the bottom row until the predicate accepts (this reaches
    every parity class of the top row).
    """
    if c_win is None:
        c_win = _c_win(c_mod)
    while True:
        c = c_mod * rng.randint(-c_win, c_win)
        d = rng.randint(-d_win, d_win)
        if math.gcd(abs(c), abs(d)) != 1:
            continue
        m = _complete_row(c, d)
        if m is None:
            continue
        ks = list(range(-shifts, shifts + 1))
        rng.shuffle(ks)
        for k in ks:
            cand = Mat2(m.a + k * c, m.b + k * d, c, d)
            if pred(cand):
                return cand


def sample_point(rng: random.Random, g: Mat2) -> complex:
    """Point z in the upper half-plane with Im(g z) bounded below.

    For c != 0 the real part is drawn near the pole -d/c but the imaginary
    part is capped so that Im(g z) = Im(z)/|cz+d|^2 stays above ~1.7e-3,
    comfortably inside the series convergence guard.  Needs |c| <= ~110.
    """
    c, d = float(g.c), float(g.d)
    if c == 0.0:
        return complex(rng.uniform(-1.0, 1.0), rng.uniform(0.6, 1.3))
    y = rng.uniform(0.55, 0.95)
    cap = 1.0 / (4e-3 * c * c)
    if y > cap:
        y = cap * rng.uniform(0.6, 0.99)
    spread = math.sqrt(y / 1.5e-3 - c * c * y * y)
    x = (-d + rng.uniform(-0.9 * spread, 0.9 * spread)) / c
    return complex(x, y)


def _rand_sign(rng: random.Random) -> UnitCircleExact:
    return UnitCircleExact.from_sign(rng.choice((1, -1)))


def _vector_c_mod(n: int) -> int:
    # For even n the scalar law only holds on the even sheet of c / n^2;
    # see _theta_c_mod.
    return _theta_c_mod(n)


def _theta_c_mod(n: int) -> int:
    # For even n the stated multiplier is exact when c = 0 mod 2n^2; on the
    # odd sheet (c = n^2 mod 2n^2) the series picks up an extra sign
    # (-1)^(c/n^2), which the verification domain excludes.  Odd n has no
    # such sheet splitting.
    if n == 1:
        return 1
    return n * n if n % 2 else 2 * n * n


def _fmt_mat(g: Mat2) -> str:
    return ",".join(str(v) for v in g.entries())


def _devs(lhs, rhs) -> Tuple[float, float]:
    l = np.asarray(lhs, dtype=complex)
    r = np.asarray(rhs, dtype=complex)
    abs_dev = float(np.max(np.abs(l - r)))
    scale = float(np.max(np.abs(r)))
    eff = abs_dev / scale if scale > _SCALE_FLOOR else abs_dev
    return abs_dev, eff


def _conditioned(draw: Callable[[], complex],
                 pair: Callable[[complex], Tuple[object, object]],
                 tries: int = 8) -> Tuple[complex, object, object]:
    """Draw an evaluation point, retrying ones where the reference side is
    tiny (|rhs| < 1e-3): near a zero of the series both sides are pure
    cancellation noise and neither the relative nor the absolute regime
    measures the law.  Retries consume the same deterministic stream."""
    z = draw()
    lhs, rhs = pair(z)
    for _ in range(tries - 1):
        if float(np.max(np.abs(np.asarray(rhs)))) >= 1e-3:
            break
        z = draw()
        lhs, rhs = pair(z)
    return z, lhs, rhs


# ---------------------------------------------------------------------------
# law handlers: each yields (abs_dev, eff_dev, detail) per evaluation point
# ---------------------------------------------------------------------------

_PointIter = Iterator[Tuple[float, float, dict]]


def _scalar_rhs(mult: complex, czd: complex, kappa: int, base: complex) -> complex:
    val = mult * sqrt_branch(czd) * base
    if kappa == 3:
        val *= czd
    return val


def _scalar_points(rng: random.Random, r: Mat2, spec: ThetaSpec,
                   mult: complex, kappa: int, zs: int) -> _PointIter:
    def pair(z: complex):
        czd = complex(r.c) * z + complex(r.d)
        return (theta_series(spec, r.act(z)),
                _scalar_rhs(mult, czd, kappa, theta_series(spec, z)))

    for _ in range(zs):
        z, lhs, rhs = _conditioned(lambda: sample_point(rng, r), pair)
        a, e = _devs(lhs, rhs)
        yield a, e, {"element": _fmt_mat(r), "z": [z.real, z.imag]}


def _h_shimura(tid: TheoremId, chi: DirichletChar, rng: random.Random,
               zs: int) -> _PointIter:
    spec = ThetaSpec(variant="plain", kappa=1, chi=chi, t=2)
    r = sample_member(rng, lambda m: is_member(m, "Gamma0(4)"), c_mod=4)
    mult = nu_table(MultiplierId("nu_theta_t", 2), r).to_complex()
    yield from _scalar_points(rng, r, spec, mult, 1, zs)


def _h_lion_vergne(tid: TheoremId, chi: DirichletChar, rng: random.Random,
                   zs: int) -> _PointIter:
    spec = ThetaSpec(variant="plain", kappa=1, chi=chi, t=1)
    r = sample_member(rng, lambda m: is_member(m, "GammaTheta"), c_mod=1,
                      c_win=40)
    mult = lambda_theta(r).to_complex()
    yield from _scalar_points(rng, r, spec, mult, 1, zs)


def _h_mainthm1(tid: TheoremId, chi: DirichletChar, rng: random.Random,
                zs: int) -> _PointIter:
    spec = ThetaSpec(variant="plain", kappa=tid.kappa, chi=chi, t=1)
    r = sample_member(rng, lambda m: is_member(m, "GammaTheta"),
                      c_mod=_theta_c_mod(tid.n))
    mult = (chi(int(r.d)) * lambda_theta(r)).to_complex()
    yield from _scalar_points(rng, r, spec, mult, tid.kappa, zs)


def _h_mainthm1_bar(tid: TheoremId, chi: DirichletChar, rng: random.Random,
                    zs: int) -> _PointIter:
    spec = ThetaSpec(variant="plain", kappa=tid.kappa, chi=chi, t=1)
    r = sample_member(rng, lambda m: is_member(m, "GammaTheta"),
                      c_mod=_theta_c_mod(tid.n))
    x = meta_lift("bar", r, _rand_sign(rng))
    mult = lambda_bar_chi(x, chi).to_complex()

    def pair(z: complex):
        return (theta_series(spec, x.g.act(z)),
                mult * j_kappa(x, z, tid.kappa) * theta_series(spec, z))

    for _ in range(zs):
        z, lhs, rhs = _conditioned(lambda: sample_point(rng, r), pair)
        a, e = _devs(lhs, rhs)
        yield a, e, {"element": _fmt_mat(r), "eps": str(x.eps.q),
                     "z": [z.real, z.imag]}


def _gamma0_pred(n: int) -> Callable[[Mat2], bool]:
    if n == 1:
        return lambda m: is_member(m, "SL2Z")
    return lambda m: is_member(m, "Gamma0(%d)" % (n * n,))


def _h_vector(tid: TheoremId, chi: DirichletChar, rng: random.Random,
              zs: int) -> _PointIter:
    n, kappa = tid.n, tid.kappa
    r = sample_member(rng, _gamma0_pred(n), c_mod=_vector_c_mod(n),
                      c_win=40 if n == 1 else None)
    x = meta_lift("bar", r, _rand_sign(rng))
    gam = induced_matrix(meta_inv(x), n, chi).to_dense()

    def pair(z: complex):
        return (theta_vector(n, chi, kappa, r.act(z)),
                j_kappa(x, z, kappa) * (theta_vector(n, chi, kappa, z) @ gam))

    for _ in range(zs):
        z, lhs, rhs = _conditioned(lambda: sample_point(rng, r), pair)
        a, e = _devs(lhs, rhs)
        yield a, e, {"element": _fmt_mat(r), "eps": str(x.eps.q),
                     "z": [z.real, z.imag]}


def _h_tensor(tid: TheoremId, chi: DirichletChar, rng: random.Random,
              zs: int) -> _PointIter:
    n, kappa = tid.n, tid.kappa
    expo = 3 if n % 2 else 2
    r = sample_member(rng, _gamma0_pred(n),
                      c_mod=1 if n == 1 else n * n,
                      c_win=40 if n == 1 else None)
    x = meta_lift("bar", r, _rand_sign(rng))
    tchar = tensor_character(x, n, chi).to_complex()

    def pair(z: complex):
        return (complex(np.prod(theta_vector(n, chi, kappa, r.act(z)))),
                j_kappa(x, z, kappa) ** expo
                * complex(np.prod(theta_vector(n, chi, kappa, z))) * tchar)

    for _ in range(zs):
        z, lhs, rhs = _conditioned(lambda: sample_point(rng, r), pair)
        a, e = _devs(lhs, rhs)
        yield a, e, {"element": _fmt_mat(r), "eps": str(x.eps.q),
                     "z": [z.real, z.imag]}


_FAMILY_GROUP = {
    "ExamThetaN_t": ("GammaTheta", "plain", "nu_theta_t"),
    "ExamThetaM_t": ("GammaUpper0(2)", "minus", "nu_thetaM_t"),
    "ExamThetaF_t": ("Gamma0(2)", "fermionic", "nu_thetaF_t"),
}


def _h_exam_family(tid: TheoremId, chi: DirichletChar, rng: random.Random,
                   zs: int) -> _PointIter:
    group_tag, variant, mid_tag = _FAMILY_GROUP[tid.tag]
    n, t, kappa = tid.n, tid.t, tid.kappa
    nsq = n * n

    def pred(m: Mat2) -> bool:
        s = Mat2(m.a, m.b * t, Fraction(m.c, t) if t > 1 else m.c, m.d)
        return s.is_integral() and is_member(s, group_tag)

    r = sample_member(rng, pred, c_mod=t * nsq)
    mult = (nu_table(MultiplierId(mid_tag, t), r) * chi(int(r.d))).to_complex()
    spec = ThetaSpec(variant=variant, kappa=kappa, chi=chi, t=t)
    yield from _scalar_points(rng, r, spec, mult, kappa, zs)


def _h_eta3(tid: TheoremId, chi: DirichletChar, rng: random.Random,
            zs: int) -> _PointIter:
    specs = [ThetaSpec(variant=v, kappa=1, chi=chi, t=2)
             for v in ("minus", "plain", "fermionic")]
    for _ in range(max(zs, 1)):
        z = complex(rng.uniform(-1.0, 1.0), rng.uniform(0.08, 1.4))
        half = z / 2.0
        lhs = 1.0 + 0.0j
        for spec in specs:
            lhs *= theta_series(spec, half)
        rhs = 2.0 * eta(z) ** 3
        a, e = _devs(lhs, rhs)
        yield a, e, {"z": [z.real, z.imag]}


def _h_eta12(tid: TheoremId, chi: DirichletChar, rng: random.Random,
             zs: int) -> _PointIter:
    g = sample_member(rng, lambda m: is_member(m, "SL2Z"), c_mod=1, c_win=40)
    sgn = gamma2_sign(g).to_complex()

    def pair(z: complex):
        czd = complex(g.c) * z + complex(g.d)
        return eta(g.act(z)) ** 12, czd ** 6 * eta(z) ** 12 * sgn

    for _ in range(zs):
        z, lhs, rhs = _conditioned(lambda: sample_point(rng, g), pair)
        a, e = _devs(lhs, rhs)
        yield a, e, {"element": _fmt_mat(g), "z": [z.real, z.imag]}


def _sample_pm(rng: random.Random, base_pred: Callable[[Mat2], bool],
               c_mod: int, c_win: Optional[int] = None) -> MetaElem:
    g = sample_member(rng, base_pred, c_mod=c_mod, c_win=c_win)
    x = meta_lift("bar", g, _rand_sign(rng))
    if rng.random() < 0.5:
        x = meta_mul(meta_lift("bar", H_MINUS1), x)
    return x


def _h_pm_theta(tid: TheoremId, chi: DirichletChar, rng: random.Random,
                zs: int) -> _PointIter:
    n, delta = tid.n, tid.delta
    x = _sample_pm(rng, lambda m: is_member(m, "GammaTheta"),
                   c_mod=_theta_c_mod(n), c_win=20 if n == 1 else None)
    lam = lambda_pm(meta_inv(x), chi).to_dense()
    pos = x.g if x.g.det() == 1 else (H_MINUS1 @ x.g)

    def pair(z: complex):
        return (theta_matrix_pm(chi, delta, x.g.act(z)),
                j_delta(x, z, delta) @ theta_matrix_pm(chi, delta, z) @ lam)

    for idx in range(zs):
        lower = idx % 2 == 1  # exercise the lower half-plane too

        def draw():
            z = sample_point(rng, pos)
            return z.conjugate() if lower else z

        z, lhs, rhs = _conditioned(draw, pair)
        a, e = _devs(lhs, rhs)
        yield a, e, {"element": _fmt_mat(x.g), "eps": str(x.eps.q),
                     "z": [z.real, z.imag]}


def _h_pm_vector(tid: TheoremId, chi: DirichletChar, rng: random.Random,
                 zs: int) -> _PointIter:
    n, delta = tid.n, tid.delta
    x = _sample_pm(rng, _gamma0_pred(n), c_mod=_vector_c_mod(n),
                   c_win=20 if n == 1 else None)
    gam = induced_matrix_pm(meta_inv(x), n, chi).to_dense()
    pos = x.g if x.g.det() == 1 else (H_MINUS1 @ x.g)

    def pair(z: complex):
        return (theta_vector_pm(n, chi, delta, x.g.act(z)),
                j_delta(x, z, delta) @ theta_vector_pm(n, chi, delta, z) @ gam)

    for idx in range(zs):
        lower = idx % 2 == 1

        def draw():
            z = sample_point(rng, pos)
            return z.conjugate() if lower else z

        z, lhs, rhs = _conditioned(draw, pair)
        a, e = _devs(lhs, rhs)
        yield a, e, {"element": _fmt_mat(x.g), "eps": str(x.eps.q),
                     "z": [z.real, z.imag]}


_HANDLERS: Dict[str, Callable] = {
    "Shimura_Gamma04": _h_shimura,
    "LionVergne_GammaTheta": _h_lion_vergne,
    "MainThm1": _h_mainthm1,
    "MainThm1Bar": _h_mainthm1_bar,
    "MainTheorem1_Vector": _h_vector,
    "TensorInduction": _h_tensor,
    "ExamThetaN_t": _h_exam_family,
    "ExamThetaM_t": _h_exam_family,
    "ExamThetaF_t": _h_exam_family,
    "Eta3Product": _h_eta3,
    "Eta12Sign": _h_eta12,
    "PMTheta": _h_pm_theta,
    "PMVector": _h_pm_vector,
}

# (quick samples, full samples, quick zs, full zs, tolerance)
_CONFIG: Dict[str, Tuple[int, int, int, int, float]] = {
    "Shimura_Gamma04": (60, 1000, 3, 10, 1e-9),
    "LionVergne_GammaTheta": (60, 1000, 3, 10, 1e-9),
    "MainThm1": (40, 300, 2, 3, 1e-9),
    "MainThm1Bar": (40, 300, 2, 3, 1e-9),
    "MainTheorem1_Vector": (30, 150, 2, 2, 1e-9),
    "TensorInduction": (30, 150, 2, 2, 1e-9),
    "ExamThetaN_t": (30, 100, 2, 3, 1e-9),
    "ExamThetaM_t": (30, 100, 2, 3, 1e-9),
    "ExamThetaF_t": (30, 100, 2, 3, 1e-9),
    "Eta3Product": (20, 40, 1, 1, 1e-10),
    "Eta12Sign": (60, 1000, 1, 2, 1e-9),
    "PMTheta": (30, 120, 2, 2, 1e-9),
    "PMVector": (24, 100, 2, 2, 1e-9),
}


def check_theorem(tid: TheoremId, samples: Optional[int] = None,
                  zs: Optional[int] = None, tol: Optional[float] = None,
                  seed: int = 0, profile: str = "quick") -> VerificationReport:
    """Verify one law instance; see the module docstring for conventions."""
    if profile not in ("quick", "full"):
        raise InvalidParams("profile must be 'quick' or 'full'")
    q_s, f_s, q_z, f_z, cfg_tol = _CONFIG[tid.tag]
    if samples is None:
        samples = q_s if profile == "quick" else f_s
    if zs is None:
        zs = q_z if profile == "quick" else f_z
    if tol is None:
        tol = cfg_tol
    handler = _HANDLERS[tid.tag]
    chi = tid.character()
    max_abs = 0.0
    max_rel = 0.0
    failures: List[dict] = []
    for i in range(samples):
        rng = random.Random(seed * (1 << 32) + i)
        for abs_dev, eff_dev, detail in handler(tid, chi, rng, zs):
            max_abs = max(max_abs, abs_dev)
            max_rel = max(max_rel, eff_dev)
            if eff_dev > tol and len(failures) < 8:
                failures.append(dict(index=i, abs_dev=abs_dev,
                                     rel_dev=eff_dev, **detail))
    return VerificationReport(theorem=tid, samples=samples, seed=seed,
                              max_abs_dev=max_abs, max_rel_dev=max_rel,
                              passed=max_rel <= tol, failures=failures)


def default_suite() -> List[TheoremId]:
    """Every law instance exercised by ``run_all``."""
    triples = ((1, "trivial", 1), (3, "legendre3", 3), (4, "chi4", 3))
    ids: List[TheoremId] = [
        TheoremId("Shimura_Gamma04", t=2),
        TheoremId("LionVergne_GammaTheta"),
    ]
    for tag in ("MainThm1", "MainThm1Bar", "MainTheorem1_Vector",
                "TensorInduction"):
        for n, chi, kap in triples:
            ids.append(TheoremId(tag, n=n, chi=chi, kappa=kap))
    for tag in ("ExamThetaN_t", "ExamThetaM_t", "ExamThetaF_t"):
        for n, chi, kap in ((1, "trivial", 1), (3, "legendre3", 3)):
            for t in (1, 2, 3):
                ids.append(TheoremId(tag, n=n, chi=chi, kappa=kap, t=t))
    ids.append(TheoremId("Eta3Product"))
    ids.append(TheoremId("Eta12Sign"))
    for n, chi, kap, dl in ((1, "trivial", 1, "+"), (3, "legendre3", 3, "-")):
        ids.append(TheoremId("PMTheta", n=n, chi=chi, kappa=kap, delta=dl))
        ids.append(TheoremId("PMVector", n=n, chi=chi, kappa=kap, delta=dl))
    return ids


def run_all(profile: str = "quick", seed: int = 0) -> List[VerificationReport]:
    return [check_theorem(tid, seed=seed, profile=profile)
            for tid in default_suite()]
