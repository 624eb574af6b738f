"""Command-line front end.

Subcommands::

    mtx cocycle <kind> <g1> <g2>      two-cocycle value for a cover kind
    mtx multiplier <id> <r>           multiplier system value at r
    mtx theta <variant> [options]     evaluate a theta series
    mtx eta --z <re,im>               evaluate the eta product
    mtx verify <theorem|all> [opts]   run randomized law verification
    mtx report --out <path> [opts]    write the verification report JSON

Matrices are given as "a,b,c,d" with rational entries (e.g. "1,1/2,0,1").
Points are given as "re,im".  Theta/eta evaluations print a JSON object
with keys re, im, tol, terms_used.  ``verify`` and ``report`` exit with
status 0 exactly when every check passes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from .cocycle import big_cocycle
from .errors import MtxError
from .exactmat import Mat2
from .exactphase import UnitCircleExact
from .harness import (
    TAGS,
    TheoremId,
    VerificationReport,
    character_by_name,
    check_theorem,
    default_suite,
    reports_to_json,
)
from .multiplier import MultiplierId, nu_table
from .numth import DirichletChar
from .theta import (
    DEFAULT_TOL,
    ThetaSpec,
    eta,
    eta_cutoff,
    theta_series,
    truncation_cutoff,
)


def _parse_mat(text: str) -> Mat2:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError("matrix must be written as a,b,c,d")
    return Mat2(*(Fraction(p.strip()) for p in parts))


def _parse_z(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError("point must be written as re,im")
    return complex(float(parts[0]), float(parts[1]))


def _print_value(value, extra: Optional[dict] = None) -> None:
    out = dict(extra or {})
    if isinstance(value, UnitCircleExact):
        out["re"] = value.to_complex().real
        out["im"] = value.to_complex().imag
        out["pi_exponent"] = [value.q.numerator, value.q.denominator]
    else:
        value = complex(value)
        out["re"] = value.real
        out["im"] = value.imag
    print(json.dumps(out))


def _cmd_cocycle(args) -> int:
    g1 = _parse_mat(args.g1)
    g2 = _parse_mat(args.g2)
    value = big_cocycle(args.kind, g1, g2)
    _print_value(value, {"kind": args.kind})
    return 0


_MULTIPLIER_TAGS = ("lambda", "nu_theta_t", "nu_thetaM_t", "nu_thetaF_t",
                    "delta_M", "delta_F")


def _parse_multiplier_id(text: str) -> MultiplierId:
    tag, _, t_text = text.partition(":")
    t = int(t_text) if t_text else 1
    if tag not in _MULTIPLIER_TAGS:
        raise ValueError("multiplier id must be one of %s, optionally with"
                         " ':t' appended" % (", ".join(_MULTIPLIER_TAGS),))
    return MultiplierId(tag, t)


def _cmd_multiplier(args) -> int:
    mid = _parse_multiplier_id(args.id)
    r = _parse_mat(args.r)
    value = nu_table(mid, r)
    _print_value(value, {"id": args.id})
    return 0


def _load_char(text: str) -> DirichletChar:
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            return DirichletChar.from_json(json.load(fh))
    return character_by_name(text)


def _cmd_theta(args) -> int:
    chi = _load_char(args.chi)
    spec = ThetaSpec(variant=args.variant, kappa=args.kappa, chi=chi, t=args.t)
    z = _parse_z(args.z)
    value = theta_series(spec, z, tol=args.tol)
    cutoff = truncation_cutoff(args.t, z.imag, args.tol)
    print(json.dumps({"re": value.real, "im": value.imag, "tol": args.tol,
                      "terms_used": 2 * cutoff + 1}))
    return 0


def _cmd_eta(args) -> int:
    z = _parse_z(args.z)
    value = eta(z, tol=args.tol)
    print(json.dumps({"re": value.real, "im": value.imag, "tol": args.tol,
                      "terms_used": eta_cutoff(z.imag, args.tol)}))
    return 0


def _select_ids(target: str) -> List[TheoremId]:
    suite = default_suite()
    if target == "all":
        return suite
    if target not in TAGS:
        raise ValueError("unknown theorem %r; expected 'all' or one of: %s"
                         % (target, ", ".join(TAGS)))
    return [tid for tid in suite if tid.tag == target]


def _report_line(rep: VerificationReport) -> str:
    tid = rep.theorem
    params = "n=%d chi=%s kappa=%d t=%d delta=%s" % (
        tid.n, tid.chi, tid.kappa, tid.t, tid.delta)
    return "%s %-22s %-40s samples=%-5d max_rel=%.3g" % (
        "PASS" if rep.passed else "FAIL", tid.tag, params, rep.samples,
        rep.max_rel_dev)


def _run_reports(args, ids: List[TheoremId]) -> List[VerificationReport]:
    reports = []
    for tid in ids:
        rep = check_theorem(tid, samples=args.samples, zs=args.zs,
                            tol=args.tol, seed=args.seed,
                            profile=args.profile)
        print(_report_line(rep))
        reports.append(rep)
    return reports


def _cmd_verify(args) -> int:
    ids = _select_ids(args.theorem)
    reports = _run_reports(args, ids)
    failed = [r for r in reports if not r.passed]
    print("%d/%d checks passed" % (len(reports) - len(failed), len(reports)))
    return 1 if failed else 0


def _cmd_report(args) -> int:
    ids = _select_ids("all")
    reports = _run_reports(args, ids)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(reports_to_json(reports))
        fh.write("\n")
    failed = [r for r in reports if not r.passed]
    print("wrote %s (%d/%d passed)" % (args.out, len(reports) - len(failed),
                                       len(reports)))
    return 1 if failed else 0


def _add_verify_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=None,
                   help="element samples per check (default: per profile)")
    p.add_argument("--zs", type=int, default=None,
                   help="evaluation points per element")
    p.add_argument("--tol", type=float, default=None,
                   help="override the per-law tolerance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", choices=("quick", "full"), default="quick")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mtx", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cocycle", help="two-cocycle value for a cover kind")
    p.add_argument("kind", choices=("bar", "tilde", "hat"))
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(func=_cmd_cocycle)

    p = sub.add_parser("multiplier", help="multiplier system value")
    p.add_argument("id", help="one of %s; scaled rows take ':t'"
                   % (", ".join(_MULTIPLIER_TAGS),))
    p.add_argument("r", help="matrix a,b,c,d")
    p.set_defaults(func=_cmd_multiplier)

    p = sub.add_parser("theta", help="evaluate a theta series")
    p.add_argument("variant", choices=("plain", "minus", "fermionic"))
    p.add_argument("--chi", default="trivial",
                   help="character name (trivial, legendre3, chi4) or a JSON file")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--kappa", type=int, choices=(1, 3), default=1)
    p.add_argument("--z", required=True, help="point re,im")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=_cmd_theta)

    p = sub.add_parser("eta", help="evaluate the eta product")
    p.add_argument("--z", required=True, help="point re,im")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=_cmd_eta)

    p = sub.add_parser("verify", help="randomized law verification")
    p.add_argument("theorem", help="'all' or one of: %s" % (", ".join(TAGS),))
    _add_verify_options(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("report", help="write the verification report JSON")
    p.add_argument("--out", default="report.json")
    _add_verify_options(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MtxError, ValueError) as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
