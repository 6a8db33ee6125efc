"""Command-line front end.

Subcommands:
    moufang field --q N [--checks LIST]
    moufang jordan --file PATH
    nearfield dickson (--q N --coupling CHAR|TRIVIAL | --file PATH)
    nearfield table --file PATH [--sigma inversion]
    suite --profile quick|full [--out PATH]

Reports are JSON, written to --out or stdout, byte-identical across runs
unless --timings is given.  Exit codes: 0 all checks pass, 1 verification
failure, 2 usage or parse error.  Closure / endomorphism-scan / axiom caps
can be overridden through HUAKIT_CLOSURE_CAP, HUAKIT_ENDO_CAP and
HUAKIT_AXIOM_CAP.
"""

from __future__ import annotations

import argparse
import sys

from . import jordan as jordan_mod
from . import nearfield as nf
from .catalog import SUPPORTED_Q, UnsupportedQ, field
from .perm import CapExceeded
from .report import Report
from .suite import (FIELD_CHECKS, NEARFIELD_CHECKS, field_moufang_report,
                    jordan_report, nearfield_report, suite_report)


def _checks_list(raw):
    return [c.strip() for c in raw.split(",") if c.strip()] if raw else None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="huakit",
        description="exhaustive verification of finite Moufang sets, "
                    "quadratic Jordan algebras and nearfields")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to this path")
    common.add_argument("--timings", action="store_true",
                        help="attach per-check timings (breaks byte "
                             "determinism)")

    p_mf = sub.add_parser("moufang", help="projective-line and Jordan-table "
                                          "instances")
    mf_sub = p_mf.add_subparsers(dest="subcommand", required=True)
    p_field = mf_sub.add_parser("field", parents=[common],
                                help="the Moufang set of GF(q)")
    p_field.add_argument("--q", type=int, required=True,
                         help=f"field order, one of {SUPPORTED_Q}")
    p_field.add_argument("--checks",
                         help="comma list from: " + ",".join(FIELD_CHECKS))
    p_jordan = mf_sub.add_parser("jordan", parents=[common],
                                 help="verify a quadratic-operator table file")
    p_jordan.add_argument("--file", required=True)

    p_nf = sub.add_parser("nearfield", help="Dickson and raw-table nearfields")
    nf_sub = p_nf.add_subparsers(dest="subcommand", required=True)
    p_dick = nf_sub.add_parser("dickson", parents=[common],
                               help="twist GF(q) by a coupling")
    p_dick.add_argument("--q", type=int)
    p_dick.add_argument("--coupling", choices=["CHAR", "TRIVIAL"],
                        help="CHAR: 0 on squares / f2 on non-squares; "
                             "TRIVIAL: the field itself")
    p_dick.add_argument("--file", help="JSON descriptor with p, f, phi")
    p_dick.add_argument("--checks",
                        help="comma list from: " + ",".join(NEARFIELD_CHECKS))
    p_table = nf_sub.add_parser("table", parents=[common],
                                help="verify a raw multiplication table")
    p_table.add_argument("--file", required=True)
    p_table.add_argument("--sigma", choices=["inversion"],
                         help="also test the KT battery with this sigma")
    p_table.add_argument("--checks",
                         help="comma list from: " + ",".join(NEARFIELD_CHECKS))

    p_suite = sub.add_parser("suite", parents=[common],
                             help="run the acceptance matrix")
    p_suite.add_argument("--profile", choices=["quick", "full"],
                         default="full")
    p_suite.add_argument("--seed", type=int, default=0,
                         help="seed for the seeded negative control")
    p_suite.add_argument("--inject-fault", action="store_true",
                         help=argparse.SUPPRESS)
    return parser


def _emit(report: Report, args) -> int:
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    counts = report.counts()
    print(f"{'PASS' if report.all_passed else 'FAIL'}: "
          f"{counts['pass']} pass, {counts['fail']} fail, "
          f"{counts['skipped']} skipped", file=sys.stderr)
    return 0 if report.all_passed else 1


def _cmd_moufang_field(args) -> int:
    report = field_moufang_report(args.q, checks=_checks_list(args.checks),
                                  timings=args.timings)
    return _emit(report, args)


def _cmd_moufang_jordan(args) -> int:
    J = jordan_mod.load_jordan(args.file)
    return _emit(jordan_report(J, timings=args.timings), args)


def _cmd_nearfield_dickson(args) -> int:
    if args.file:
        N = nf.dickson_from_descriptor(open(args.file).read())
    else:
        if args.q is None or args.coupling is None:
            raise UnsupportedQ("need --q and --coupling (or --file)")
        F = field(args.q)
        phi = (nf.quadratic_character_coupling(F) if args.coupling == "CHAR"
               else nf.trivial_coupling(F))
        N = nf.dickson(F, phi)
    report = nearfield_report(N, checks=_checks_list(args.checks),
                              timings=args.timings)
    return _emit(report, args)


def _cmd_nearfield_table(args) -> int:
    N = nf.load_nearfield_table(args.file)
    sigma = None
    if args.sigma == "inversion":
        sigma = nf.KTAutomorphism(N, [N.minv(a) for a in N.units()])
    report = nearfield_report(N, sigma=sigma,
                              checks=_checks_list(args.checks),
                              timings=args.timings)
    return _emit(report, args)


def _cmd_suite(args) -> int:
    report = suite_report(args.profile, seed=args.seed,
                          inject_fault=args.inject_fault,
                          timings=args.timings)
    return _emit(report, args)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return exc.code or 0
    try:
        if args.command == "moufang" and args.subcommand == "field":
            return _cmd_moufang_field(args)
        if args.command == "moufang" and args.subcommand == "jordan":
            return _cmd_moufang_jordan(args)
        if args.command == "nearfield" and args.subcommand == "dickson":
            return _cmd_nearfield_dickson(args)
        if args.command == "nearfield" and args.subcommand == "table":
            return _cmd_nearfield_table(args)
        if args.command == "suite":
            return _cmd_suite(args)
    except (UnsupportedQ, jordan_mod.ParseError, nf.ParseError,
            nf.NotACoupling, nf.NearfieldError, CapExceeded,
            FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable: argparse enforces the command set")


if __name__ == "__main__":
    sys.exit(main())
