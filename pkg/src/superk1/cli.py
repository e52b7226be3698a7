"""Command-line driver: one subcommand per verification, text or JSON reports.

Exit codes: 0 when every executed claim passes, 1 when one fails, 2 on
invalid input.
"""

from __future__ import annotations

import argparse
import sys

from .curve import CurveError, hypothesis_violations
from .k1_element import GROUPS, SigmaError, run_pipeline

COMMANDS = ["curve-info", "charpoly", "lemma21", "lemma22", "lemma24", "div-g", "torsion", "sigma",
            "boundary", "verify-all"]
DEFAULT_PRIMES = "7,11,13"


def _primes(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog="superk1", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--m", type=int, default=2)
        sp.add_argument("--n", type=int, default=5)
        sp.add_argument("--p", type=int, default=3)
        sp.add_argument("--primes", type=_primes, default=_primes(DEFAULT_PRIMES))
        sp.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _headline(report, command):
    if command == "charpoly":
        w = report.claim("charpoly").witness
        return w.get("charpoly") or w.get("reason") or w.get("error", "")
    if command == "curve-info":
        w = report.claim("curve").witness
        if "error" in w:
            return w["error"]
        return "genus {}  S = {}".format(w["genus"], ", ".join(w["S"]))
    return None


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    viol = hypothesis_violations(args.m, args.n)
    if viol:
        print("invalid input: " + "; ".join(viol), file=err)
        return 2
    select = None if args.command == "verify-all" else GROUPS[args.command]
    primes = args.primes if args.command in ("lemma24", "boundary", "verify-all") else []
    try:
        report = run_pipeline(args.m, args.n, primes, args.p, select)
    except (CurveError, SigmaError) as exc:
        print(f"invalid input: {exc}", file=err)
        return 2
    if args.format == "json":
        out.write(report.dumps())
    else:
        head = _headline(report, args.command)
        if head:
            out.write(head + "\n")
        out.write(report.to_text())
    return report.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
