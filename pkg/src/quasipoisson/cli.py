"""Command-line front end.

Exit codes: 0 every check passed, 1 some check failed, 2 usage error,
3 malformed input file.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .errors import InvalidInput, MalformedInput
from .fields import R_CHART
from .io import load_bialgebra
from .suites import SUITES, SuiteOptions, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MALFORMED = 0, 1, 2, 3

_HELP = {
    "verify-loop": "loop axioms and mono-alternativity on SH(n)",
    "verify-quasi-double": "decomposition, group and translation identities",
    "verify-double-algebra": "sl(n,C) structure identities, Akivis algebra, pairing",
    "verify-bialgebra": "quasi-Lie bialgebra axioms, big bracket, double",
    "verify-expansions": "third-order expansions of m, alpha, sigma, chi",
    "verify-sh2": "quasi-Poisson structure on SH(2)",
    "all": "every suite above",
}


def _positive(kind):
    def parse(text: str):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a {kind.__name__}, got {text!r}") from None
        if not value > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
        return value

    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="matrix size (default: each suite's own sizes)")
    common.add_argument("--samples", type=_positive(int), help="random samples per check")
    common.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    common.add_argument("--scale", type=_positive(float), help="sampling scale")
    common.add_argument("--tol", type=_positive(float), help="replace every check tolerance")
    common.add_argument("--fd-step", type=_positive(float), help="finite-difference step")
    common.add_argument("--radius", type=_positive(float), default=0.5, help="SH(2) grid radius (default 0.5)")
    common.add_argument("--json", action="store_true", help="print the structured report instead of text")
    common.add_argument("--out", type=Path, help="also write the structured report to this path")
    common.add_argument("--quiet", action="store_true", help="print nothing; rely on the exit code")

    parser = argparse.ArgumentParser(prog="quasipoisson", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in (*SUITES, "all"):
        p = sub.add_parser(name, parents=[common], help=_HELP[name], description=_HELP[name])
        if name == "verify-bialgebra":
            p.add_argument("--input", type=Path, help="spec file (JSON with dim, mu, gamma, psi)")
    return parser


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.radius >= R_CHART:
        parser.error(f"--radius must be below the chart radius {R_CHART}")

    spec = None
    input_path = getattr(args, "input", None)
    if input_path is not None:
        try:
            spec = load_bialgebra(input_path)
        except MalformedInput as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_MALFORMED

    opts = SuiteOptions(
        n=args.n,
        samples=args.samples,
        seed=args.seed,
        scale=args.scale,
        tol=args.tol,
        fd_step=args.fd_step,
        radius=args.radius,
        input_spec=spec,
        input_name=input_path.name if input_path is not None else None,
    )
    try:
        report = run_suite(args.command, opts)
    except InvalidInput as exc:
        parser.error(str(exc))

    if args.out is not None:
        args.out.write_text(report.to_json(), encoding="utf-8")
    if not args.quiet:
        if args.json:
            sys.stdout.write(report.to_json())
        else:
            sys.stdout.write(report.to_text(color=_use_color(sys.stdout)))
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
