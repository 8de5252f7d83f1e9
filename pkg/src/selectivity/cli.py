"""Command-line entry point.

Exit codes: 0 success, 1 validation failure, 2 undetermined prime, 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .driver import ReportDocument, ScenarioConfig, error_document, explain, run
from .errors import OracleMismatchError, SelectivityError


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; here 2 means an undetermined prime
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="selectivity",
        description="Decide which conjugacy classes of orders in a central simple algebra contain o_K.",
    )
    parser.add_argument("--config", required=False, help="scenario configuration (JSON)")
    parser.add_argument("--bound", type=int, help="prime sampling bound (overrides the config)")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--check-oracle", action="store_true", help="cross-check with the Steinitz-class oracle")
    parser.add_argument("--seed", type=int, help="seed for polynomial factorization (overrides the config)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def _emit(doc: ReportDocument, fmt: str) -> None:
    sys.stdout.write(explain(doc) if fmt == "text" else doc.to_json() + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not args.config:
        print("selectivity: error: --config is required", file=sys.stderr)
        return 1
    try:
        config = ScenarioConfig.load(args.config)
        if args.bound is not None:
            config.sampling_bound = args.bound
        if args.seed is not None:
            config.seed = args.seed
        doc = run(config, check_oracle=True if args.check_oracle else None)
    except SelectivityError as exc:
        _emit(error_document(exc), args.format)
        return exc.exit_code
    _emit(doc, args.format)
    if doc.oracle_mismatch:
        print("selectivity: oracle mismatch", file=sys.stderr)
        return OracleMismatchError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
