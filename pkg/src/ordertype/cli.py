"""Command-line front end.

    ordertype verify <scenario> [--json] [--seed N] [--cap M]
    ordertype verify-pair <e1> <e2> [--json]
    ordertype stats <entry> [--json]
    ordertype ingest <path>

Extra catalog files listed in $ORDERTYPE_CATALOG (os.pathsep separated) or
passed with --catalog are available to ``stats`` and ``verify-pair``.
Exit status: 0 all confirmed, 1 anything else, 2 usage or data error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .catalog import CatalogError, load_catalog
from .group import DEFAULT_CAP, CapExceeded
from .harness import EXIT_USAGE, SCENARIOS, Session, exit_code, run_scenario, stats_report, verify_pair

CATALOG_ENV = "ORDERTYPE_CATALOG"


def _extra_sheets(paths):
    sheets = []
    env = os.environ.get(CATALOG_ENV)
    if env:
        paths = [p for p in env.split(os.pathsep) if p] + list(paths)
    for path in paths:
        sheets.extend(load_catalog(path))
    return sheets


def _emit(reports, as_json: bool) -> None:
    if as_json:
        if len(reports) == 1:
            print(reports[0].to_json())
        else:
            print("[\n" + ",\n".join(r.to_json() for r in reports) + "\n]")
    else:
        print("\n\n".join(r.to_text() for r in reports))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordertype", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--seed", type=int, default=1, help="seed for randomized searches (default 1)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")
    common.add_argument("--catalog", action="append", default=[], help="extra catalog file")

    p = sub.add_parser("verify", parents=[common], help="run a scenario")
    p.add_argument("scenario", choices=SCENARIOS + ("all",))

    p = sub.add_parser("verify-pair", parents=[common], help="compare two catalog entries")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("stats", parents=[common], help="statistics for one entry")
    p.add_argument("entry")

    p = sub.add_parser("ingest", help="validate a catalog file and list its entries")
    p.add_argument("path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "ingest":
            sheets = load_catalog(args.path)
            for s in sheets:
                print(f"added {s.name}: order {s.order}, {len(s.spectrum)} element orders")
            print(f"{len(sheets)} entries accepted from {args.path}")
            return 0
        session = Session(args.seed, args.cap, _extra_sheets(args.catalog))
        if args.command == "verify":
            reports = run_scenario(args.scenario, session)
        elif args.command == "verify-pair":
            reports = [verify_pair(session, args.first, args.second)]
        else:
            reports = [stats_report(session, args.entry)]
    except KeyError as exc:
        print(f"ordertype: unknown entry or scenario {exc.args[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    except (CatalogError, CapExceeded, OSError) as exc:
        print(f"ordertype: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(reports, args.json)
    return exit_code(reports)
