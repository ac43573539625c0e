"""``fpp-verify``: run the claim registry and write a certificate report.

Exit codes: 0 all claims verified or asserted, 1 some claim failed,
2 malformed configuration, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .registry import load_configs, run_claims
from .report import emit_report, summarize
from .surfacecalc import ConfigError

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}

log = logging.getLogger("fpp_verify")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fpp-verify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the claim registry")
    run.add_argument("--case", choices=("I", "II", "all"), default="all")
    run.add_argument("--config", metavar="DIR",
                     help="directory with Y.json, X_caseI.json, X_caseII.json (default: shipped data)")
    run.add_argument("--report", metavar="PATH", help="write the report here (default: stdout)")
    run.add_argument("--format", choices=("json", "md"), default="json")
    run.add_argument("--verbose", action="store_true", help="print one line per claim to stderr")
    run.add_argument("--jobs", type=int, default=1, help="worker threads for claim execution")
    return parser


def _setup_logging(verbose: bool):
    env = os.environ.get("FPP_VERIFY_LOG", "").lower()
    level = LOG_LEVELS.get(env, logging.INFO if verbose else logging.ERROR)
    if env and env not in LOG_LEVELS:
        print(f"fpp-verify: ignoring FPP_VERIFY_LOG={env!r}", file=sys.stderr)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def run(case: str = "all", config: str | None = None, report: str | None = None,
        format: str = "json", verbose: bool = False, jobs: int = 1) -> int:
    cases = ("I", "II") if case == "all" else (case,)
    try:
        configs = load_configs(config, cases)
    except ConfigError as exc:
        print(f"fpp-verify: malformed configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"fpp-verify: cannot read configuration: {exc}", file=sys.stderr)
        return EXIT_IO

    results = run_claims(configs, case, jobs=max(1, jobs))
    payload = emit_report(results, format, case)
    try:
        if report is None:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
        else:
            with open(report, "wb") as fh:
                fh.write(payload)
    except OSError as exc:
        print(f"fpp-verify: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO

    counts = summarize(results)
    if verbose:
        for r in results:
            print(f"{r.status:>20}  {r.claim_id}", file=sys.stderr)
    log.info("%d claims: %d verified, %d asserted-unverified, %d failed", counts["total"],
             counts["verified"], counts["asserted-unverified"], counts["failed"])
    for r in results:
        if r.status == "failed":
            log.error("failed: %s (computed %s)", r.claim_id, r.computed)
    return EXIT_FAILED if counts["failed"] else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging(args.verbose)
    return run(args.case, args.config, args.report, args.format, args.verbose, args.jobs)


if __name__ == "__main__":
    sys.exit(main())
