#!/usr/bin/env python3
"""Grade normalization profiles against the published census counts.

Runs the syntactic and selfish columns under profiles L1 and L2 over a
range of board lengths, prints the grading, and — when a column matches
no profile — writes the discrepancy report (by default to
reports/syntactic_discrepancy.md, the copy the test suite points at).

Usage:
    python3 scripts/calibrate_profile.py --max-n 9
"""

from __future__ import annotations

import argparse
import pathlib
import sys
import time

from nclobber.enumeration import calibrate_normalization

DEFAULT_REPORT = pathlib.Path(__file__).resolve().parent.parent / "reports" / "syntactic_discrepancy.md"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=9, help="largest graded length")
    parser.add_argument(
        "--report", default=str(DEFAULT_REPORT), help="where to write the report"
    )
    args = parser.parse_args(argv)

    t0 = time.perf_counter()
    result = calibrate_normalization(range(2, args.max_n + 1))
    dt = time.perf_counter() - t0

    print(f"graded lengths 2..{args.max_n} in {dt:.1f}s")
    for column, match in result.matches.items():
        verdict = match.name if match else "no profile matches"
        print(f"  {column:10s} -> {verdict}")
    print(f"  chosen default: {result.chosen_profile.name}")

    if result.report:
        path = pathlib.Path(args.report)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(result.report, encoding="utf-8")
        print(f"\ndiscrepancy report written to {path}")
    else:
        print("\nall columns matched; no discrepancy report needed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
