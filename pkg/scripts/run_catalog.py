"""Recompute every reference value and print one line per check.

Usage: python3 scripts/run_catalog.py [--sampling] [--jobs N] [--report out.json]
"""

import argparse
import json
import sys

from dsrg.catalog import run_catalog


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sampling", action="store_true", help="include the 10k-sample (n=7,s=2,l=3) run")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--report", help="write the JSON results here")
    args = ap.parse_args()
    results = run_catalog(include_sampling=args.sampling, jobs=args.jobs)
    for r in results:
        print(r.line())
        for note in r.notes:
            print(f"    note: {note}")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump([r.to_json() for r in results], fh, indent=2, ensure_ascii=False)
    return 2 if any(r.status == "FAIL" for r in results) else 0


if __name__ == "__main__":
    sys.exit(main())
