"""Seeded sampling of per-point partition families with certificate dedup.

Draws random families for (n, s, l) with d = 1, builds and verifies every D1
graph and counts distinct canonical certificates, a lower bound on the number
of isomorphism classes. Prints the running count at each checkpoint.

Usage: python3 scripts/sample_classes.py --n 7 --s 2 --l 3 --samples 10000 --seed 2026
"""

import argparse
import json
import os

from dsrg.classify import sample_classes


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--l", type=int, default=3)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--jobs", type=int, default=int(os.environ.get("DSRG_JOBS", "1")))
    ap.add_argument("--checkpoints", type=int, nargs="*", default=[],
                    help="also report the count at these sample sizes; multiples of 500 give prefixes of the full run")
    ap.add_argument("--certificates", help="write the hex certificates here")
    args = ap.parse_args()
    for size in sorted(set(args.checkpoints + [args.samples])):
        rep = sample_classes(args.n, args.s, args.l, size, seed=args.seed, jobs=args.jobs)
        print(json.dumps(rep.to_json()))
    if args.certificates:
        with open(args.certificates, "w") as fh:
            fh.write("\n".join(rep.certificates) + "\n")


if __name__ == "__main__":
    main()
