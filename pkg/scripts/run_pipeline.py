#!/usr/bin/env python3
"""Run the truncation pipeline for a few permutations and print a summary table.

    python scripts/run_pipeline.py --perm even --perm "(1 2)" --mmax 3 --out runs.json
"""

import argparse
import json
import logging
import time

from srschubert.config import RunConfig
from srschubert.schubert import FinitelySupported, RuleEven, theorem_d_pipeline
from srschubert.serialize import dumps

log = logging.getLogger("run_pipeline")


def permutation(text):
    return RuleEven() if text == "even" else FinitelySupported.parse(text)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--perm", action="append", default=None, help="'even', cycles or one-line; repeatable")
    ap.add_argument("--mmax", type=int, default=3)
    ap.add_argument("--field", type=int, default=32003)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", help="write all reports to this JSON file")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    cfg = RunConfig(modulus=args.field, seed=args.seed)
    perms = args.perm or ["even", "id", "(1 2)", "(1 3)"]
    reports = {}
    print(f"{'permutation':<14}{'mmax':>5}{'passed':>8}{'seconds':>10}")
    for text in perms:
        sigma = permutation(text)
        t0 = time.perf_counter()
        rep = theorem_d_pipeline(sigma, args.mmax, cfg.prime, cfg.seed, cfg.face_cap, cfg.sop_budget, cfg.pair_budget)
        dt = time.perf_counter() - t0
        log.info("%s timings: %s", text, rep.timings)
        print(f"{text:<14}{args.mmax:>5}{str(rep.passed):>8}{dt:>10.2f}")
        reports[text] = rep.to_dict()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps({"config": cfg.to_dict(), "reports": reports}))
    return 0 if all(r["passed"] for r in reports.values()) else 1


if __name__ == "__main__":
    raise SystemExit(main())
