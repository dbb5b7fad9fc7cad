#!/usr/bin/env python3
"""Compare the Reisner and SOP-quotient certificates on random complexes."""

import argparse
import random
from collections import Counter

import numpy as np

from srschubert.cm import check_cm
from srschubert.complex import SimplicialComplex


def random_complex(rng, n):
    verts = list(range(1, n + 1))
    facets = [rng.sample(verts, rng.randint(1, n)) for _ in range(rng.randint(1, 5))]
    return SimplicialComplex(verts, facets)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=500)
    ap.add_argument("--max-vertices", type=int, default=7)
    ap.add_argument("--field", type=int, default=32003)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    tally = Counter()
    dims = []
    for k in range(args.cases):
        delta = random_complex(rng, rng.randint(1, args.max_vertices))
        rep = check_cm(delta, args.field, seed=k)  # raises if the certificates disagree
        tally["cm" if rep.cohen_macaulay else ("pure, not cm" if rep.pure else "not pure")] += 1
        dims.append(delta.dimension())
    print(f"{args.cases} complexes, all certificates agree")
    for key, n in sorted(tally.items()):
        print(f"  {key:<14}{n:>6}")
    print(f"  mean dimension {np.mean(dims):.2f}")


if __name__ == "__main__":
    main()
