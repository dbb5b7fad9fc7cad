#!/usr/bin/env python3
"""Write DOT files for the 1-skeleta of the initial complexes of a permutation.

Render with e.g. `neato -Tpng delta_even_2.dot -o delta_even_2.png`.
"""

import argparse
from pathlib import Path

from srschubert.complex import one_skeleton_dot
from srschubert.schubert import FinitelySupported, RuleEven, initial_complex


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--perm", default="even", help="'even', cycles or one-line")
    ap.add_argument("--levels", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--outdir", default="figures")
    ap.add_argument("--ambient", action="store_true", help="also draw ambient non-vertices, dashed")
    args = ap.parse_args()

    sigma = RuleEven() if args.perm == "even" else FinitelySupported.parse(args.perm)
    tag = "even" if args.perm == "even" else "".join(c for c in args.perm if c.isalnum())
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for m in args.levels:
        delta = initial_complex(sigma.truncate(m))
        path = out / f"delta_{tag}_{m}.dot"
        path.write_text(one_skeleton_dot(delta, name=f"Delta_{m}", include_ambient=args.ambient))
        edges = delta.edges()
        n = len(delta.vertex_set())
        missing = n * (n - 1) // 2 - len(edges)
        print(f"m={m}: {n} vertices, {len(edges)} edges ({missing} missing) -> {path}")


if __name__ == "__main__":
    main()
