#!/usr/bin/env python3
"""Reproduce the projective-space computations: the contraction tensor, the
weight-three twist values, and the twisted cohomology generator table."""

import argparse

from cycibl.dibl import canonical_mc, t_tensor
from cycibl.homology import cochain_homology
from cycibl.models import build_cpn


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--weight-bound", type=int, default=7)
    args = ap.parse_args()

    for n in args.n:
        bundle = build_cpn(n)
        s = bundle.structure
        print(f"== complex projective space, complex dimension {n} ==")
        print(f"contraction tensor: {sorted(t_tensor(s).items())}")
        mc = canonical_mc(s).entry(1, 0)
        print(f"twist element on weight-three words: {mc!r}")
        rep = cochain_homology(s, canonical_mc(s), args.weight_bound)
        print("twisted cohomology (stable range); reduced classes expect "
              f"degree 2i + (w-1)*{n} - 1:")
        for d, w, dim, stable in rep.nonzero_rows():
            if stable:
                kind = "unit power" if d == -w else "reduced"
                print(f"  weight {w}  degree {d}  dim {dim}  ({kind})")
        print()


if __name__ == "__main__":
    main()
