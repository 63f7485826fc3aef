#!/usr/bin/env python3
"""Reproduce the sphere computations: contraction tensors, the unit product
relation, and the twisted homology tables for small spheres."""

import argparse

from cycibl.algebra import unit_cochain
from cycibl.dibl import canonical_mc, q120, q210, t_tensor
from cycibl.homology import cochain_homology
from cycibl.models import build_sn
from cycibl.words import dual_word


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--weight-bound", type=int, default=8)
    ap.add_argument("--max-power", type=int, default=6)
    args = ap.parse_args()

    for n in args.n:
        bundle = build_sn(n)
        s = bundle.structure
        print(f"== sphere, dimension {n} ==")
        print(f"contraction tensor: {sorted(t_tensor(s).items())}")
        one = unit_cochain(s, 1)
        for k in range(2, args.max_power + 1):
            psi = dual_word(s.basis, (1,) * k, slot_shift=s.slot_shift)
            if psi.is_zero():
                print(f"  dual of w^{k} is annihilated")
                continue
            out = q210(s, one, psi)
            cop = q120(s, psi)
            print(f"  product(unit*, w^{k}*) = {out!r};  coproduct(w^{k}*) "
                  f"{'vanishes' if cop.is_zero() else cop}")
        if n >= 2:
            rep = cochain_homology(s, canonical_mc(s), args.weight_bound,
                                   reduced=True)
            print("  reduced twisted homology (stable range):")
            for d, w, dim, stable in rep.nonzero_rows():
                if stable:
                    print(f"    weight {w}  degree {d}  dim {dim}")
        print()


if __name__ == "__main__":
    main()
