"""Command line front end.

Exit codes: 0 success, 1 property failure, 2 input error.  Structured
output is byte-stable across runs for identical inputs.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import fileio
from .algebra import check_cyclic_dga
from .fileio import InputError, dump_json, load_json


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    weight_bound: int = 6
    genus_bound: int = 0
    reduced: bool = False
    fmt: str = "table"
    seed: int = 0
    output: str | None = None

    def __post_init__(self):
        if self.weight_bound < 1:
            raise InputError("--weight-bound must be at least 1")


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_algebra_check(args) -> int:
    s = fileio.structure_from_dict(load_json(args.file))
    rep = check_cyclic_dga(s)
    _emit(rep.summary() + "\n", args.output)
    return 0 if rep.passed else 1


def cmd_homology(args) -> int:
    from .dibl import canonical_mc
    from .homology import cochain_homology

    cfg = RunConfig("homology", [args.file], weight_bound=args.weight_bound,
                    reduced=args.reduced, fmt=args.format, output=args.output)
    s = fileio.structure_from_dict(load_json(args.file))
    if args.twist == "none":
        fam = None
    elif args.twist == "mc":
        fam = canonical_mc(s)
    else:
        fam = fileio.family_from_dict(s, load_json(args.twist))
    rep = cochain_homology(s, fam, cfg.weight_bound, reduced=cfg.reduced)
    if cfg.fmt == "records":
        doc = [{"degree": d, "weight": w, "dim": n, "stable": st}
               for d, w, n, st in rep.nonzero_rows()]
        _emit(dump_json(doc), cfg.output)
    else:
        _emit(rep.table() + "\n", cfg.output)
    return 0


def cmd_graphs(args) -> int:
    from .ribbon import enumerate_graphs

    found = enumerate_graphs(args.k, args.l, args.g, args.legs,
                             trivalent=args.trivalent)
    if args.format == "records":
        doc = []
        for graph, aut in found:
            doc.append({
                "vertices": [list(v) for v in graph.vertices],
                "edges": [list(e) for e in graph.edges],
                "boundary_legs": [list(b) for b in graph.boundary_legs()],
                "automorphisms": aut,
            })
        _emit(dump_json(doc), args.output)
    else:
        lines = [f"classes of type ({args.k},{args.l},{args.g}) "
                 f"with {args.legs} legs: {len(found)}"]
        for graph, aut in found:
            lines.append(f"  vertices {graph.vertices} edges {graph.edges} "
                         f"legs/boundary {[len(b) for b in graph.boundary_legs()]} "
                         f"|Aut| = {aut}")
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_pushforward(args) -> int:
    from .ribbon import pushforward_mc

    s = fileio.structure_from_dict(load_json(args.file))
    kernel = {}
    if args.kernel_file:
        kernel = fileio.kernel_from_dict(s, load_json(args.kernel_file))
    fam = pushforward_mc(s, s, kernel, weight_bound=args.weight_bound,
                         genus_bound=args.genus_bound)
    _emit(dump_json(fileio.family_to_dict(fam)), args.output)
    return 0


def cmd_green(args) -> int:
    from .green import check_g_properties, green_pipeline, schwartz_kernel

    s = fileio.structure_from_dict(load_json(args.file))
    g, proj, stages = green_pipeline(s)
    rep = check_g_properties(s, g, proj)
    doc = {
        "operator": fileio.operator_to_dict(s, g),
        "kernel": fileio.kernel_to_dict(s, schwartz_kernel(s, g).entries,
                                        degree=schwartz_kernel(s, g).degree),
        "properties": {k: bool(v) for k, v in rep.results.items()},
        "note": rep.note,
    }
    _emit(dump_json(doc), args.output)
    return 0 if rep.passed else 1


def cmd_eval(args) -> int:
    from .dibl import (canonical_mc, q110, q120, q210, twisted_q110,
                       twisted_q120)

    s = fileio.structure_from_dict(load_json(args.algebra))
    psi = fileio.cochain_from_dict(s, load_json(args.psi))
    fam = None
    if args.twist:
        fam = (canonical_mc(s) if args.twist == "mc"
               else fileio.family_from_dict(s, load_json(args.twist)))
    if args.op == "boundary":
        out = q110(s, psi)
    elif args.op == "product":
        if not args.psi2:
            raise InputError("product needs --psi2")
        psi2 = fileio.cochain_from_dict(s, load_json(args.psi2))
        out = q210(s, psi, psi2)
    elif args.op == "coproduct":
        out = q120(s, psi)
    elif args.op == "twisted-boundary":
        out = twisted_q110(s, fam or canonical_mc(s), psi)
    elif args.op == "twisted-coproduct":
        out = twisted_q120(s, fam or canonical_mc(s), psi)
    else:
        raise InputError(f"unknown operation '{args.op}'")
    _emit(dump_json(fileio.cochain_to_dict(s, out)), args.output)
    return 0


def cmd_model(args) -> int:
    from .models import build_cpn, build_sn, truncated_polynomial

    if args.which == "sn":
        s = build_sn(args.n).structure
    elif args.which == "cpn":
        s = build_cpn(args.n).structure
    elif args.which == "truncated-polynomial":
        s = truncated_polynomial(args.n, args.degree)
    else:
        raise InputError(f"unknown model '{args.which}'")
    _emit(dump_json(fileio.structure_to_dict(s)), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cycibl",
        description="exact computations with cyclic cochains: boundary, "
                    "product, coproduct, twisting, ribbon-graph pairings, "
                    "homology, and the homotopy-operator pipeline")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, weight=True):
        sp.add_argument("--format", choices=("table", "records"),
                        default="table")
        sp.add_argument("--output", default=None)
        if weight:
            sp.add_argument("--weight-bound", type=int, default=6,
                            dest="weight_bound")

    sp = sub.add_parser("algebra-check", help="validate an algebra file")
    sp.add_argument("file")
    common(sp, weight=False)
    sp.set_defaults(fn=cmd_algebra_check)

    sp = sub.add_parser("homology", help="graded homology of the cochain complex")
    sp.add_argument("file")
    sp.add_argument("--twist", default="none",
                    help="'none', 'mc', or a twist-family file")
    sp.add_argument("--reduced", action="store_true")
    common(sp)
    sp.set_defaults(fn=cmd_homology)

    sp = sub.add_parser("graphs", help="list ribbon graph classes")
    sp.add_argument("k", type=int)
    sp.add_argument("l", type=int)
    sp.add_argument("g", type=int)
    sp.add_argument("--legs", type=int, default=3)
    sp.add_argument("--trivalent", action="store_true")
    common(sp, weight=False)
    sp.set_defaults(fn=cmd_graphs)

    sp = sub.add_parser("pushforward", help="transferred twist element")
    sp.add_argument("file")
    sp.add_argument("--kernel-file", default=None, dest="kernel_file")
    sp.add_argument("--genus-bound", type=int, default=0, dest="genus_bound")
    common(sp)
    sp.set_defaults(fn=cmd_pushforward)

    sp = sub.add_parser("green", help="homotopy-operator pipeline")
    sp.add_argument("file")
    common(sp, weight=False)
    sp.set_defaults(fn=cmd_green)

    sp = sub.add_parser("eval", help="apply an operation to cochain files")
    sp.add_argument("op", choices=("boundary", "product", "coproduct",
                                   "twisted-boundary", "twisted-coproduct"))
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--psi", required=True)
    sp.add_argument("--psi2", default=None)
    sp.add_argument("--twist", default=None)
    common(sp, weight=False)
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("model", help="emit a built-in model as an algebra file")
    sp.add_argument("which", choices=("sn", "cpn", "truncated-polynomial"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--degree", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, weight=False)
    sp.set_defaults(fn=cmd_model)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
