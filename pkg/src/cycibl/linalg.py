"""Exact sparse linear algebra over the rationals and filtered graded homology.

Elimination is plain Gaussian elimination on ``Fraction`` entries (exact by
construction) with pivots chosen by row sparsity.  The homology engine works
per degree on a weight-filtered complex whose differential shifts weight by
0 or +1 (dual side) or by 0 or -1 (primal side); dimensions of the weight-
graded pieces come from the rank identity

    dim gr_w H = (k_w - k_next) - (i_w - i_next),

where k_w / i_w are the dimensions of kernel / image intersected with the
weight filtration and "next" is the following filtration level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class SparseMatrix:
    """Rows stored as dicts ``col -> Fraction``."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [dict() for _ in range(nrows)] if rows is None else rows
        for r, row in enumerate(self.rows):
            for c in row:
                if not (0 <= c < ncols):
                    raise ValueError(f"column {c} out of range in row {r}")

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        mat = cls(nrows, ncols)
        for (r, c), v in entries.items():
            v = Fraction(v)
            if v:
                mat.rows[r][c] = v
        return mat

    @classmethod
    def from_columns(cls, nrows, columns):
        mat = cls(nrows, len(columns))
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    mat.rows[r][c] = Fraction(v)
        return mat

    def transpose(self) -> "SparseMatrix":
        out = SparseMatrix(self.ncols, self.nrows)
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                out.rows[c][r] = v
        return out

    def matvec(self, vec: dict) -> dict:
        out: dict[int, Fraction] = {}
        for r, row in enumerate(self.rows):
            s = Fraction(0)
            for c, v in row.items():
                s += v * vec.get(c, Fraction(0))
            if s:
                out[r] = s
        return out

    def column(self, c: int) -> dict:
        return {r: row[c] for r, row in enumerate(self.rows) if c in row}


def rref(mat: SparseMatrix) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [dict(r) for r in mat.rows if r]
    pivots: list[int] = []
    out: list[dict] = []
    while rows:
        lead = min(min(r) for r in rows)
        cands = [r for r in rows if lead in r]
        pivot = min(cands, key=len)
        rows.remove(pivot)
        inv = 1 / pivot[lead]
        pivot = {c: v * inv for c, v in pivot.items()}
        for prev in out:
            if lead in prev:
                f = prev[lead]
                for c, v in pivot.items():
                    new = prev.get(c, Fraction(0)) - f * v
                    if new:
                        prev[c] = new
                    else:
                        prev.pop(c, None)
        nxt = []
        for r in rows:
            if lead in r:
                f = r[lead]
                for c, v in pivot.items():
                    new = r.get(c, Fraction(0)) - f * v
                    if new:
                        r[c] = new
                    else:
                        r.pop(c, None)
            if r:
                nxt.append(r)
        rows = nxt
        out.append(pivot)
        pivots.append(lead)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [out[i] for i in order], [pivots[i] for i in order]


def rank(mat: SparseMatrix) -> int:
    return len(rref(mat)[1])


def kernel_basis(mat: SparseMatrix) -> list[dict]:
    """Vectors v (dicts over columns) with M v = 0, in reduced echelon form."""
    rows, pivots = rref(mat)
    pivot_set = set(pivots)
    free = [c for c in range(mat.ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = {f: Fraction(1)}
        for row, p in zip(rows, pivots):
            if f in row:
                vec[p] = -row[f]
        basis.append(vec)
    return basis


def image_basis(mat: SparseMatrix) -> list[dict]:
    """Echelon basis of the column space (vectors over row indices)."""
    rows, _ = rref(mat.transpose())
    return rows


def span_dims(vectors: list[dict], subspace_cols: set) -> tuple[int, int]:
    """(dim span, dim of span ∩ coordinate subspace) for a list of vectors."""
    total = Eliminator()
    for v in vectors:
        total.add(dict(v))
    joint = Eliminator()
    for v in vectors:
        joint.add(dict(v))
    for c in subspace_cols:
        joint.add({c: Fraction(1)})
    return total.rank, total.rank + len(subspace_cols) - joint.rank


class Eliminator:
    """Incremental elimination for span membership and basis extension."""

    def __init__(self):
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        vec = {c: Fraction(v) for c, v in vec.items() if v}
        while vec:
            lead = min(vec)
            if lead not in self.rows:
                return vec
            row = self.rows[lead]
            f = vec[lead]
            for c, v in row.items():
                new = vec.get(c, Fraction(0)) - f * v
                if new:
                    vec[c] = new
                else:
                    vec.pop(c, None)
        return vec

    def add(self, vec: dict) -> bool:
        """Insert a vector; True if it enlarged the span."""
        red = self.reduce(vec)
        if not red:
            return False
        lead = min(red)
        inv = 1 / red[lead]
        self.rows[lead] = {c: v * inv for c, v in red.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


@dataclass
class HomologyReport:
    """Graded homology of a truncated complex.

    ``dims[(degree, weight)]`` are the dimensions of the weight-graded
    pieces, ``reps`` holds representative cycles as dicts ``key -> Fraction``
    adapted to the filtration, and ``stable`` flags the weights at which the
    truncated answer provably equals the untruncated one.
    """

    weight_bound: int
    dims: dict = field(default_factory=dict)
    reps: dict = field(default_factory=dict)
    stable: dict = field(default_factory=dict)

    def dim(self, degree: int, weight: int) -> int:
        return self.dims.get((degree, weight), 0)

    def rows(self):
        return [(d, w, self.dims[(d, w)], self.stable[(d, w)])
                for d, w in sorted(self.dims)]

    def nonzero_rows(self):
        return [(d, w, n, s) for d, w, n, s in self.rows() if n]

    def stable_classes(self):
        return {(d, w): n for d, w, n, s in self.nonzero_rows() if s}

    def table(self) -> str:
        lines = ["weight  degree  dim  stable"]
        for d, w, n, s in self.nonzero_rows():
            lines.append(f"{w:>6}  {d:>6}  {n:>3}  {'yes' if s else 'no'}")
        return "\n".join(lines)


class SquareZeroError(Exception):
    """The supplied differential fails d*d = 0; signals a sign bug upstream."""


def graded_homology(basis_fn, diff_fn, degrees, weight_bound,
                    weight_step: int = 1, degree_step: int = -1,
                    check_square: bool = True) -> HomologyReport:
    """Homology of a weight-filtered complex, truncated at ``weight_bound``.

    ``basis_fn(degree)`` lists basis keys ``(weight, payload)`` of that
    degree with weight between 1 and the bound.  ``diff_fn(key)`` gives the
    differential of a basis vector as a dict ``key -> coeff``; it must be
    the untruncated differential, so on the dual side it may reach weight
    ``weight_bound + 1`` (such targets are kept as phantom coordinates and
    closedness is decided against them).  ``degree_step`` is the degree
    shift of the differential; ``weight_step`` (+1 dual side, -1 primal
    side) is the direction in which it may move weight besides preserving
    it.  Weights up to ``weight_bound - 1`` are certified stable.
    """
    if weight_step not in (1, -1):
        raise ValueError("weight_step must be +1 or -1")
    report = HomologyReport(weight_bound)
    diff_cache: dict = {}

    def diff(key):
        if key not in diff_cache:
            img = {k: Fraction(v) for k, v in diff_fn(key).items() if v}
            for tgt in img:
                lo, hi = sorted((key[0], key[0] + weight_step))
                if not (lo <= tgt[0] <= hi):
                    raise ValueError(
                        f"differential moved weight {key[0]} -> {tgt[0]}")
            diff_cache[key] = img
        return diff_cache[key]

    for d in degrees:
        src = sorted(basis_fn(d))
        prev = sorted(basis_fn(d - degree_step))

        if check_square:
            for key in src:
                acc: dict = {}
                for mid, c in diff(key).items():
                    for out, c2 in diff(mid).items():
                        new = acc.get(out, Fraction(0)) + c * c2
                        if new:
                            acc[out] = new
                        else:
                            acc.pop(out, None)
                if acc:
                    raise SquareZeroError(
                        f"d*d != 0 at degree {d}, key {key}: {acc}")

        # Two coordinate spaces: targets of d (for the kernel matrix), and
        # this degree's own keys plus phantom targets beyond the bound (for
        # the image vectors coming from the previous degree).
        coord_t: dict = {}

        def t_col(key):
            if key not in coord_t:
                coord_t[key] = len(coord_t)
            return coord_t[key]

        src_cols = {i: {t_col(t): c for t, c in diff(key).items()}
                    for i, key in enumerate(src)}

        coord_d: dict = {key: i for i, key in enumerate(src)}

        def d_col(key):
            if key not in coord_d:
                if 1 <= key[0] <= weight_bound:
                    raise ValueError(
                        f"differential target {key} missing from basis({d})")
                coord_d[key] = len(coord_d)
            return coord_d[key]

        img_vecs = []
        for key in prev:
            vec = {d_col(t): c for t, c in diff(key).items()}
            if vec:
                img_vecs.append(vec)

        weights = sorted({key[0] for key in src})
        if not weights:
            continue
        levels = weights if weight_step == -1 else list(reversed(weights))
        # levels run from the deepest filtration level outward

        def filt_cols(w):
            if weight_step == 1:
                return [i for i, key in enumerate(src) if key[0] >= w]
            return [i for i, key in enumerate(src) if key[0] <= w]

        nrows = max(len(coord_t), 1)
        kdim: dict[int, int] = {}
        kernels: dict[int, list[dict]] = {}
        idim: dict[int, int] = {}
        for w in weights:
            idx = filt_cols(w)
            sub = SparseMatrix.from_columns(nrows, [src_cols[i] for i in idx])
            kb = kernel_basis(sub)
            kernels[w] = [{idx[c]: v for c, v in vec.items()} for vec in kb]
            kdim[w] = len(kb)
            _, idim[w] = span_dims(img_vecs, set(idx))

        # Representatives adapted to the filtration: extend the image span
        # level by level from the deepest one outward.
        elim = Eliminator()
        for vec in img_vecs:
            elim.add(dict(vec))
        added: dict[int, list[dict]] = {w: [] for w in weights}
        for w in levels:
            for vec in kernels[w]:
                if elim.add(dict(vec)):
                    added[w].append(vec)

        for pos, w in enumerate(weights):
            nxt = pos + 1 if weight_step == 1 else pos - 1
            if 0 <= nxt < len(weights):
                wn = weights[nxt]
                k_next, i_next = kdim[wn], idim[wn]
            else:
                k_next = i_next = 0
            dim = (kdim[w] - k_next) - (idim[w] - i_next)
            report.dims[(d, w)] = dim
            report.stable[(d, w)] = w <= weight_bound - 1
            reps = [{src[i]: c for i, c in vec.items()} for vec in added[w]]
            if len(reps) != dim:
                raise AssertionError(
                    f"adapted representatives disagree with graded dimension "
                    f"at degree {d}, weight {w}: {len(reps)} vs {dim}")
            report.reps[(d, w)] = reps
    return report
