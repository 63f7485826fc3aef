"""Cyclic A-infinity / dg algebra structures and their (cyclic) bar differentials.

A structure holds a shifted basis, a pairing matrix of degree ``2 - m``
(``m`` the manifold dimension of the model), structure-constant tables for
the operations ``mu_k`` (all of degree 1 on the shifted space), and an
optional strict unit / augmentation.  The defining relations of a cyclic
dg algebra are::

    P(v1,v2) = (-1)^(1+|v1||v2|) P(v2,v1)
    m1(m1(v)) = 0
    m1+(v1,v2) = (-1)^(|v1||v2|) m1+(v2,v1)
    m1(m2(v1,v2)) = -m2(m1 v1, v2) - (-1)^|v1| m2(v1, m1 v2)
    m2(m2(v1,v2),v3) = (-1)^(|v1|+1) m2(v1, m2(v2,v3))
    m2+(v1,v2,v3) = (-1)^(|v3|(|v1|+|v2|)) m2+(v3,v1,v2)

with ``mu_k+ = P(mu_k ⊗ id)``.  All checks are exhaustive over basis tuples
and report failures with explicit witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .signs import GradedBasis, koszul_sign
from .words import CochainTensor, Word, canonical_words, canonicalize, dual_word

Vector = dict[int, Fraction]
MuTable = dict[tuple[int, ...], Vector]


def _clean(vec: Vector) -> Vector:
    return {i: c for i, c in vec.items() if c}


@dataclass
class CyclicStructure:
    """A finite cyclic structure (V[1], pairing, mu_1, mu_2, ..., unit, augmentation).

    ``pairing[i][j]`` is the value on ``(e_i, e_j)``; ``mu[k]`` maps input
    index tuples to sparse output vectors.  ``manifold_dim`` fixes the
    pairing degree ``2 - m`` and every sign of the canonical operations.
    """

    name: str
    basis: GradedBasis
    manifold_dim: int
    pairing: list[list[Fraction]] | None
    mu: dict[int, MuTable]
    unit: int | None = None
    augmentation: Vector | None = None
    _dual: list[Vector] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.mu = {k: {t: _clean(v) for t, v in table.items() if _clean(v)}
                   for k, table in self.mu.items()}
        if self.pairing is not None:
            n = len(self.basis)
            if len(self.pairing) != n or any(len(r) != n for r in self.pairing):
                raise ValueError("pairing matrix has wrong shape")
            self.pairing = [[Fraction(x) for x in row] for row in self.pairing]

    # -- pairing ------------------------------------------------------

    @property
    def slot_shift(self) -> int:
        """Degree shift per tensor slot under which the operations are symmetric."""
        return self.manifold_dim - 3

    def pair(self, v: Vector, w: Vector) -> Fraction:
        if self.pairing is None:
            raise ValueError(f"{self.name}: no pairing")
        s = Fraction(0)
        for i, a in v.items():
            row = self.pairing[i]
            for j, b in w.items():
                s += a * row[j] * b
        return s

    def dual_basis(self) -> list[Vector]:
        """Vectors e^j with P(e_i, e^j) = delta_ij, from the inverse pairing matrix."""
        if self._dual is None:
            if self.pairing is None:
                raise ValueError(f"{self.name}: no pairing")
            n = len(self.basis)
            cols = []
            for j in range(n):
                x = _solve(self.pairing, j)
                if x is None:
                    raise ValueError(f"{self.name}: degenerate pairing")
                cols.append(_clean(x))
            self._dual = cols
        return self._dual

    # -- operations ---------------------------------------------------

    def mu_apply(self, k: int, letters) -> Vector:
        table = self.mu.get(k)
        if table is None:
            return {}
        return dict(table.get(tuple(letters), {}))

    def mu_apply_vec(self, k: int, vectors: list[Vector]) -> Vector:
        out: Vector = {}
        for combo in product(*[list(v.items()) for v in vectors]):
            letters = tuple(i for i, _ in combo)
            coeff = math.prod((c for _, c in combo), start=Fraction(1))
            for o, c in self.mu_apply(k, letters).items():
                new = out.get(o, Fraction(0)) + coeff * c
                if new:
                    out[o] = new
                else:
                    out.pop(o, None)
        return out

    def m1_matrix(self) -> list[Vector]:
        """Columns of mu_1: column i is mu_1(e_i)."""
        return [self.mu_apply(1, (i,)) for i in range(len(self.basis))]

    def mu_plus(self, k: int, letters) -> Fraction:
        """The (k+1)-linear functional P(mu_k(v_1..v_k), v_{k+1})."""
        letters = tuple(letters)
        if len(letters) != k + 1:
            raise ValueError(f"mu_plus({k}) takes {k + 1} letters")
        img = self.mu_apply(k, letters[:-1])
        if not img:
            return Fraction(0)
        return self.pair(img, {letters[-1]: Fraction(1)})

    def arities(self) -> list[int]:
        return sorted(k for k, t in self.mu.items() if t)

    def volume_vector(self) -> Vector:
        """The unique vector with P(unit, vol) = 1 and vol ⟂ the augmentation kernel."""
        if self.unit is None:
            raise ValueError(f"{self.name}: no unit")
        return self.dual_basis()[self.unit]

    def reduced_letters(self) -> list[int]:
        """Indices spanning the augmentation kernel; requires a basis-aligned unit."""
        if self.unit is None:
            raise ValueError(f"{self.name}: no unit")
        return [i for i in range(len(self.basis)) if i != self.unit]


def _solve(matrix: list[list[Fraction]], j: int) -> Vector | None:
    """Solve M x = e_j by dense elimination (tiny matrices only)."""
    n = len(matrix)
    aug = [[matrix[r][c] for c in range(n)] + [Fraction(1 if r == j else 0)]
           for r in range(n)]
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if aug[r][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        row += 1
    if row < n:
        return None
    x: Vector = {}
    for r in range(n):
        col = next(c for c in range(n) if aug[r][c])
        x[col] = aug[r][n]
    return x


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    passed: bool
    failures: list[tuple[str, tuple, Fraction, Fraction]]

    def summary(self) -> str:
        if self.passed:
            return "all relations hold"
        lines = [f"{len(self.failures)} failing relation(s):"]
        for name, witness, lhs, rhs in self.failures[:20]:
            lines.append(f"  {name} at {witness}: {lhs} != {rhs}")
        return "\n".join(lines)


def check_cyclic_dga(s: CyclicStructure) -> CheckReport:
    """Exhaustively verify the cyclic dg algebra relations; failures carry witnesses."""
    fails = []
    n = len(s.basis)
    deg = s.basis.degrees
    one = Fraction(1)

    def record(name, witness, lhs, rhs):
        if lhs != rhs:
            fails.append((name, witness, lhs, rhs))

    if s.pairing is not None:
        for i in range(n):
            for j in range(n):
                lhs = s.pairing[i][j]
                sign = -1 if (deg[i] * deg[j]) % 2 == 0 else 1
                record("pairing antisymmetry", (i, j), lhs, sign * s.pairing[j][i])
                if s.pairing[i][j] and deg[i] + deg[j] != s.manifold_dim - 2:
                    record("pairing degree", (i, j), Fraction(deg[i] + deg[j]),
                           Fraction(s.manifold_dim - 2))
        if _solve(s.pairing, 0) is None:
            fails.append(("pairing nondegenerate", (), Fraction(0), one))

    for i in range(n):
        img = s.mu_apply(1, (i,))
        for o, c in img.items():
            if deg[o] != deg[i] + 1:
                record("mu_1 degree", (i,), Fraction(deg[o]), Fraction(deg[i] + 1))
        sq = s.mu_apply_vec(1, [img])
        record("m1 squares to zero", (i,), Fraction(bool(sq)), Fraction(0))

    if s.pairing is not None:
        for i in range(n):
            for j in range(n):
                lhs = s.mu_plus(1, (i, j))
                sign = 1 if (deg[i] * deg[j]) % 2 == 0 else -1
                record("m1+ symmetry", (i, j), lhs, sign * s.mu_plus(1, (j, i)))

    for i, j in product(range(n), repeat=2):
        img = s.mu_apply(2, (i, j))
        for o, c in img.items():
            if deg[o] != deg[i] + deg[j] + 1:
                record("mu_2 degree", (i, j), Fraction(deg[o]),
                       Fraction(deg[i] + deg[j] + 1))
        lhs = s.mu_apply_vec(1, [img])
        rhs: Vector = {}
        for o, c in s.mu_apply_vec(2, [s.mu_apply(1, (i,)), {j: one}]).items():
            rhs[o] = rhs.get(o, Fraction(0)) - c
        sgn = -1 if deg[i] % 2 else 1
        for o, c in s.mu_apply_vec(2, [{i: one}, s.mu_apply(1, (j,))]).items():
            rhs[o] = rhs.get(o, Fraction(0)) - sgn * c
        record("Leibniz", (i, j), _freeze(lhs), _freeze(_clean(rhs)))

    for i, j, k in product(range(n), repeat=3):
        lhs = s.mu_apply_vec(2, [s.mu_apply(2, (i, j)), {k: one}])
        rhs = s.mu_apply_vec(2, [{i: one}, s.mu_apply(2, (j, k))])
        sgn = -1 if deg[i] % 2 == 0 else 1
        rhs = {o: sgn * c for o, c in rhs.items()}
        record("associativity", (i, j, k), _freeze(lhs), _freeze(_clean(rhs)))

    if s.pairing is not None:
        for i, j, k in product(range(n), repeat=3):
            lhs = s.mu_plus(2, (i, j, k))
            sign = 1 if (deg[k] * (deg[i] + deg[j])) % 2 == 0 else -1
            record("m2+ cyclicity", (i, j, k), lhs, sign * s.mu_plus(2, (k, i, j)))

    if s.unit is not None:
        u = s.unit
        if deg[u] != -1:
            fails.append(("unit degree", (u,), Fraction(deg[u]), Fraction(-1)))
        for i in range(n):
            record("left unit", (i,), _freeze(s.mu_apply(2, (u, i))),
                   _freeze({i: one}))
            sgn = -1 if (deg[i] + 1) % 2 else 1
            record("right unit", (i,), _freeze(s.mu_apply(2, (i, u))),
                   _freeze({i: sgn * one}))
        record("unit in m1 kernel", (u,), _freeze(s.mu_apply(1, (u,))), _freeze({}))
        for k in s.arities():
            if k in (1, 2):
                continue
            for t, out in s.mu[k].items():
                if u in t and out:
                    fails.append((f"unit kills mu_{k}", t, one, Fraction(0)))
    if s.augmentation is not None:
        eps = s.augmentation
        if s.unit is None or eps.get(s.unit, Fraction(0)) != 1:
            fails.append(("augmentation of unit", (), eps.get(s.unit, Fraction(0)), one))

        def eps_of(vec):
            return sum((c * eps.get(o, Fraction(0)) for o, c in vec.items()),
                       Fraction(0))

        for i in range(n):
            record("augmentation chain map", (i,), eps_of(s.mu_apply(1, (i,))),
                   Fraction(0))
            for j in range(n):
                record("augmentation multiplicative", (i, j),
                       eps_of(s.mu_apply(2, (i, j))),
                       eps.get(i, Fraction(0)) * eps.get(j, Fraction(0)))
    return CheckReport(not fails, fails)


def _freeze(vec: Vector):
    return tuple(sorted(_clean(vec).items()))


def check_ainfty(s: CyclicStructure, max_arity: int) -> CheckReport:
    """Verify sum over k1+k2=k+1, p of mu_{k1} ∘_1^p mu_{k2} = 0 up to max_arity."""
    fails = []
    deg = s.basis.degrees
    arities = s.arities()
    for k in range(1, max_arity + 1):
        for letters in product(range(len(s.basis)), repeat=k):
            acc: Vector = {}
            for k2 in arities:
                k1 = k + 1 - k2
                if k1 < 1 or k1 not in arities:
                    continue
                for p in range(1, k1 + 1):
                    inner = s.mu_apply(k2, letters[p - 1:p - 1 + k2])
                    if not inner:
                        continue
                    sgn = -1 if sum(deg[i] for i in letters[:p - 1]) % 2 else 1
                    for mid, c in inner.items():
                        outer_letters = letters[:p - 1] + (mid,) + letters[p - 1 + k2:]
                        for o, c2 in s.mu_apply(k1, outer_letters).items():
                            new = acc.get(o, Fraction(0)) + sgn * c * c2
                            if new:
                                acc[o] = new
                            else:
                                acc.pop(o, None)
            if acc:
                fails.append((f"A-infinity relation arity {k}", letters,
                              _freeze(acc), ()))
    return CheckReport(not fails, fails)


def check_mu_plus_cyclic(s: CyclicStructure, k: int) -> CheckReport:
    """mu_k+ composed with the cyclic rotation equals mu_k+ (all basis tuples)."""
    fails = []
    deg = s.basis.degrees
    for letters in product(range(len(s.basis)), repeat=k + 1):
        lhs = s.mu_plus(k, letters)
        rot = (letters[-1],) + letters[:-1]
        sign = koszul_sign(tuple((i + 1) % (k + 1) for i in range(k + 1)),
                           [deg[i] for i in letters])
        if lhs != sign * s.mu_plus(k, rot):
            fails.append((f"mu_{k}+ cyclicity", letters, lhs,
                          sign * s.mu_plus(k, rot)))
    return CheckReport(not fails, fails)


# ---------------------------------------------------------------------------
# bar differentials
# ---------------------------------------------------------------------------

Tensor = dict[Word, Fraction]


def _add_into(acc: Tensor, w: Word, c: Fraction) -> None:
    new = acc.get(w, Fraction(0)) + c
    if new:
        acc[w] = new
    else:
        acc.pop(w, None)


def hochschild_b_tensor(s: CyclicStructure, letters: Word) -> Tensor:
    """The full bar differential b = b' + R on a plain tensor word.

    b'^k sums t^i ∘ (mu_j ⊗ id) ∘ t^{-i} over j = 1..k, i = 0..k-j; the
    remainder R^k sums (mu_j ⊗ id) ∘ t^i over j and i = 1..j-1.
    """
    letters = tuple(letters)
    k = len(letters)
    deg = s.basis.degrees
    acc: Tensor = {}

    def rot_sign(word, r):
        # (word2, sign) with t^r(word) = sign * word2
        cur, sign = tuple(word), 1
        for _ in range(r % max(len(word), 1)):
            if len(cur) == 1:
                break
            last = deg[cur[-1]]
            rest = sum(deg[i] for i in cur[:-1])
            sign *= -1 if (last % 2) and (rest % 2) else 1
            cur = (cur[-1],) + cur[:-1]
        return cur, sign

    for j in s.arities():
        if j > k:
            continue
        # b' part: i = 0..k-j, conjugated by rotations
        for i in range(0, k - j + 1):
            # t_k^{-i}: rotate k - i times
            base, sgn0 = rot_sign(letters, (k - i) % k if k else 0)
            head = base[:j]
            img = s.mu_apply(j, head)
            if not img:
                continue
            for mid, c in img.items():
                word2 = (mid,) + base[j:]
                out, sgn1 = rot_sign(word2, i % len(word2))
                _add_into(acc, out, sgn0 * sgn1 * c)
        # R part: i = 1..j-1
        for i in range(1, j):
            base, sgn0 = rot_sign(letters, i % k if k else 0)
            if len(base) < j:
                continue
            head = base[:j]
            img = s.mu_apply(j, head)
            if not img:
                continue
            for mid, c in img.items():
                word2 = (mid,) + base[j:]
                _add_into(acc, word2, sgn0 * c)
    return acc


def hochschild_b_dga_tensor(s: CyclicStructure, letters: Word) -> Tensor:
    """Closed-form bar differential of a dg algebra on a cyclic generating word.

    Independent route used as an oracle against :func:`hochschild_b_tensor`
    restricted to the cyclic quotient.
    """
    letters = tuple(letters)
    k = len(letters)
    deg = s.basis.degrees
    acc: Tensor = {}
    for i in range(k):
        sgn = -1 if sum(deg[x] for x in letters[:i]) % 2 else 1
        for mid, c in s.mu_apply(1, (letters[i],)).items():
            _add_into(acc, letters[:i] + (mid,) + letters[i + 1:], sgn * c)
    for i in range(k - 1):
        sgn = -1 if sum(deg[x] for x in letters[:i]) % 2 else 1
        for mid, c in s.mu_apply(2, (letters[i], letters[i + 1])).items():
            _add_into(acc, letters[:i] + (mid,) + letters[i + 2:], sgn * c)
    if k >= 2:
        sgn = -1 if (deg[letters[-1]] % 2) and sum(deg[x] for x in letters[:-1]) % 2 else 1
        for mid, c in s.mu_apply(2, (letters[-1], letters[0])).items():
            _add_into(acc, (mid,) + letters[1:-1], sgn * c)
    return acc


def hochschild_b_cyclic(s: CyclicStructure, letters: Word) -> Tensor:
    """The bar differential on the cyclic quotient, on canonical representatives."""
    acc: Tensor = {}
    for w, c in hochschild_b_tensor(s, letters).items():
        canon, sign = canonicalize(w, s.basis)
        if canon is not None:
            _add_into(acc, canon, sign * c)
    return acc


def apply_to_chain(fn, s: CyclicStructure, chain: Tensor) -> Tensor:
    acc: Tensor = {}
    for w, c in chain.items():
        for w2, c2 in fn(s, w).items():
            _add_into(acc, w2, c * c2)
    return acc


def dual_b(s: CyclicStructure, psi: CochainTensor,
           out_weights=None) -> CochainTensor:
    """Precomposition of an arity-1 cochain with the cyclic bar differential.

    The output is supported on weights up to (max input weight) + 1; with a
    truncation bound W on psi the result is honest up to W + 1.
    """
    if psi.arity != 1:
        raise ValueError("dual_b takes arity-1 cochains")
    bound = None if psi.weight_bound is None else psi.weight_bound + 1
    out = CochainTensor(psi.basis, 1, psi.slot_shift, bound)
    if psi.is_zero() and out_weights is None:
        return out
    if out_weights is None:
        ws = psi.weights()
        out_weights = sorted({w for w in ws} | {w + 1 for w in ws})
    degs = {s.basis.word_degree(key[0]) for key in psi.values}
    from .words import TruncationError

    for w in sorted(out_weights):
        if out.weight_bound is not None and w > out.weight_bound:
            continue
        try:
            for deg_out in {d - 1 for d in degs}:
                for u in canonical_words(s.basis, w, deg_out):
                    val = Fraction(0)
                    for v, c in hochschild_b_cyclic(s, u).items():
                        val += c * psi.eval_word(v)
                    if val:
                        out.add((u,), val)
        except TruncationError:
            # a weight-preserving term needed psi beyond its bound
            out.weight_bound = w - 1
            out.values = {k: v for k, v in out.values.items() if len(k[0]) < w}
    return out


# ---------------------------------------------------------------------------
# comparison with the classical (unshifted) complex
# ---------------------------------------------------------------------------

def suspension_sign(s: CyclicStructure, letters: Word) -> int:
    """Koszul sign distributing one degree -1 symbol per letter of a word.

    Uses the unshifted letter degrees ``|v| + 1``.
    """
    deg = s.basis.degrees
    total = 0
    running = 0
    for x in letters[:-1]:
        running += deg[x] + 1
        total += running
    return -1 if total % 2 else 1


def classical_shift_U(s: CyclicStructure, letters: Word) -> tuple[Word, int]:
    """The degree shift sending an unshifted word to its shifted image."""
    return tuple(letters), suspension_sign(s, letters)


def classical_shift_U_inverse(s: CyclicStructure, letters: Word) -> tuple[Word, int]:
    return tuple(letters), suspension_sign(s, letters)


def classical_b_tensor(s: CyclicStructure, letters: Word) -> Tensor:
    """The classical Hochschild differential on the unshifted word complex.

    Built from the unshifted operations ``mu~_1``, ``mu~_2`` (obtained from
    the shifted ones by suspension signs); the mu_1 half enters with the
    global sign (-1)^(k+1).
    """
    if s.arities() not in ([], [1], [2], [1, 2]):
        raise ValueError("classical comparison is for dg algebras only")
    letters = tuple(letters)
    k = len(letters)
    udeg = [d + 1 for d in s.basis.degrees]
    acc: Tensor = {}

    def mu1_t(i):
        return s.mu_apply(1, (i,))

    def mu2_t(i, j):
        sgn = -1 if udeg[i] % 2 else 1
        return {o: sgn * c for o, c in s.mu_apply(2, (i, j)).items()}

    for i in range(k - 1):
        sgn = -1 if i % 2 else 1
        for mid, c in mu2_t(letters[i], letters[i + 1]).items():
            _add_into(acc, letters[:i] + (mid,) + letters[i + 2:], sgn * c)
    if k >= 2:
        e = (k - 1) + udeg[letters[-1]] * sum(udeg[x] for x in letters[:-1])
        sgn = -1 if e % 2 else 1
        for mid, c in mu2_t(letters[-1], letters[0]).items():
            _add_into(acc, (mid,) + letters[1:-1], sgn * c)
    for i in range(k):
        sgn_i = -1 if sum(udeg[x] for x in letters[:i]) % 2 else 1
        sgn_k = -1 if (k + 1) % 2 else 1
        for mid, c in mu1_t(letters[i]).items():
            _add_into(acc, letters[:i] + (mid,) + letters[i + 1:], sgn_i * sgn_k * c)
    return acc


def classical_rotation(s: CyclicStructure, letters: Word) -> tuple[Word, int]:
    """Signed rotation on the classical complex: (-1)^(k-1) times the Koszul rotation."""
    letters = tuple(letters)
    k = len(letters)
    udeg = [d + 1 for d in s.basis.degrees]
    e = (k - 1) + udeg[letters[-1]] * sum(udeg[x] for x in letters[:-1])
    return (letters[-1],) + letters[:-1], (-1 if e % 2 else 1)


def conjugated_b_tensor(s: CyclicStructure, letters: Word) -> Tensor:
    """U^{-1} ∘ b ∘ U on an unshifted word; must equal classical_b_tensor."""
    _, sgn_in = classical_shift_U(s, letters)
    acc: Tensor = {}
    for w, c in hochschild_b_tensor(s, letters).items():
        _, sgn_out = classical_shift_U(s, w)
        _add_into(acc, w, sgn_in * sgn_out * c)
    return acc


# ---------------------------------------------------------------------------
# units, augmentations and the reduced subcomplex
# ---------------------------------------------------------------------------

def reduced_membership(s: CyclicStructure, psi: CochainTensor,
                       max_weight: int | None = None) -> bool:
    """Whether an arity-1 cochain kills every word with the unit prepended."""
    if s.unit is None:
        raise ValueError(f"{s.name}: no unit")
    if psi.arity != 1:
        raise ValueError("reduced membership is for arity-1 cochains")
    ws = psi.weights()
    if not ws:
        return True
    top = max(ws) if max_weight is None else max_weight
    if psi.eval_word((s.unit,)):
        return False
    for w in range(1, top):
        for u in canonical_words(s.basis, w):
            if psi.eval_tuple(((s.unit,) + u,)):
                return False
    return True


def unit_cochain(s: CyclicStructure, q: int,
                 weight_bound: int | None = None) -> CochainTensor:
    """Pullback along the augmentation of the dual of the q-th unit power.

    The class of ``unit^q`` is annihilated for even q (the rotation sign on
    two unit letters is -1), so the cochain is zero there.
    """
    if s.unit is None:
        raise ValueError(f"{s.name}: no unit")
    if s.augmentation is None:
        aug = {s.unit: Fraction(1)}
    else:
        aug = s.augmentation
    out = CochainTensor(s.basis, 1, s.slot_shift, weight_bound)
    for u in canonical_words(s.basis, q):
        coeff = math.prod((aug.get(i, Fraction(0)) for i in u), start=Fraction(1))
        if coeff:
            out.add((u,), coeff)
    return out


def cochain_basis(s: CyclicStructure, weight: int, degree: int | None = None,
                  reduced: bool = False, slot_shift: int | None = None):
    """Dual-word generators of the (reduced) cyclic cochain complex."""
    shift = s.slot_shift if slot_shift is None else slot_shift
    for u in canonical_words(s.basis, weight, degree):
        if reduced and s.unit is not None and s.unit in u:
            continue
        yield dual_word(s.basis, u, shift)
