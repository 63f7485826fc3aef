"""Boundary, product and coproduct on cyclic cochains, twisting, and the
induced A-infinity family of a twist element.

Conventions (for a structure of manifold dimension m, pairing degree 2-m):

* ``T[i][j] = (-1)^|e_i| P(e^i, e^j)`` is the contraction tensor.
* The boundary inserts the differential letterwise with alternating Koszul
  prefixes.
* The product, on an ordered pair of arity-1 cochains evaluated on a word w,
  sums over all rotations of w and all splittings of the rotated word into
  two (possibly empty) halves w1, w2:

      sum T^{ij} eps(w -> w1 w2) (-1)^(|e_j| |w1|) psi1(e_i w1) psi2(e_j w2).

* The coproduct, evaluated on a pair of words, sums over rotations of each:

      1/2 sum T^{ij} eps1 eps2 (-1)^(|e_j| |w1'|) psi(e_i w1' e_j w2').

* The canonical twist element is supported on weight three:
  ``mc(v1 v2 v3) = (-1)^(m-2) P(m2(v1, v2), v3)``.

All cochains are stored unshifted; the degree shift per slot under which
these operations become symmetric is ``m - 3``, carried as the tensors'
``slot_shift``; Koszul signs between slots always use the shifted degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .algebra import CyclicStructure, dual_b
from .words import (CochainTensor, TruncationError, Word, canonical_key,
                    canonical_words, canonicalize, dual_word, product_cochain,
                    rotations, slot_degree)


def t_tensor(s: CyclicStructure) -> dict[tuple[int, int], Fraction]:
    """Sparse contraction tensor T^{ij} = (-1)^|e_i| P(e^i, e^j)."""
    dual = s.dual_basis()
    out = {}
    for i in range(len(s.basis)):
        sgn = -1 if s.basis.degrees[i] % 2 else 1
        for j in range(len(s.basis)):
            v = sgn * s.pair(dual[i], dual[j])
            if v:
                out[(i, j)] = v
    return out


def _splittings(word: Word, basis):
    """(rotation sign, left half, right half) over all rotations and cuts.

    Rotations run over the full cyclic group; each rotated tensor is split
    at every position, halves of length zero included.
    """
    for rotated, sign in rotations(tuple(word), basis):
        for cut in range(len(word) + 1):
            yield sign, rotated[:cut], rotated[cut:]


# ---------------------------------------------------------------------------
# the three canonical operations
# ---------------------------------------------------------------------------

def q110(s: CyclicStructure, psi: CochainTensor) -> CochainTensor:
    """The boundary: insert the differential at each letter with Koszul prefix."""
    if psi.arity != 1:
        raise ValueError("q110 takes arity-1 cochains")
    out = CochainTensor(s.basis, 1, psi.slot_shift, psi.weight_bound)
    if not s.mu.get(1):
        return out
    deg = s.basis.degrees
    sources = {i: [j for j, tbl in enumerate(s.m1_matrix()) if i in tbl]
               for i in range(len(deg))}
    candidates = set()
    for (u,), _ in psi.items():
        for pos, letter in enumerate(u):
            for j in sources.get(letter, ()):
                candidates.add(canonicalize(u[:pos] + (j,) + u[pos + 1:], s.basis)[0])
    for u in candidates:
        if u is None:
            continue
        val = Fraction(0)
        for pos in range(len(u)):
            sgn = -1 if sum(deg[x] for x in u[:pos]) % 2 else 1
            for o, c in s.mu_apply(1, (u[pos],)).items():
                val += sgn * c * psi.eval_tuple((u[:pos] + (o,) + u[pos + 1:],))
        if val:
            out.add((u,), val)
    return out


def _q210_value(s, T, phi2, word: Word, info1=None, info2=None) -> Fraction:
    """Product value on one word, for an arity-2 functional phi2(x1, x2).

    Optional support info (weights, head letters) for the two factors
    prunes split lengths and contraction entries.
    """
    deg = s.basis.degrees
    total = Fraction(0)
    k = len(word)

    def admits(info, weight):
        weights, heads, bound = info
        return weight in weights or (bound is not None and weight > bound)

    cuts = None
    if info1 is not None and info2 is not None:
        cuts = [c for c in range(k + 1)
                if admits(info1, c + 1) and admits(info2, k - c + 1)]
        if not cuts:
            return total
    for rotated, sign in rotations(tuple(word), s.basis):
        for cut in (range(k + 1) if cuts is None else cuts):
            w1, w2 = rotated[:cut], rotated[cut:]
            d1 = s.basis.word_degree(w1)
            for (i, j), t in T.items():
                if info1 is not None and info1[1] is not None \
                        and i not in info1[1]:
                    continue
                if info2 is not None and info2[1] is not None \
                        and j not in info2[1]:
                    continue
                extra = -1 if (deg[j] % 2) and (d1 % 2) else 1
                val = phi2((i,) + w1, (j,) + w2)
                if val:
                    total += sign * extra * t * val
    return total


def _support_info(psi: CochainTensor):
    """(known weights, head-letter filter, truncation bound) of a cochain.

    Beyond a truncation bound values are unknown rather than zero, so the
    letter filter is disabled there and any over-bound weight is admitted.
    """
    weights = set()
    heads: set | None = set()
    for (u,), _ in psi.items():
        weights.add(len(u))
        for letter in set(u):
            heads.add(letter)
    if psi.weight_bound is not None:
        heads = None
    return weights, heads, psi.weight_bound


def _pair_candidates(s, psi1, psi2):
    candidates = set()
    for (u1,), _ in psi1.items():
        for (u2,), _ in psi2.items():
            for r1, _ in rotations(u1, s.basis):
                for r2, _ in rotations(u2, s.basis):
                    if len(r1) + len(r2) < 3:
                        continue
                    canon, _ = canonicalize(r1[1:] + r2[1:], s.basis)
                    if canon is not None:
                        candidates.add(canon)
    return candidates


def _guarded_pair(psi1, psi2):
    """Product of two evaluations where either factor may be truncated; a
    term is zero whenever one factor is known to vanish, even if the other
    cannot be evaluated there."""
    def phi2(x1, x2):
        try:
            v = psi1.eval_tuple((x1,))
        except TruncationError:
            if psi2.eval_tuple((x2,)) == 0:
                return Fraction(0)
            raise
        if not v:
            return v
        return v * psi2.eval_tuple((x2,))
    return phi2


def q210(s: CyclicStructure, psi1: CochainTensor, psi2: CochainTensor,
         T=None) -> CochainTensor:
    """The product on an ordered pair of arity-1 cochains."""
    if psi1.arity != 1 or psi2.arity != 1:
        raise ValueError("q210 takes arity-1 cochains")
    T = t_tensor(s) if T is None else T
    bound = _contraction_bound(psi1, psi2)
    out = CochainTensor(s.basis, 1, psi1.slot_shift, bound)
    phi2 = _guarded_pair(psi1, psi2)
    info1, info2 = _support_info(psi1), _support_info(psi2)

    for u in _pair_candidates(s, psi1, psi2):
        if bound is not None and len(u) > bound:
            continue
        val = _q210_value(s, T, phi2, u, info1, info2)
        if val:
            out.add((u,), val)
    return out


def q210_tensor(s: CyclicStructure, phi: CochainTensor, word: Word,
                T=None) -> Fraction:
    """Product value against a general arity-2 tensor (not necessarily a product)."""
    if phi.arity != 2:
        raise ValueError("expected an arity-2 tensor")
    T = t_tensor(s) if T is None else T
    return _q210_value(s, T, lambda x1, x2: phi.eval_tuple((x1, x2)), tuple(word))


def coproduct_value(s, T, psi: CochainTensor, w1: Word, w2: Word) -> Fraction:
    """Coproduct value on an ordered pair of words."""
    deg = s.basis.degrees
    total = Fraction(0)
    for r1, s1 in rotations(tuple(w1), s.basis):
        d1 = s.basis.word_degree(r1)
        for r2, s2 in rotations(tuple(w2), s.basis):
            for (i, j), t in T.items():
                extra = -1 if (deg[j] % 2) and (d1 % 2) else 1
                val = psi.eval_tuple(((i,) + r1 + (j,) + r2,))
                if val:
                    total += Fraction(1, 2) * s1 * s2 * extra * t * val
    return total


def collection_sign(s: CyclicStructure, psi: CochainTensor) -> int:
    """Sign relating the collected two-argument product formula, whose first
    argument carries both suspensions, to the distributed pair: the first
    cochain's suspension crosses the other one."""
    if psi.is_zero():
        return 1
    d = psi.degree()
    if d is None:
        raise ValueError("need a homogeneous cochain")
    return -1 if ((s.manifold_dim - 3) * d) % 2 else 1


def distribution_sign(s: CyclicStructure, words: tuple[Word, ...]) -> int:
    """Koszul sign distributing one suspension per slot over a word tuple."""
    sp = (s.manifold_dim - 3) % 2
    if not sp:
        return 1
    total = 0
    running = 0
    for w in words[:-1]:
        running += s.basis.word_degree(w)
        total += running
    return -1 if total % 2 else 1


def q120(s: CyclicStructure, psi: CochainTensor, T=None) -> CochainTensor:
    """The coproduct of an arity-1 cochain, as an arity-2 tensor.

    Values are stored in the distributed-suspension normalization, under
    which slot swaps cost the shifted Koszul sign; the displayed collected
    formula is corrected by the sign distributing the two suspensions.
    """
    if psi.arity != 1:
        raise ValueError("q120 takes arity-1 cochains")
    T = t_tensor(s) if T is None else T
    bound = None if psi.weight_bound is None else psi.weight_bound - 2
    out = CochainTensor(s.basis, 2, psi.slot_shift, bound)

    candidates = set()
    for (u,), _ in psi.items():
        k = len(u)
        if k < 4:
            continue
        for rot, _ in rotations(u, s.basis):
            for p2 in range(2, k - 1 + 1):
                if (rot[0], rot[p2]) not in T:
                    continue
                a = canonicalize(rot[1:p2], s.basis)[0]
                b = canonicalize(rot[p2 + 1:], s.basis)[0] if p2 + 1 < k else None
                if a is not None and b is not None:
                    candidates.add((a, b))

    seen = set()
    for a, b in candidates:
        keyed = canonical_key((a, b), s.basis, psi.slot_shift)
        if keyed is None or keyed[0] in seen:
            continue
        seen.add(keyed[0])
        key = keyed[0]
        val = coproduct_value(s, T, psi, key[0], key[1])
        if val:
            out.add(key, distribution_sign(s, key) * val)
    return out


def _contraction_bound(psi1: CochainTensor, psi2: CochainTensor) -> int | None:
    """Largest output weight at which one contraction of two cochains is honest."""
    b1, b2 = psi1.weight_bound, psi2.weight_bound
    if b1 is None and b2 is None:
        return None
    cands = []
    if b1 is not None:
        cands.append(b1 + min(psi2.weights(), default=1) - 2)
    if b2 is not None:
        cands.append(b2 + min(psi1.weights(), default=1) - 2)
    return min(cands)


# ---------------------------------------------------------------------------
# twist elements and twisted operations
# ---------------------------------------------------------------------------

def canonical_mc(s: CyclicStructure) -> "MaurerCartanFamily":
    """The canonical twist element: weight-three values (-1)^(m-2) m2+(v1,v2,v3)."""
    if 2 not in s.mu:
        raise ValueError(f"{s.name}: no product")
    sgn = Fraction(-1) ** (s.manifold_dim - 2)
    mc10 = CochainTensor(s.basis, 1, s.slot_shift)
    for u in canonical_words(s.basis, 3):
        val = sgn * s.mu_plus(2, u)
        if val:
            mc10.add((u,), val)
    return MaurerCartanFamily(s, {(1, 0): mc10})


@dataclass
class MaurerCartanFamily:
    """Indexed family of twist entries; entry (l, g) is an arity-l cochain."""

    structure: CyclicStructure
    entries: dict[tuple[int, int], CochainTensor]

    def __post_init__(self):
        e10 = self.entries.get((1, 0))
        if e10 is not None and not e10.is_zero() and e10.filtration_degree() <= 2:
            raise ValueError("the (1,0) entry must have filtration degree > 2")

    def entry(self, l: int, g: int) -> CochainTensor:
        got = self.entries.get((l, g))
        if got is None:
            got = CochainTensor(self.structure.basis, max(l, 1),
                                self.structure.slot_shift)
        return got

    def is_strictly_reduced(self) -> bool:
        """Entries other than (1,0) vanish on tuples containing a unit letter."""
        s = self.structure
        if s.unit is None:
            return False
        for (l, g), ten in self.entries.items():
            if (l, g) == (1, 0):
                continue
            for key in ten.values:
                if any(s.unit in w for w in key):
                    return False
        return True


def circ1(s: CyclicStructure, pmc_lg: CochainTensor, psi: CochainTensor,
          T=None) -> CochainTensor:
    """Partial composition of the product with an arity-l twist entry.

    Evaluated on an l-tuple of words, the j-th word is rotated and split as
    in the product; psi eats the left half, the entry the right half:

        sum_j sum eps' eps(w_j -> w1 w2) T^{ab}
              psi(e_a w1) entry(W_1 .. (e_b w2) .. W_l),

    where eps' is the Koszul sign of the block reordering

        (s e_a e_b) W_1..W_{j-1} (s w1 w2)  ->  (s e_a w1) W_1..W_{j-1} (s e_b w2)

    in shifted slot degrees: |e_b|(|W_1|+..+|W_{j-1}| + |s| + |w1|)
    + |w1|(|W_1|+..+|W_{j-1}| + |s|).
    """
    if psi.arity != 1:
        raise ValueError("circ1 twists arity-1 cochains")
    l = pmc_lg.arity
    T = t_tensor(s) if T is None else T
    shift = psi.slot_shift
    deg = s.basis.degrees
    bound = _contraction_bound(pmc_lg, psi)
    out = CochainTensor(s.basis, l, shift, bound)
    s_par = shift % 2

    candidates = set()
    psi_heads = set()
    for (u,), _ in psi.items():
        for rot, _ in rotations(u, s.basis):
            psi_heads.add(rot)
    for key in list(pmc_lg.values):
        for j in range(l):
            for rot, _ in rotations(key[j], s.basis):
                for (a, b), t in T.items():
                    if rot[0] != b:
                        continue
                    for head in psi_heads:
                        if head[0] != a:
                            continue
                        joined = head[1:] + rot[1:]
                        if not joined:
                            continue
                        canon, _ = canonicalize(joined, s.basis)
                        if canon is None:
                            continue
                        keyed = canonical_key(key[:j] + (canon,) + key[j + 1:],
                                              s.basis, shift)
                        if keyed is not None:
                            candidates.add(keyed[0])

    def value(words: tuple[Word, ...]) -> Fraction:
        total = Fraction(0)
        slot_degs = [slot_degree(w, s.basis, shift) for w in words]
        for j in range(l):
            pre = sum(slot_degs[:j]) % 2
            for sign, w1, w2 in _splittings(words[j], s.basis):
                d_w1 = s.basis.word_degree(w1) % 2
                for (a, b), t in T.items():
                    try:
                        pv = psi.eval_tuple(((a,) + w1,))
                    except TruncationError:
                        if pmc_lg.eval_tuple(
                                words[:j] + ((b,) + w2,) + words[j + 1:]) == 0:
                            continue
                        raise
                    if not pv:
                        continue
                    inner = pmc_lg.eval_tuple(
                        words[:j] + ((b,) + w2,) + words[j + 1:])
                    if not inner:
                        continue
                    eps = ((deg[b] % 2) * ((pre + s_par + d_w1) % 2)
                           + d_w1 * ((pre + s_par) % 2)) % 2
                    term = sign * t * pv * inner
                    total += -term if eps else term
        return total

    for words in sorted(candidates, key=lambda ws: (sum(len(w) for w in ws), ws)):
        total = sum(len(w) for w in words)
        if out.weight_bound is not None and total > out.weight_bound:
            continue
        try:
            val = value(words)
        except TruncationError:
            # genuinely unknown here: tighten the honest bound
            out.weight_bound = total - 1
            out.values = {k: v for k, v in out.values.items()
                          if sum(len(w) for w in k) < total}
            continue
        if val:
            out.add(words, val)
    return out


def circ1_l1(s: CyclicStructure, pmc_1g: CochainTensor, psi: CochainTensor,
             T=None) -> CochainTensor:
    """Independent route for one-output entries:

        (-1)^(m-3) sum T^{ab} eps(w -> w1 w2) entry(e_a w1) psi(e_b w2),

    with no interleaving sign; must agree with :func:`circ1` and with the
    ordered product of (entry, psi).
    """
    if pmc_1g.arity != 1:
        raise ValueError("one-output entries only")
    T = t_tensor(s) if T is None else T
    sgn = Fraction(-1) ** (s.manifold_dim - 3)
    bound = _contraction_bound(pmc_1g, psi)
    out = CochainTensor(s.basis, 1, psi.slot_shift, bound)
    phi2 = _guarded_pair(pmc_1g, psi)

    for u in _pair_candidates(s, pmc_1g, psi):
        if bound is not None and len(u) > bound:
            continue
        total = Fraction(0)
        for sign, w1, w2 in _splittings(u, s.basis):
            for (a, b), t in T.items():
                val = phi2((a,) + w1, (b,) + w2)
                if val:
                    total += sign * t * val
        total *= sgn
        if total:
            out.add((u,), total)
    return out


def twisted_q110(s: CyclicStructure, pmc: MaurerCartanFamily,
                 psi: CochainTensor) -> CochainTensor:
    """Twisted boundary: q110 plus the product against the (1,0) entry, in
    the distributed-suspension normalization (the form that agrees exactly
    with the dual bar differential of the induced family)."""
    e10 = pmc.entry(1, 0)
    twist = q210(s, e10, psi).scaled(collection_sign(s, e10))
    return q110(s, psi) + twist


def twisted_q120(s: CyclicStructure, pmc: MaurerCartanFamily,
                 psi: CochainTensor) -> CochainTensor:
    """Twisted coproduct: q120 + (product ∘₁ (2,0)-entry)."""
    base = q120(s, psi)
    e20 = pmc.entry(2, 0)
    if e20.is_zero():
        return base
    return base + circ1(s, e20, psi)


# ---------------------------------------------------------------------------
# unit relations and volume insertion
# ---------------------------------------------------------------------------

def iota_vol(s: CyclicStructure, letters: Word) -> list[tuple[Word, Fraction]]:
    """Signed insertion of the volume letter at every position of a word."""
    vol = s.volume_vector()
    deg = s.basis.degrees
    out = []
    for i in range(len(letters)):
        pre = sum(deg[x] for x in letters[:i])
        for v, c in vol.items():
            sg = -1 if (deg[v] % 2) and (pre % 2) else 1
            out.append((tuple(letters[:i]) + (v,) + tuple(letters[i:]), sg * c))
    return out


def iota_vol_tuple(s: CyclicStructure, words: tuple[Word, ...], slot_shift: int):
    """Volume insertion across tensor slots of a shifted tuple.

    Yields (tuple, coefficient) pairs; slot j enters with the sign
    (-1)^(|vol| (|W_1| + ... + |W_{j-1}| + |s|)) in shifted slot degrees.
    """
    vol = s.volume_vector()
    vol_degs = {s.basis.degrees[i] % 2 for i in vol}
    if len(vol_degs) != 1:
        raise ValueError("volume vector must be homogeneous")
    vdeg = vol_degs.pop()
    s_par = slot_shift % 2
    for j in range(len(words)):
        pre = sum(slot_degree(w, s.basis, slot_shift) for w in words[:j])
        outer = -1 if vdeg and ((pre + s_par) % 2) else 1
        for ins, c in iota_vol(s, words[j]):
            yield words[:j] + (ins,) + words[j + 1:], outer * c


def iota_vol_pairing(s: CyclicStructure, psi: CochainTensor,
                     words: tuple[Word, ...]) -> Fraction:
    """Evaluate psi ∘ (volume insertion) on a tuple of words."""
    total = Fraction(0)
    for tup, c in iota_vol_tuple(s, words, psi.slot_shift):
        total += c * psi.eval_tuple(tup)
    return total


def twisted_q1lg_on_unit(s: CyclicStructure, pmc: MaurerCartanFamily,
                         l: int, g: int) -> CochainTensor:
    """The (1,l,g) twisted operation on the dual of the unit letter:
    minus (the (l,g) entry composed with volume insertion)."""
    if not pmc.is_strictly_reduced():
        raise ValueError("twist element is not strictly reduced")
    entry = pmc.entry(l, g)
    out = CochainTensor(s.basis, l, entry.slot_shift, entry.weight_bound)
    vol_letters = set(s.volume_vector())
    seen = set()
    for key in list(entry.values):
        for j, w in enumerate(key):
            if len(w) < 2:
                continue
            for pos, letter in enumerate(w):
                if letter not in vol_letters:
                    continue
                canon, _ = canonicalize(w[:pos] + w[pos + 1:], s.basis)
                if canon is None:
                    continue
                cand = key[:j] + (canon,) + key[j + 1:]
                keyed = canonical_key(cand, s.basis, entry.slot_shift)
                if keyed is None or keyed[0] in seen:
                    continue
                seen.add(keyed[0])
                val = -iota_vol_pairing(s, entry, keyed[0])
                if val:
                    out.add(keyed[0], val)
    return out


# ---------------------------------------------------------------------------
# induced A-infinity family
# ---------------------------------------------------------------------------

def mu_from_mc(s: CyclicStructure, pmc10: CochainTensor,
               max_arity: int) -> CyclicStructure:
    """The A-infinity family of a one-output twist entry:

        mu_k(v_1..v_k) = (-1)^(m-3) sum T^{ij} entry(e_i v_1..v_k) e_j,

    with mu_1 the structure differential.  Returns a new structure carrying
    the family on the same basis, pairing and unit.
    """
    if pmc10.arity != 1:
        raise ValueError("one-output entries only")
    if not pmc10.is_zero() and pmc10.filtration_degree() <= 2:
        raise ValueError("entry must have filtration degree > 2")
    T = t_tensor(s)
    sgn = Fraction(-1) ** (s.manifold_dim - 3)
    mu = {1: dict(s.mu.get(1, {}))}
    for k in range(2, max_arity + 1):
        table = {}
        for letters in iproduct(range(len(s.basis)), repeat=k):
            img: dict[int, Fraction] = {}
            for (i, j), t in T.items():
                c = pmc10.eval_tuple(((i,) + letters,))
                if c:
                    img[j] = img.get(j, Fraction(0)) + sgn * t * c
            img = {o: c for o, c in img.items() if c}
            if img:
                table[letters] = img
        mu[k] = table
    return CyclicStructure(
        name=f"{s.name}+twist",
        basis=s.basis,
        manifold_dim=s.manifold_dim,
        pairing=s.pairing,
        mu=mu,
        unit=s.unit,
        augmentation=s.augmentation,
    )


def mc_reconstruction_check(s: CyclicStructure, pmc10: CochainTensor,
                            twisted: CyclicStructure, max_weight: int) -> bool:
    """The one-output entry equals (-1)^(m-2) * sum of the family's paired
    operations, on all words up to the given weight."""
    sgn = Fraction(-1) ** (s.manifold_dim - 2)
    for w in range(1, max_weight + 1):
        for u in canonical_words(s.basis, w):
            total = Fraction(0)
            for k in twisted.arities():
                if k >= 2 and k + 1 == w:
                    total += twisted.mu_plus(k, u)
            if pmc10.eval_word(u) != sgn * total:
                return False
    return True


def twisted_boundary_vs_bar_dual(s: CyclicStructure, pmc: MaurerCartanFamily,
                                 psi: CochainTensor, max_arity: int = 6
                                 ) -> tuple[CochainTensor, CochainTensor]:
    """Both routes to the twisted boundary: the operation itself, and the
    dual bar differential of the induced A-infinity family."""
    left = twisted_q110(s, pmc, psi)
    twisted = mu_from_mc(s, pmc.entry(1, 0), max_arity)
    right = dual_b(twisted, psi)
    return left, right


# ---------------------------------------------------------------------------
# relation suite
# ---------------------------------------------------------------------------

def _parity(psi: CochainTensor) -> int:
    """Shifted degree parity of a homogeneous arity-1 cochain."""
    d = psi.degree()
    if d is None:
        raise ValueError("relation checks need homogeneous cochains")
    return (d + psi.slot_shift) % 2


def decompose_arity2(phi: CochainTensor) -> list[tuple[Fraction, CochainTensor, CochainTensor]]:
    """Write an arity-2 tensor as a combination of products of dual words."""
    out = []
    for (a, b), v in phi.values.items():
        x = dual_word(phi.basis, a, phi.slot_shift)
        y = dual_word(phi.basis, b, phi.slot_shift)
        ref = product_cochain([x, y]).eval_tuple((a, b))
        out.append((v / ref, x, y))
    return out


@dataclass
class RelationReport:
    passed: bool
    failures: list[tuple[str, tuple]]

    def summary(self) -> str:
        if self.passed:
            return "all relations hold"
        lines = [f"{len(self.failures)} failing relation(s):"]
        for name, witness in self.failures[:10]:
            lines.append(f"  {name} at {witness}")
        return "\n".join(lines)


def ibl_relations_check(s: CyclicStructure, max_weight: int,
                        T=None) -> RelationReport:
    """Verify the quadratic relations of the canonical structure on all dual
    words of total input weight up to ``max_weight``:

    the boundary squares to zero, is a derivation of the product and a
    coderivation of the coproduct; the product satisfies the graded Jacobi
    identity and the coproduct the graded co-Jacobi identity; product and
    coproduct are Drinfeld-compatible; the composite of coproduct followed
    by product vanishes (involutivity).  All Koszul signs run over shifted
    slot degrees, under which all three operations are odd and symmetric.

    Passing ``T`` overrides the contraction tensor (mutation testing).
    """
    T = t_tensor(s) if T is None else T
    fails: list[tuple[str, tuple]] = []
    shift = s.slot_shift
    gens: list[tuple[int, CochainTensor, Word]] = []
    for w in range(1, max_weight + 1):
        for u in canonical_words(s.basis, w):
            gens.append((w, dual_word(s.basis, u, shift), u))

    def q210_(a, b):
        # distributed-suspension form: the collected formula times the sign
        # of the first argument's suspension crossing
        return q210(s, a, b, T=T).scaled(collection_sign(s, a))

    def q120_(a):
        return q120(s, a, T=T)

    bdry = {u: q110(s, psi) for _, psi, u in gens}
    cop = {u: decompose_arity2(q120_(psi)) for _, psi, u in gens}

    # boundary squared; coderivation over the coproduct; involutivity
    for w, psi, u in gens:
        if not q110(s, bdry[u]).is_zero():
            fails.append(("boundary squared", (u,)))
        acc = q120_(bdry[u])
        inv = CochainTensor(s.basis, 1, shift)
        for c, x, y in cop[u]:
            acc = acc + product_cochain([q110(s, x), y]).scaled(c)
            sgn = -1 if _parity(x) else 1
            acc = acc + product_cochain([x, q110(s, y)]).scaled(c * sgn)
            inv = inv + q210_(x, y).scaled(c)
        if not acc.is_zero():
            fails.append(("coproduct coderivation", (u,)))
        if not inv.is_zero():
            fails.append(("involutivity", (u,)))

    # derivation over the product
    for w1, psi1, u1 in gens:
        for w2, psi2, u2 in gens:
            if w1 + w2 > max_weight:
                continue
            acc = q110(s, q210_(psi1, psi2))
            acc = acc + q210_(bdry[u1], psi2)
            sgn = -1 if _parity(psi1) else 1
            acc = acc + q210_(psi1, bdry[u2]).scaled(sgn)
            if not acc.is_zero():
                fails.append(("product derivation", (u1, u2)))

    # Jacobi
    for w1, psi1, u1 in gens:
        for w2, psi2, u2 in gens:
            if w1 + w2 >= max_weight:
                continue
            for w3, psi3, u3 in gens:
                if w1 + w2 + w3 > max_weight:
                    continue
                p1, p2, p3 = _parity(psi1), _parity(psi2), _parity(psi3)
                acc = q210_(q210_(psi1, psi2), psi3)
                sgn = -1 if (p2 * p3) % 2 else 1
                acc = acc + q210_(q210_(psi1, psi3), psi2).scaled(sgn)
                sgn = -1 if (p1 * (p2 + p3)) % 2 else 1
                acc = acc + q210_(q210_(psi2, psi3), psi1).scaled(sgn)
                if not acc.is_zero():
                    fails.append(("Jacobi", (u1, u2, u3)))

    # co-Jacobi: extend the coproduct over its own output
    for w, psi, u in gens:
        acc3 = CochainTensor(s.basis, 3, shift)
        for c, x, y in cop[u]:
            for c2, a, b in decompose_arity2(q120_(x)):
                acc3 = acc3 + product_cochain([a, b, y]).scaled(c * c2)
            sgn = -1 if _parity(x) else 1
            for c2, a, b in decompose_arity2(q120_(y)):
                acc3 = acc3 + product_cochain([x, a, b]).scaled(c * c2 * sgn)
        if not acc3.is_zero():
            fails.append(("co-Jacobi", (u,)))

    # Drinfeld compatibility: the genus-zero part of extending the product
    # over one output of the coproduct balances the coproduct of the product
    for w1, psi1, u1 in gens:
        for w2, psi2, u2 in gens:
            if w1 + w2 > max_weight:
                continue
            p1, p2 = _parity(psi1), _parity(psi2)
            acc = q120_(q210_(psi1, psi2))
            for c, x, y in cop[u1]:
                px, py = _parity(x), _parity(y)
                s1 = -1 if (py * p2) % 2 else 1
                acc = acc + product_cochain([q210_(x, psi2), y]).scaled(c * s1)
                s2 = -1 if (px * (py + p2)) % 2 else 1
                acc = acc + product_cochain([q210_(y, psi2), x]).scaled(c * s2)
            sgn1 = -1 if p1 else 1
            for c, x, y in cop[u2]:
                px, py = _parity(x), _parity(y)
                acc = acc + product_cochain([q210_(psi1, x), y]).scaled(c * sgn1)
                s2 = -1 if (px * py) % 2 else 1
                acc = acc + product_cochain([q210_(psi1, y), x]).scaled(c * s2 * sgn1)
            if not acc.is_zero():
                fails.append(("Drinfeld compatibility", (u1, u2)))

    return RelationReport(not fails, fails)
