"""Cyclic words over a graded basis and weight-truncated dual cochains.

A word is a nonempty tuple of letter indices into a :class:`GradedBasis`.
The rotation ``t`` moves the last letter to the front and multiplies by the
Koszul sign ``(-1)**(|v_k| * (|v_1| + ... + |v_{k-1}|))``; a cyclic word is a
word modulo this signed rotation.  Canonical representatives are the
rotation whose label sequence is lexicographically minimal (ties broken by
the smallest rotation count), with the accumulated sign pushed into
coefficients.  A cyclic word whose stabilizing rotation carries sign -1 is
its own negative: the class is zero and the word is called *annihilated*.

Cochain tensors are arity-``k`` functionals on tuples of cyclic words, with
support truncated at a weight bound when they arise from truncated data.
Tuples are stored on canonically sorted keys; swapping two slots costs the
Koszul sign in the per-slot degrees shifted by ``slot_shift`` (the shift
under which the product/coproduct operations become symmetric, i.e.
``m - 3`` for a pairing of degree ``2 - m``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .signs import GradedBasis, Scalar, koszul_sign

Word = tuple[int, ...]

INFINITE = math.inf


class TruncationError(Exception):
    """Raised when a value is requested beyond a cochain's truncation bound."""


def rotate(letters: Word, basis: GradedBasis) -> tuple[Word, int]:
    """Apply the rotation once: last letter to the front, with Koszul sign."""
    if not letters:
        raise ValueError("words are nonempty")
    k = len(letters)
    if k == 1:
        return letters, 1
    last = basis.degrees[letters[-1]]
    rest = sum(basis.degrees[i] for i in letters[:-1])
    sign = -1 if (last % 2) and (rest % 2) else 1
    return (letters[-1],) + letters[:-1], sign


def rotations(letters: Word, basis: GradedBasis) -> list[tuple[Word, int]]:
    """All k rotations ``t^r`` of a word with their accumulated signs, r = 0..k-1."""
    out = [(letters, 1)]
    cur, sign = letters, 1
    for _ in range(len(letters) - 1):
        cur, s = rotate(cur, basis)
        sign *= s
        out.append((cur, sign))
    return out


@lru_cache(maxsize=None)
def _canonical(letters: Word, basis: GradedBasis) -> tuple[Word | None, int]:
    rots = rotations(letters, basis)
    ranked = [(tuple(basis.lex_rank[i] for i in w), r) for r, (w, _) in enumerate(rots)]
    best_rank, best_r = min(ranked)
    canon, sign = rots[best_r]
    for rank, r in ranked:
        if rank == best_rank and rots[r][1] != sign and rots[r][0] == canon:
            return None, 1
    return canon, sign


def canonicalize(letters: Word, basis: GradedBasis) -> tuple[Word | None, int]:
    """Canonical rotation of a word.

    Returns ``(canonical_letters, sign)`` with ``[letters] = sign * [canonical]``
    in the cyclic quotient, or ``(None, 1)`` when the class is annihilated.
    """
    return _canonical(tuple(letters), basis)


def is_canonical(letters: Word, basis: GradedBasis) -> bool:
    canon, _ = canonicalize(letters, basis)
    return canon == tuple(letters)


def section_iota(letters: Word, basis: GradedBasis) -> list[tuple[Word, Fraction]]:
    """The averaged cyclic-symmetric tensor (1/k) * sum of signed rotations.

    Defined for non-annihilated classes only; projecting the result back to
    the cyclic quotient returns the class itself.
    """
    canon, _ = canonicalize(letters, basis)
    if canon is None:
        raise ValueError("annihilated cyclic word has no section")
    k = Fraction(1, len(letters))
    terms: dict[Word, Fraction] = {}
    for w, s in rotations(tuple(letters), basis):
        terms[w] = terms.get(w, Fraction(0)) + k * s
    return [(w, c) for w, c in terms.items() if c]


def canonical_words(basis: GradedBasis, weight: int, degree: int | None = None):
    """All non-annihilated canonical cyclic words of a given weight (and degree)."""
    if weight < 1:
        return
    m = len(basis)

    def rec(prefix):
        if len(prefix) == weight:
            if degree is not None and basis.word_degree(prefix) != degree:
                return
            canon, _ = canonicalize(prefix, basis)
            if canon == prefix:
                yield prefix
            return
        for i in range(m):
            yield from rec(prefix + (i,))

    yield from rec(())


def slot_degree(letters: Word, basis: GradedBasis, slot_shift: int) -> int:
    """Degree of a word seen as one slot of a symmetric tuple."""
    return basis.word_degree(letters) + slot_shift


def canonical_key(words: tuple[Word, ...], basis: GradedBasis, slot_shift: int):
    """Sort a tuple of canonical words into the canonical slot order.

    Returns ``(key, sign)``, or ``None`` when the tuple is self-annihilating
    (two equal slots of odd shifted degree).
    """
    k = len(words)
    if k == 1:
        return words, 1
    degs = [slot_degree(w, basis, slot_shift) for w in words]
    keys = [(len(w), tuple(basis.lex_rank[i] for i in w)) for w in words]
    order = sorted(range(k), key=lambda i: keys[i])
    for a in range(k):
        for b in range(a + 1, k):
            if words[a] == words[b] and degs[a] % 2:
                return None
    sigma = [0] * k
    for pos, i in enumerate(order):
        sigma[i] = pos
    sign = koszul_sign(tuple(sigma), degs)
    return tuple(words[i] for i in order), sign


class CochainTensor:
    """A weight-truncated functional on ``arity``-tuples of cyclic words.

    ``values`` maps canonically ordered tuples of canonical words to exact
    coefficients; evaluation on arbitrary word tensors routes through
    canonicalization and slot reordering.  ``weight_bound`` is the largest
    total weight at which values are known (``None`` = known everywhere).
    """

    __slots__ = ("basis", "arity", "slot_shift", "weight_bound", "values")

    def __init__(self, basis: GradedBasis, arity: int = 1, slot_shift: int = 0,
                 weight_bound: int | None = None):
        if arity < 1:
            raise ValueError("arity must be positive")
        self.basis = basis
        self.arity = arity
        self.slot_shift = slot_shift
        self.weight_bound = weight_bound
        self.values: dict[tuple[Word, ...], Fraction] = {}

    def copy(self) -> "CochainTensor":
        out = CochainTensor(self.basis, self.arity, self.slot_shift, self.weight_bound)
        out.values = dict(self.values)
        return out

    def add(self, words, coeff) -> None:
        """Accumulate ``coeff`` on a tuple of word tensors (any rotations, any order)."""
        coeff = Fraction(coeff)
        if not coeff:
            return
        if len(words) != self.arity:
            raise ValueError("tuple length does not match arity")
        canons = []
        for w in words:
            canon, s = canonicalize(tuple(w), self.basis)
            if canon is None:
                return
            coeff *= s
            canons.append(canon)
        keyed = canonical_key(tuple(canons), self.basis, self.slot_shift)
        if keyed is None:
            return
        key, s = keyed
        new = self.values.get(key, Fraction(0)) + s * coeff
        if new:
            self.values[key] = new
        else:
            self.values.pop(key, None)

    def set(self, words, coeff) -> None:
        self.add(words, Fraction(coeff) - self.eval_tuple(words))

    def eval_tuple(self, words) -> Fraction:
        """Evaluate on an ordered tuple of word tensors."""
        if len(words) != self.arity:
            raise ValueError("tuple length does not match arity")
        total = sum(len(w) for w in words)
        if self.weight_bound is not None and total > self.weight_bound:
            raise TruncationError(
                f"weight {total} exceeds truncation bound {self.weight_bound}")
        sign = 1
        canons = []
        for w in words:
            canon, s = canonicalize(tuple(w), self.basis)
            if canon is None:
                return Fraction(0)
            sign *= s
            canons.append(canon)
        keyed = canonical_key(tuple(canons), self.basis, self.slot_shift)
        if keyed is None:
            return Fraction(0)
        key, s = keyed
        return sign * s * self.values.get(key, Fraction(0))

    def eval_word(self, letters) -> Fraction:
        return self.eval_tuple((tuple(letters),))

    def is_zero(self) -> bool:
        return not self.values

    def weights(self) -> list[int]:
        return sorted({sum(len(w) for w in key) for key in self.values})

    def filtration_degree(self):
        """Least total weight with a nonzero value; ``inf`` for the zero cochain."""
        ws = self.weights()
        return ws[0] if ws else INFINITE

    def degree(self) -> int | None:
        """Total word degree if homogeneous, else None."""
        degs = {sum(self.basis.word_degree(w) for w in key) for key in self.values}
        if len(degs) == 1:
            return degs.pop()
        return None

    def scaled(self, c) -> "CochainTensor":
        c = Fraction(c)
        out = CochainTensor(self.basis, self.arity, self.slot_shift, self.weight_bound)
        if c:
            out.values = {k: c * v for k, v in self.values.items()}
        return out

    def __add__(self, other: "CochainTensor") -> "CochainTensor":
        if (self.basis, self.arity, self.slot_shift) != (other.basis, other.arity, other.slot_shift):
            raise ValueError("incompatible cochain tensors")
        bound = _min_bound(self.weight_bound, other.weight_bound)
        out = CochainTensor(self.basis, self.arity, self.slot_shift, bound)
        out.values = dict(self.values)
        for k, v in other.values.items():
            new = out.values.get(k, Fraction(0)) + v
            if new:
                out.values[k] = new
            else:
                out.values.pop(k, None)
        return out

    def __sub__(self, other: "CochainTensor") -> "CochainTensor":
        return self + other.scaled(-1)

    def equal_values(self, other: "CochainTensor") -> bool:
        return (self.arity == other.arity and self.slot_shift == other.slot_shift
                and self.values == other.values)

    def restricted(self, weight_bound: int) -> "CochainTensor":
        out = CochainTensor(self.basis, self.arity, self.slot_shift, weight_bound)
        out.values = {k: v for k, v in self.values.items()
                      if sum(len(w) for w in k) <= weight_bound}
        return out

    def items(self):
        return self.values.items()

    def __repr__(self):
        labels = self.basis.labels
        parts = []
        for key in sorted(self.values, key=lambda key: (sum(len(w) for w in key), key)):
            words = "|".join("".join(labels[i] for i in w) for w in key)
            parts.append(f"{words}: {self.values[key]}")
        bound = "" if self.weight_bound is None else f", W<={self.weight_bound}"
        return f"CochainTensor(arity={self.arity}{bound}; " + "; ".join(parts) + ")"


def _min_bound(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def dual_word(basis: GradedBasis, letters, slot_shift: int = 0,
              weight_bound: int | None = None) -> CochainTensor:
    """The dual of a single cyclic word: value 1 on it, 0 elsewhere."""
    out = CochainTensor(basis, 1, slot_shift, weight_bound)
    out.add((tuple(letters),), 1)
    if out.is_zero():
        canon, _ = canonicalize(tuple(letters), basis)
        if canon is not None:
            raise ValueError("dual_word lost its value")
    return out


def product_cochain(psis: list[CochainTensor]) -> CochainTensor:
    """Symmetrized product of arity-1 cochains as an arity-k tensor.

    Values follow the (1/k!)-symmetrized evaluation with Koszul signs in the
    shifted slot degrees.
    """
    if not psis:
        raise ValueError("need at least one factor")
    basis = psis[0].basis
    shift = psis[0].slot_shift
    k = len(psis)
    bound = None
    for p in psis:
        if p.weight_bound is not None:
            bound = p.weight_bound if bound is None else min(bound, p.weight_bound)
    out = CochainTensor(basis, k, shift, bound)
    from itertools import permutations, product

    supports = [list(p.values.items()) for p in psis]
    seen = set()
    for combo in product(*supports):
        words = tuple(key[0] for key, _ in combo)
        keyed = canonical_key(words, basis, shift)
        if keyed is None or keyed[0] in seen:
            continue
        key = keyed[0]
        seen.add(key)
        degs = [slot_degree(w, basis, shift) for w in key]
        total = Fraction(0)
        for sigma in permutations(range(k)):
            sign = koszul_sign(sigma, degs)
            term = Fraction(1)
            for i in range(k):
                term *= psis[i].eval_tuple((key[sigma[i]],))
                if not term:
                    break
            total += sign * term
        total /= math.factorial(k)
        if total:
            out.values[key] = total
    return out


def pair(psi: CochainTensor, words) -> Fraction:
    """Evaluate a cochain tensor against a product of cyclic words."""
    return psi.eval_tuple(tuple(tuple(w) for w in words))


def completion_needed(reduced_basis: GradedBasis) -> bool:
    """Whether infinite-weight cochains can exist over a reduced basis.

    They cannot when every degree is strictly positive (a word of weight k
    then has degree >= k, so fixed-degree components have bounded weight).
    """
    return any(d <= 0 for d in reduced_basis.degrees)


class WeightReport:
    """Per-weight dimensions of a complex slice, with stable-range flags."""

    __slots__ = ("dims", "stable")

    def __init__(self, dims: dict[int, int], stable: dict[int, bool]):
        for d in dims.values():
            if d < 0:
                raise ValueError("dimensions must be nonnegative")
        self.dims = dict(dims)
        self.stable = dict(stable)

    def rows(self):
        return [(w, self.dims[w], self.stable.get(w, False)) for w in sorted(self.dims)]
