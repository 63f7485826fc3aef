"""Exact scalars, graded bases, permutations and Koszul signs.

All coefficients in the engine are exact rationals (``fractions.Fraction``);
there is no floating point anywhere.  Degrees are always the degrees of the
*shifted* one-letter space: a letter of unshifted degree ``d`` is stored with
degree ``d - 1``, so the unit of a unital model sits in degree ``-1``.

Permutations act on tensor positions.  We encode a permutation of ``k``
factors as a tuple ``sigma`` with ``sigma[i]`` the target position of the
factor currently in position ``i`` (0-indexed).  Reordering homogeneous
factors along ``sigma`` multiplies the tensor by the Koszul sign, one factor
``(-1)**(d_i * d_j)`` for every inverted pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations as _itertools_permutations

Scalar = Fraction

ONE = Fraction(1)
ZERO = Fraction(0)


def scalar(x) -> Fraction:
    """Coerce ints, strings like ``"p/q"``, or Fractions to an exact scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def format_scalar(x: Fraction) -> str:
    """Serialize as ``"p"`` or ``"p/q"`` (lossless round trip)."""
    return str(x)


def identity_perm(k: int) -> tuple[int, ...]:
    return tuple(range(k))


def cyclic_perm(k: int) -> tuple[int, ...]:
    """The rotation sending position i to i+1 and the last position to 0."""
    return tuple((i + 1) % k for i in range(k))


def perm_inverse(sigma: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def perm_compose(sigma: tuple[int, ...], tau: tuple[int, ...]) -> tuple[int, ...]:
    """Composite ``sigma after tau``: first apply tau, then sigma."""
    return tuple(sigma[tau[i]] for i in range(len(tau)))


def all_perms(k: int):
    """All permutations of k positions, as image tuples."""
    return _itertools_permutations(range(k))


def is_perm(sigma: tuple[int, ...]) -> bool:
    return sorted(sigma) == list(range(len(sigma)))


def koszul_sign(sigma: tuple[int, ...], degrees) -> int:
    """Sign for reordering homogeneous factors of the given degrees along sigma.

    Only the parities of the degrees matter.  The identity gives +1; the
    rotation moving the last factor to the front gives
    ``(-1)**(d_k * (d_1 + ... + d_{k-1}))``.
    """
    if len(sigma) != len(degrees):
        raise ValueError("permutation size does not match number of degrees")
    count = 0
    k = len(sigma)
    for i in range(k):
        if degrees[i] % 2 == 0:
            continue
        si = sigma[i]
        for j in range(i + 1, k):
            if si > sigma[j] and degrees[j] % 2 != 0:
                count += 1
    return -1 if count % 2 else 1


def permute_tensor(factors: list, sigma: tuple[int, ...], degrees) -> tuple[list, int]:
    """Reorder factors along sigma, returning the new list and the Koszul sign."""
    if len(factors) != len(sigma):
        raise ValueError("permutation size does not match number of factors")
    out = [None] * len(factors)
    for i, f in enumerate(factors):
        out[sigma[i]] = f
    return out, koszul_sign(sigma, degrees)


def reorder_sign(degrees_in, positions_out) -> int:
    """Koszul sign of the reordering that sends source slot i to slot positions_out[i]."""
    return koszul_sign(tuple(positions_out), degrees_in)


def sort_with_sign(items, degrees, key=None) -> tuple[list, int] | None:
    """Stable-sort graded items, tracking the Koszul sign.

    Returns ``None`` when two equal items of odd degree must be transposed,
    which forces the (anti)symmetrized tensor to vanish.
    """
    k = len(items)
    order = sorted(range(k), key=(lambda i: items[i]) if key is None else (lambda i: key(items[i])))
    keyed = [items[i] if key is None else key(items[i]) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if keyed[i] == keyed[j] and degrees[i] % 2 and degrees[j] % 2:
                return None
    sigma = perm_inverse(tuple(order))
    sign = koszul_sign(sigma, degrees)
    return [items[i] for i in order], sign


@dataclass(frozen=True)
class GradedBasis:
    """A finite ordered basis of the shifted one-letter space.

    ``degrees[i]`` is the degree of letter ``labels[i]`` in the shifted
    space; the unshifted degree is ``degrees[i] + 1``.
    """

    labels: tuple[str, ...]
    degrees: tuple[int, ...]
    lex_rank: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise ValueError("labels and degrees must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")
        by_label = sorted(range(len(self.labels)), key=lambda i: self.labels[i])
        rank = [0] * len(self.labels)
        for r, i in enumerate(by_label):
            rank[i] = r
        object.__setattr__(self, "lex_rank", tuple(rank))

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def word_degree(self, letters) -> int:
        return sum(self.degrees[i] for i in letters)


def shift_basis(basis: GradedBasis, amount: int) -> GradedBasis:
    """Shift every degree down by ``amount``; labels are preserved."""
    return GradedBasis(basis.labels, tuple(d - amount for d in basis.degrees))
