"""The two-generator subgroup of a tower of alternating groups.

Coordinate m of the tower is Alt(d(m)); the first generator maps to the
full cycle x -> x+1 there and the second to the 3-cycle at
(0, r(m), 2r(m)).  A word is trivial in the group iff it is trivial in
every coordinate.  Two facts make that decidable:

* The lamp-state evaluation (wreath module) is a quotient of the group,
  and whenever a coordinate's supports are spread out relative to the
  word length (r(m) and d(m) - 2r(m) both at least 2n+1 for words of
  length n), triviality at that coordinate is equivalent to lamp-state
  triviality.
* The offsets grow past their index, so all but finitely many
  coordinates satisfy the spread condition for a given length; the
  cutoff operation computes where that happens and asserts the boundary.

So the word problem reduces to one lamp-state check plus finitely many
coordinate evaluations below the cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from hashlib import blake2b

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, SpreadAssertionFailed, WitnessCheckFailed
from .perm import Permutation, make_generators
from .seqgen import SequenceSet
from .words import commutator as word_commutator
from .words import conjugate as word_conjugate
from .words import enumerate_reduced, free_reduce, invert, to_codes
from .wreath import WreathElement, w_eval

__all__ = [
    "GroupContext",
    "ElementSignature",
    "coordinate_eval",
    "spread_ok",
    "cutoff",
    "is_trivial",
    "equal",
    "signature",
    "witness",
    "ball",
]


class GroupContext:
    """Sequence data plus a cache of per-coordinate letter tables.

    The cache maps coordinate index m to an int32 array of shape
    (4, d(m)) whose rows are the image tables of the letters a, A, b, B.
    Contexts are immutable once built apart from lazy materialization.
    """

    def __init__(self, seqs: SequenceSet):
        self.seqs = seqs
        self._tabs: dict[int, np.ndarray] = {}

    def degree(self, m: int) -> int:
        return self.seqs.d_of(m)

    def offset(self, m: int) -> int:
        return self.seqs.r_of(m)

    def letter_tables(self, m: int) -> np.ndarray:
        tabs = self._tabs.get(m)
        if tabs is None:
            d = self.seqs.d_of(m)
            r = self.seqs.r_of(m)
            alpha, beta = make_generators(d, r, r)
            tabs = np.empty((4, d), dtype=np.int32)
            tabs[0] = alpha.images
            tabs[1] = np.argsort(alpha.images).astype(np.int32)
            tabs[2] = beta.images
            tabs[3] = np.argsort(beta.images).astype(np.int32)
            tabs.setflags(write=False)
            self._tabs[m] = tabs
        return tabs


@dataclass(frozen=True)
class ElementSignature:
    """Faithful finite fingerprint of a word within one length class.

    Holds the images at every coordinate up to cutoff(2 * n_class) plus
    the lamp-state evaluation.  Words u, v of length <= n_class are
    equal in the group iff their signatures compare equal: the product
    u v^-1 has length <= 2 * n_class, coordinates above that cutoff are
    controlled by the lamp state, and the stored data covers everything
    else.
    """

    low_coords: tuple[Permutation, ...]
    wreath: WreathElement
    n_class: int

    def canonical_bytes(self) -> bytes:
        parts = [self.n_class.to_bytes(4, "big"), len(self.low_coords).to_bytes(4, "big")]
        for p in self.low_coords:
            parts.append(p.degree.to_bytes(4, "big"))
            parts.append(p.images.tobytes())
        parts.append(self.wreath.shift.to_bytes(8, "big", signed=True))
        for pos, val in self.wreath.lamps:
            parts.append(pos.to_bytes(8, "big", signed=True))
            parts.append(val.to_bytes(1, "big"))
        return b"".join(parts)

    def digest(self) -> bytes:
        return blake2b(self.canonical_bytes(), digest_size=16).digest()

    def __hash__(self) -> int:
        return hash(self.digest())


def coordinate_eval(ctx: GroupContext, word: str, m: int) -> Permutation:
    """Image of the word at coordinate m, by direct table composition."""
    tabs = ctx.letter_tables(m)
    return Permutation(_kernels.eval_word(tabs, to_codes(word)))


def spread_ok(ctx: GroupContext, m: int, n: int) -> bool:
    """Support separation at coordinate m for words of length n."""
    r = ctx.seqs.r_of(m)
    d = ctx.seqs.d_of(m)
    return r >= 2 * n + 1 and d - 2 * r >= 2 * n + 1


def cutoff(ctx: GroupContext, n: int) -> int:
    """Largest coordinate where separation fails for length-n words.

    Scans m <= 2n+1: beyond that the offset construction forces
    r(m) > q(m) >= m >= 2n+2.  The second half of the separation
    condition is asserted explicitly on the scanned tail and at the
    first coordinate past the scan, raising SpreadAssertionFailed if a
    degenerate profile violates it.
    """
    bound = 2 * n + 1
    m0 = 0
    for m in range(1, bound + 1):
        if not spread_ok(ctx, m, n):
            m0 = m
    for m in range(m0 + 1, bound + 2):
        d = ctx.seqs.d_of(m)
        r = ctx.seqs.r_of(m)
        if d - 2 * r < 2 * n + 1:
            raise SpreadAssertionFailed(
                f"coordinate {m}: d - 2r = {d - 2 * r} < {2 * n + 1} "
                f"(cutoff scan for length {n})"
            )
    return m0


def _identity_at(ctx: GroupContext, codes: np.ndarray, m: int) -> bool:
    tabs = ctx.letter_tables(m)
    table = _kernels.eval_word(tabs, codes)
    return bool((table == np.arange(tabs.shape[1], dtype=np.int32)).all())


def is_trivial(ctx: GroupContext, word: str) -> bool:
    """Exact word problem: lamp state plus coordinates below the cutoff.

    Coordinates above the cutoff satisfy the separation condition for
    this length, where triviality is equivalent to lamp-state
    triviality, so checking them would be redundant.
    """
    w = free_reduce(word)
    if not w:
        return True
    if not w_eval(w).is_identity():
        return False
    m0 = cutoff(ctx, len(w))
    codes = to_codes(w)
    for m in range(1, m0 + 1):
        if not _identity_at(ctx, codes, m):
            return False
    return True


def equal(ctx: GroupContext, u: str, v: str) -> bool:
    return is_trivial(ctx, u + invert(v))


def signature(ctx: GroupContext, word: str, n_class: int) -> ElementSignature:
    """Fingerprint of a word of length <= n_class; see ElementSignature."""
    w = free_reduce(word)
    if len(w) > n_class:
        raise ValueError(
            f"word of reduced length {len(w)} exceeds the class bound {n_class}"
        )
    m0 = cutoff(ctx, 2 * n_class)
    coords = tuple(coordinate_eval(ctx, w, m) for m in range(1, m0 + 1))
    return ElementSignature(coords, w_eval(w), n_class)


def witness(ctx: GroupContext, m: int) -> str:
    """A word trivial in every coordinate except exactly coordinate m.

    Takes the commutator of the second generator with its conjugate by
    the r(m)-th power of the first.  At coordinate m the two 3-cycles
    share one support point, so they do not commute; at every other
    coordinate the supports are disjoint (this is what the offset
    admissibility conditions buy) and the commutator collapses.  The
    reduced length is exactly 4 + 4 r(m).  All three defining
    properties are verified and WitnessCheckFailed reports any miss,
    since a miss would mean the offset data is corrupt.
    """
    R = ctx.seqs.r_of(m)
    w = word_commutator("b", word_conjugate("b", "a" * R))
    if len(w) != 4 + 4 * R:
        raise WitnessCheckFailed(f"witness({m}) reduced to length {len(w)}")
    if not w_eval(w).is_identity():
        raise WitnessCheckFailed(f"witness({m}) has nontrivial lamp state")
    m0 = cutoff(ctx, len(w))
    if m > m0:
        raise WitnessCheckFailed(
            f"witness({m}) length class has cutoff {m0} below m"
        )
    codes = to_codes(w)
    for k in range(1, m0 + 1):
        triv = _identity_at(ctx, codes, k)
        if k == m and triv:
            raise WitnessCheckFailed(f"witness({m}) trivial at its own coordinate")
        if k != m and not triv:
            raise WitnessCheckFailed(f"witness({m}) nontrivial at coordinate {k}")
    return w


def ball(
    ctx: GroupContext, n: int, budget: int = 100_000
) -> list[tuple[str, ElementSignature]]:
    """Representatives of the distinct group elements of word length <= n.

    Enumerates reduced words in shortlex order and deduplicates by
    signature, so each element keeps its shortlex-least representative.
    Dedup hashes the canonical signature bytes and confirms equality on
    hash collision.
    """
    candidates = 2 * (3**n - 1) + 1 if n >= 1 else 1
    if candidates > budget:
        raise BudgetExceeded(
            f"ball({n}) needs {candidates} candidate words, budget {budget}"
        )
    buckets: dict[bytes, list[ElementSignature]] = {}
    out: list[tuple[str, ElementSignature]] = []
    for w in enumerate_reduced(n):
        sig = signature(ctx, w, n)
        bucket = buckets.setdefault(sig.digest(), [])
        if not any(s == sig for s in bucket):
            bucket.append(sig)
            out.append((w, sig))
    return out
