"""Free words on two generators.

Words are plain strings over the alphabet ``a A b B`` where the upper
case letter is the inverse of the lower case one.  The array kernels use
integer letter codes a=0, A=1, b=2, B=3, chosen so that ``code ^ 1`` is
the code of the inverse letter.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

ALPHABET = "aAbB"
CODE_OF = {c: i for i, c in enumerate(ALPHABET)}
INVERSE_OF = {"a": "A", "A": "a", "b": "B", "B": "b"}

_MASK64 = (1 << 64) - 1


def _check_letters(word: str) -> None:
    for ch in word:
        if ch not in CODE_OF:
            raise ValueError(f"letter {ch!r} is not one of aAbB")


def free_reduce(word: str) -> str:
    """Cancel adjacent inverse pairs until none remain.

    One left-to-right stack pass suffices: a new letter can only cancel
    against the current top of the already reduced prefix.
    """
    out: list[str] = []
    for ch in word:
        if ch not in CODE_OF:
            raise ValueError(f"letter {ch!r} is not one of aAbB")
        if out and out[-1] == INVERSE_OF[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def is_reduced(word: str) -> bool:
    _check_letters(word)
    return all(word[i + 1] != INVERSE_OF[word[i]] for i in range(len(word) - 1))


def invert(word: str) -> str:
    """Inverse word: reversed letters, each inverted."""
    _check_letters(word)
    return "".join(INVERSE_OF[c] for c in reversed(word))


def commutator(g: str, h: str) -> str:
    """g^-1 h^-1 g h, freely reduced."""
    return free_reduce(invert(g) + invert(h) + g + h)


def conjugate(u: str, v: str) -> str:
    """v u v^-1, freely reduced."""
    return free_reduce(v + u + invert(v))


def enumerate_reduced(max_len: int, order: str = "shortlex") -> Iterator[str]:
    """Yield every freely reduced word of length <= max_len exactly once.

    ``order="shortlex"`` yields by length, letters ordered a < A < b < B.
    ``order="dfs"`` yields in preorder of the prefix tree with the same
    child order; the array kernels walk nodes in exactly this order.
    Either way there are 4 * 3**(k-1) words of each length k >= 1.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    if order == "shortlex":
        yield ""
        frontier = [""]
        for _ in range(max_len):
            nxt = []
            for w in frontier:
                blocked = INVERSE_OF[w[-1]] if w else ""
                for ch in ALPHABET:
                    if ch == blocked:
                        continue
                    u = w + ch
                    yield u
                    nxt.append(u)
            frontier = nxt
    elif order == "dfs":
        yield ""

        def walk(w: str) -> Iterator[str]:
            if len(w) == max_len:
                return
            blocked = INVERSE_OF[w[-1]] if w else ""
            for ch in ALPHABET:
                if ch == blocked:
                    continue
                u = w + ch
                yield u
                yield from walk(u)

        yield from walk("")
    else:
        raise ValueError(f"unknown order {order!r}")


def splitmix64(state: int) -> tuple[int, int]:
    """Advance one splitmix64 step; returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def random_reduced(length: int, seed: int) -> str:
    """Deterministic freely reduced word of exactly the given length.

    The first letter is uniform over the four letters; each later letter
    is uniform over the three letters that do not cancel the previous
    one.  The stream is splitmix64 seeded with ``seed``, so equal seeds
    give equal words on every platform.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    if length == 0:
        return ""
    state = seed & _MASK64
    state, z = splitmix64(state)
    out = [ALPHABET[z % 4]]
    for _ in range(length - 1):
        state, z = splitmix64(state)
        blocked = INVERSE_OF[out[-1]]
        choices = [c for c in ALPHABET if c != blocked]
        out.append(choices[z % 3])
    return "".join(out)


def to_codes(word: str) -> np.ndarray:
    """Letter codes as an int8 array (a=0, A=1, b=2, B=3)."""
    _check_letters(word)
    return np.fromiter((CODE_OF[c] for c in word), dtype=np.int8, count=len(word))
