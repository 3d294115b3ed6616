"""Lamp state over the integer line with values mod 3, plus a shift.

An element is a finitely supported function Z -> Z/3 together with an
integer translation.  Multiplication translates the right factor's lamps
by the left factor's shift before adding:

    (f, s) * (g, t) = (f + s.g, s + t),   (s.g)(i) = g(i - s).

The two-generator evaluation sends the first letter to the unit shift
and the second letter to the lamp toggle at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass

LampItems = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class WreathElement:
    """Canonical form: lamps sorted by position, values in {1, 2}."""

    lamps: LampItems
    shift: int

    def is_identity(self) -> bool:
        return self.shift == 0 and not self.lamps


def _canonical(lamps: dict[int, int]) -> LampItems:
    return tuple(sorted((p, v % 3) for p, v in lamps.items() if v % 3))


def w_identity() -> WreathElement:
    return WreathElement((), 0)


def w_mul(x: WreathElement, y: WreathElement) -> WreathElement:
    acc = dict(x.lamps)
    for p, v in y.lamps:
        q = p + x.shift
        acc[q] = (acc.get(q, 0) + v) % 3
    return WreathElement(_canonical(acc), x.shift + y.shift)


def w_inv(x: WreathElement) -> WreathElement:
    """Inverse: (f, s)^-1 = (-(-s).f, -s)."""
    acc = {p - x.shift: (-v) % 3 for p, v in x.lamps}
    return WreathElement(_canonical(acc), -x.shift)


def w_eval(word: str) -> WreathElement:
    """Evaluate a word letter by letter, O(1) work per letter.

    Free reduction is invisible here: cancelling letters undo each other
    exactly, so w_eval(w) == w_eval(free_reduce(w)).
    """
    lamps: dict[int, int] = {}
    shift = 0
    for ch in word:
        if ch == "a":
            shift += 1
        elif ch == "A":
            shift -= 1
        elif ch == "b":
            lamps[shift] = (lamps.get(shift, 0) + 1) % 3
        elif ch == "B":
            lamps[shift] = (lamps.get(shift, 0) + 2) % 3
        else:
            raise ValueError(f"letter {ch!r} is not one of aAbB")
    return WreathElement(_canonical(lamps), shift)


def lamp_data(x: WreathElement) -> tuple[dict[int, int], int]:
    """Lamp values keyed by position, plus the shift."""
    return dict(x.lamps), x.shift
