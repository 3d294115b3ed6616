"""Array kernels, each in two interchangeable implementations.

Every kernel exists as a pure numpy version (``*_np``) and, when numba
imports cleanly, a jitted version (``*_nb``).  Setting the environment
variable ``BHNEUMANN_NO_NUMBA=1`` before the first import forces the
numpy path and skips importing numba entirely.  The module level names
``eval_word``, ``scan_tree``, ``scan_tree_trivial`` and
``check_random_words`` point at the active implementation; both
families stay importable so tests and benchmarks can compare them.

Shared conventions:

* ``tabs`` is an int32 array of shape (4, d); row c is the image table
  of the letter with code c (a=0, A=1, b=2, B=3), so ``code ^ 1``
  indexes the inverse letter.
* Words evaluate left to right by table composition: after appending a
  letter with table L, the prefix table T becomes T[L].
* Lamp state mirrors the two-generator evaluation on the integer line:
  letter a shifts by +1, A by -1, b adds 1 (mod 3) to the lamp at the
  current shift, B adds 2.
* Tree scans walk the reduced-word prefix tree in preorder with child
  order a, A, b, B, skipping the child that cancels the last letter.
  This matches ``words.enumerate_reduced(order="dfs")`` exactly.
* Consistency checks require the caller to guarantee support
  separation: r >= 2*depth+1 and d - 2*r >= 2*depth+1 for every depth
  they scan, so distinct lamp overlays never collide.
"""

from __future__ import annotations

import os

import numpy as np


def _numpy_forced() -> bool:
    return os.environ.get("BHNEUMANN_NO_NUMBA", "") not in ("", "0")


HAVE_NUMBA = False
if not _numpy_forced():
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        HAVE_NUMBA = False


def tree_node_count(max_depth: int) -> int:
    """Number of nonempty reduced words of length <= max_depth."""
    return 2 * (3**max_depth - 1)


# ---------------------------------------------------------------- numpy

def eval_word_np(tabs: np.ndarray, codes: np.ndarray) -> np.ndarray:
    """Image table of the word given by letter codes."""
    d = tabs.shape[1]
    cur = np.arange(d, dtype=np.int32)
    for c in codes:
        cur = cur[tabs[c]]
    return cur


def scan_tree_np(tabs: np.ndarray, r: int, max_depth: int) -> tuple[int, int]:
    """Walk all reduced words of length <= max_depth; count check failures.

    Two checks per node: the table is the identity exactly when the lamp
    state is trivial, and the table equals the reconstruction from the
    lamp data (the product of the 3-cycle at each lit lamp position,
    composed with the power of the full cycle given by the shift).
    Returns (nodes visited, nodes failing either check).
    """
    tabs = np.ascontiguousarray(tabs, dtype=np.int32)
    d = tabs.shape[1]
    idx = np.arange(d, dtype=np.int32)
    tables = np.empty((max_depth + 1, d), dtype=np.int32)
    tables[0] = idx
    letters = np.zeros(max_depth + 1, dtype=np.int64)
    child = np.zeros(max_depth + 1, dtype=np.int64)
    lamps = np.zeros(2 * max_depth + 1, dtype=np.int8)
    off = max_depth
    shift = 0
    nz = 0
    nodes = 0
    fails = 0
    depth = 0
    while True:
        if depth < max_depth and child[depth] < 4:
            c = int(child[depth])
            child[depth] += 1
            if depth > 0 and (int(letters[depth - 1]) ^ 1) == c:
                continue
            letters[depth] = c
            np.take(tables[depth], tabs[c], out=tables[depth + 1])
            if c == 0:
                shift += 1
            elif c == 1:
                shift -= 1
            else:
                pos = off + shift
                old = int(lamps[pos])
                new = (old + 1) % 3 if c == 2 else (old + 2) % 3
                lamps[pos] = new
                nz += (new != 0) - (old != 0)
            depth += 1
            child[depth] = 0
            nodes += 1
            cur = tables[depth]
            trivial_perm = bool((cur == idx).all())
            bad = trivial_perm != (shift == 0 and nz == 0)
            sigma = idx.copy()
            for i in range(-depth, depth + 1):
                v = int(lamps[off + i])
                if v:
                    p0 = i % d
                    p1 = (i + r) % d
                    p2 = (i + 2 * r) % d
                    if v == 1:
                        sigma[p0] = p1
                        sigma[p1] = p2
                        sigma[p2] = p0
                    else:
                        sigma[p0] = p2
                        sigma[p1] = p0
                        sigma[p2] = p1
            expected = sigma[(idx + shift) % d]
            if not (cur == expected).all():
                bad = True
            fails += bad
        else:
            if depth == 0:
                break
            c = int(letters[depth - 1])
            if c == 0:
                shift -= 1
            elif c == 1:
                shift += 1
            else:
                pos = off + shift
                old = int(lamps[pos])
                new = (old + 2) % 3 if c == 2 else (old + 1) % 3
                lamps[pos] = new
                nz += (new != 0) - (old != 0)
            depth -= 1
    return nodes, fails


def scan_tree_trivial_np(tabs: np.ndarray, max_depth: int) -> np.ndarray:
    """Preorder bitmap: 1 where the prefix table is the identity."""
    tabs = np.ascontiguousarray(tabs, dtype=np.int32)
    d = tabs.shape[1]
    idx = np.arange(d, dtype=np.int32)
    tables = np.empty((max_depth + 1, d), dtype=np.int32)
    tables[0] = idx
    letters = np.zeros(max_depth + 1, dtype=np.int64)
    child = np.zeros(max_depth + 1, dtype=np.int64)
    out = np.zeros(tree_node_count(max_depth), dtype=np.uint8)
    k = 0
    depth = 0
    while True:
        if depth < max_depth and child[depth] < 4:
            c = int(child[depth])
            child[depth] += 1
            if depth > 0 and (int(letters[depth - 1]) ^ 1) == c:
                continue
            letters[depth] = c
            np.take(tables[depth], tabs[c], out=tables[depth + 1])
            depth += 1
            child[depth] = 0
            out[k] = 1 if bool((tables[depth] == idx).all()) else 0
            k += 1
        else:
            if depth == 0:
                break
            depth -= 1
    return out


def check_random_words_np(
    tabs: np.ndarray, r: int, codes2d: np.ndarray
) -> tuple[int, int]:
    """Run the two scan_tree checks on each whole word in a batch.

    codes2d has shape (words, length); only the final state of each word
    is checked, not its prefixes.  Returns (words checked, failures).
    """
    tabs = np.ascontiguousarray(tabs, dtype=np.int32)
    d = tabs.shape[1]
    idx = np.arange(d, dtype=np.int32)
    nwords, length = codes2d.shape
    fails = 0
    for w in range(nwords):
        cur = idx
        lamps = np.zeros(2 * length + 1, dtype=np.int8)
        off = length
        shift = 0
        nz = 0
        for k in range(length):
            c = int(codes2d[w, k])
            cur = cur[tabs[c]]
            if c == 0:
                shift += 1
            elif c == 1:
                shift -= 1
            else:
                pos = off + shift
                old = int(lamps[pos])
                new = (old + 1) % 3 if c == 2 else (old + 2) % 3
                lamps[pos] = new
                nz += (new != 0) - (old != 0)
        trivial_perm = bool((cur == idx).all())
        bad = trivial_perm != (shift == 0 and nz == 0)
        sigma = idx.copy()
        for i in range(-length, length + 1):
            v = int(lamps[off + i])
            if v:
                p0 = i % d
                p1 = (i + r) % d
                p2 = (i + 2 * r) % d
                if v == 1:
                    sigma[p0] = p1
                    sigma[p1] = p2
                    sigma[p2] = p0
                else:
                    sigma[p0] = p2
                    sigma[p1] = p0
                    sigma[p2] = p1
        expected = sigma[(idx + shift) % d]
        if not (cur == expected).all():
            bad = True
        fails += bad
    return nwords, fails


# ---------------------------------------------------------------- numba

def _eval_word_loops(tabs, codes):
    d = tabs.shape[1]
    cur = np.empty(d, dtype=np.int32)
    buf = np.empty(d, dtype=np.int32)
    for x in range(d):
        cur[x] = x
    for k in range(codes.shape[0]):
        row = tabs[codes[k]]
        for x in range(d):
            buf[x] = cur[row[x]]
        tmp = cur
        cur = buf
        buf = tmp
    return cur


def _scan_tree_loops(tabs, r, max_depth):
    d = tabs.shape[1]
    tables = np.empty((max_depth + 1, d), dtype=np.int32)
    for x in range(d):
        tables[0, x] = x
    letters = np.zeros(max_depth + 1, dtype=np.int64)
    child = np.zeros(max_depth + 1, dtype=np.int64)
    lamps = np.zeros(2 * max_depth + 1, dtype=np.int8)
    ov = np.full(d, -1, dtype=np.int32)
    touched = np.empty(3 * (2 * max_depth + 1), dtype=np.int32)
    off = max_depth
    shift = 0
    nz = 0
    nodes = np.int64(0)
    fails = np.int64(0)
    depth = 0
    while True:
        if depth < max_depth and child[depth] < 4:
            c = child[depth]
            child[depth] += 1
            if depth > 0 and (letters[depth - 1] ^ 1) == c:
                continue
            letters[depth] = c
            row = tabs[c]
            prev = tables[depth]
            nxt = tables[depth + 1]
            for x in range(d):
                nxt[x] = prev[row[x]]
            if c == 0:
                shift += 1
            elif c == 1:
                shift -= 1
            else:
                pos = off + shift
                old = lamps[pos]
                new = (old + 1) % 3 if c == 2 else (old + 2) % 3
                lamps[pos] = new
                if old == 0 and new != 0:
                    nz += 1
                elif old != 0 and new == 0:
                    nz -= 1
            depth += 1
            child[depth] = 0
            nodes += 1
            cur = tables[depth]
            trivial_perm = True
            for x in range(d):
                if cur[x] != x:
                    trivial_perm = False
                    break
            bad = trivial_perm != (shift == 0 and nz == 0)
            wrote = 0
            for i in range(-depth, depth + 1):
                v = lamps[off + i]
                if v != 0:
                    p0 = i % d
                    p1 = (i + r) % d
                    p2 = (i + 2 * r) % d
                    if v == 1:
                        ov[p0] = p1
                        ov[p1] = p2
                        ov[p2] = p0
                    else:
                        ov[p0] = p2
                        ov[p1] = p0
                        ov[p2] = p1
                    touched[wrote] = p0
                    touched[wrote + 1] = p1
                    touched[wrote + 2] = p2
                    wrote += 3
            sh = shift % d
            for x in range(d):
                y = x + sh
                if y >= d:
                    y -= d
                e = ov[y]
                if e < 0:
                    e = y
                if cur[x] != e:
                    bad = True
                    break
            for t in range(wrote):
                ov[touched[t]] = -1
            if bad:
                fails += 1
        else:
            if depth == 0:
                break
            c = letters[depth - 1]
            if c == 0:
                shift -= 1
            elif c == 1:
                shift += 1
            else:
                pos = off + shift
                old = lamps[pos]
                new = (old + 2) % 3 if c == 2 else (old + 1) % 3
                lamps[pos] = new
                if old == 0 and new != 0:
                    nz += 1
                elif old != 0 and new == 0:
                    nz -= 1
            depth -= 1
    return nodes, fails


def _scan_tree_trivial_loops(tabs, max_depth):
    d = tabs.shape[1]
    tables = np.empty((max_depth + 1, d), dtype=np.int32)
    for x in range(d):
        tables[0, x] = x
    letters = np.zeros(max_depth + 1, dtype=np.int64)
    child = np.zeros(max_depth + 1, dtype=np.int64)
    out = np.zeros(2 * (3**max_depth - 1), dtype=np.uint8)
    k = 0
    depth = 0
    while True:
        if depth < max_depth and child[depth] < 4:
            c = child[depth]
            child[depth] += 1
            if depth > 0 and (letters[depth - 1] ^ 1) == c:
                continue
            letters[depth] = c
            row = tabs[c]
            prev = tables[depth]
            nxt = tables[depth + 1]
            trivial = True
            for x in range(d):
                nxt[x] = prev[row[x]]
                if nxt[x] != x:
                    trivial = False
            depth += 1
            child[depth] = 0
            out[k] = 1 if trivial else 0
            k += 1
        else:
            if depth == 0:
                break
            depth -= 1
    return out


def _check_random_words_loops(tabs, r, codes2d):
    d = tabs.shape[1]
    nwords, length = codes2d.shape
    cur = np.empty(d, dtype=np.int32)
    buf = np.empty(d, dtype=np.int32)
    lamps = np.zeros(2 * length + 1, dtype=np.int8)
    ov = np.full(d, -1, dtype=np.int32)
    touched = np.empty(3 * (2 * length + 1), dtype=np.int32)
    off = length
    fails = np.int64(0)
    for w in range(nwords):
        for x in range(d):
            cur[x] = x
        for i in range(2 * length + 1):
            lamps[i] = 0
        shift = 0
        nz = 0
        for k in range(length):
            c = codes2d[w, k]
            row = tabs[c]
            for x in range(d):
                buf[x] = cur[row[x]]
            tmp = cur
            cur = buf
            buf = tmp
            if c == 0:
                shift += 1
            elif c == 1:
                shift -= 1
            else:
                pos = off + shift
                old = lamps[pos]
                new = (old + 1) % 3 if c == 2 else (old + 2) % 3
                lamps[pos] = new
                if old == 0 and new != 0:
                    nz += 1
                elif old != 0 and new == 0:
                    nz -= 1
        trivial_perm = True
        for x in range(d):
            if cur[x] != x:
                trivial_perm = False
                break
        bad = trivial_perm != (shift == 0 and nz == 0)
        wrote = 0
        for i in range(-length, length + 1):
            v = lamps[off + i]
            if v != 0:
                p0 = i % d
                p1 = (i + r) % d
                p2 = (i + 2 * r) % d
                if v == 1:
                    ov[p0] = p1
                    ov[p1] = p2
                    ov[p2] = p0
                else:
                    ov[p0] = p2
                    ov[p1] = p0
                    ov[p2] = p1
                touched[wrote] = p0
                touched[wrote + 1] = p1
                touched[wrote + 2] = p2
                wrote += 3
        sh = shift % d
        for x in range(d):
            y = x + sh
            if y >= d:
                y -= d
            e = ov[y]
            if e < 0:
                e = y
            if cur[x] != e:
                bad = True
                break
        for t in range(wrote):
            ov[touched[t]] = -1
        if bad:
            fails += 1
    return np.int64(nwords), fails


if HAVE_NUMBA:
    eval_word_nb = njit(cache=True)(_eval_word_loops)
    scan_tree_nb = njit(cache=True)(_scan_tree_loops)
    scan_tree_trivial_nb = njit(cache=True)(_scan_tree_trivial_loops)
    check_random_words_nb = njit(cache=True)(_check_random_words_loops)

    eval_word = eval_word_nb
    scan_tree = scan_tree_nb
    scan_tree_trivial = scan_tree_trivial_nb
    check_random_words = check_random_words_nb
    ACTIVE = "numba"
else:
    eval_word = eval_word_np
    scan_tree = scan_tree_np
    scan_tree_trivial = scan_tree_trivial_np
    check_random_words = check_random_words_np
    ACTIVE = "numpy"


IMPLEMENTATIONS: dict[str, dict[str, object]] = {
    "numpy": {
        "eval_word": eval_word_np,
        "scan_tree": scan_tree_np,
        "scan_tree_trivial": scan_tree_trivial_np,
        "check_random_words": check_random_words_np,
    }
}
if HAVE_NUMBA:
    IMPLEMENTATIONS["numba"] = {
        "eval_word": eval_word_nb,
        "scan_tree": scan_tree_nb,
        "scan_tree_trivial": scan_tree_trivial_nb,
        "check_random_words": check_random_words_nb,
    }


def warmup() -> None:
    """Run each active kernel once on tiny input to absorb compile cost."""
    tabs = np.empty((4, 5), dtype=np.int32)
    tabs[0] = (np.arange(5) + 1) % 5
    tabs[1] = (np.arange(5) - 1) % 5
    tabs[2] = np.array([1, 2, 0, 3, 4])
    tabs[3] = np.array([2, 0, 1, 3, 4])
    codes = np.array([0, 2, 1], dtype=np.int8)
    eval_word(tabs, codes)
    scan_tree(tabs, 1, 1)
    scan_tree_trivial(tabs, 2)
    check_random_words(tabs, 1, codes.reshape(1, 3))
