"""Time the hot kernels on both backends and print a comparison table.

Run as a script:  python3 benchmarks/bench_kernels.py [--depth 8] [--words 2000]
The numba column disappears when numba is not installed or is disabled
via BHNEUMANN_NO_NUMBA=1.
"""

import argparse
import time

import numpy as np

from bhneumann import GroupContext, GrowthProfile, SequenceSet, random_reduced
from bhneumann._kernels import IMPLEMENTATIONS
from bhneumann.words import to_codes


def best_of(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=8, help="tree scan depth")
    ap.add_argument("--words", type=int, default=2000, help="random batch size")
    ap.add_argument("--length", type=int, default=64, help="random word length")
    ap.add_argument("--repeats", type=int, default=3, help="best-of repeats")
    args = ap.parse_args()

    ctx = GroupContext(SequenceSet(GrowthProfile.toy()))
    m = 12  # deep enough that the scan depth stays below the separation bound
    tabs = ctx.letter_tables(m)
    r = ctx.offset(m)
    batch = np.stack(
        [to_codes(random_reduced(args.length, seed)) for seed in range(args.words)]
    )
    long_word = to_codes(random_reduced(4096, 99))

    workloads = {
        "eval_word (4096 letters)": lambda f: f(tabs, long_word),
        f"scan_tree (depth {args.depth})": lambda f: f(tabs, r, args.depth),
        f"scan_tree_trivial (depth {args.depth})": lambda f: f(tabs, args.depth),
        f"check_random_words ({args.words}x{args.length})": lambda f: f(tabs, r, batch),
    }

    names = list(IMPLEMENTATIONS)
    results: dict[str, dict[str, float]] = {w: {} for w in workloads}
    for impl in names:
        kernels = IMPLEMENTATIONS[impl]
        for label, call in workloads.items():
            key = label.split(" ")[0]
            fn = kernels[key]
            call(fn)  # warm: absorbs numba compile, touches caches
            results[label][impl] = best_of(lambda: call(fn), args.repeats)

    width = max(len(w) for w in workloads) + 2
    header = f"{'kernel':<{width}}" + "".join(f"{n + ' (ms)':>14}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label in workloads:
        row = f"{label:<{width}}"
        for n in names:
            row += f"{results[label][n] * 1e3:>14.3f}"
        if len(names) == 2:
            a, b = (results[label][n] for n in names)
            row += f"{a / b:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
