"""Primality helpers used by the sequence and permutation modules."""

from __future__ import annotations

import numpy as np

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10**24.
# Inputs beyond that bound would make the test merely probabilistic, so
# is_prime refuses them.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 3.3e24."""
    if n < 0 or n >= _MR_LIMIT:
        raise ValueError(f"is_prime supports 0 <= n < {_MR_LIMIT}")
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    k = max(n, 2)
    while not is_prime(k):
        k += 1
    return k


def sieve(limit: int) -> np.ndarray:
    """Boolean primality table for 0..limit inclusive (Eratosthenes)."""
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    flags = np.ones(limit + 1, dtype=bool)
    flags[: min(2, limit + 1)] = False
    p = 2
    while p * p <= limit:
        if flags[p]:
            flags[p * p :: p] = False
        p += 1
    return flags
