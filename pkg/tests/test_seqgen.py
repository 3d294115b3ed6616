"""Sequence construction cross-checked by sieve and hand-rolled greedy."""

import math

import numpy as np
import pytest

from bhneumann import (
    DivisorTooSmall,
    GrowthProfile,
    NoAdmissibleResidue,
    SequenceConstructionError,
    SequenceSet,
    f_of,
    is_prime,
    next_prime,
    sieve,
)
from bhneumann.seqgen import _scan_window


# --- independent oracles -------------------------------------------------

def sieve_oracle(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def lucas_lehmer_is_prime(p: int) -> bool:
    """Primality of the Mersenne number 2^p - 1 for odd prime p."""
    M = (1 << p) - 1
    s = 4
    for _ in range(p - 2):
        s = (s * s - 2) % M
    return s == 0


def greedy_oracle(f_vals: list[int]) -> list[tuple[int, int, int]]:
    """Re-derive (f, d, r) rows with primitive loops and the sieve."""
    flags = sieve_oracle(4 * max(f_vals))
    rows = []
    d_seen, r_seen = [], []
    for i, f in enumerate(f_vals):
        n = i + 1
        d = max(f, 5)
        while not flags[d]:
            d += 1
        assert d >= 16 * n
        q = n
        assert n <= q <= d // 4
        pick = None
        for k in range(q + 1, q + 17 * n):
            good = True
            for dm, rm in zip(d_seen, r_seen):
                if k % dm in {rm % dm, -rm % dm, 2 * rm % dm, -2 * rm % dm}:
                    good = False
                    break
                if rm % d in {k % d, -k % d, 2 * k % d, -2 * k % d}:
                    good = False
                    break
            if good:
                pick = k
                break
        assert pick is not None and 3 * pick < d
        d_seen.append(d)
        r_seen.append(pick)
        rows.append((f, d, pick))
    return rows


# --- primality -----------------------------------------------------------

def test_is_prime_agrees_with_sieve():
    flags = sieve_oracle(20_000)
    for n in range(20_001):
        assert is_prime(n) == bool(flags[n])


def test_sieve_function_matches_oracle():
    got = sieve(10_000)
    want = sieve_oracle(10_000)
    assert np.array_equal(got, want)


def test_is_prime_examples():
    assert is_prime(5)
    assert is_prime(2)
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(561)  # Carmichael number


def test_mersenne_61():
    assert lucas_lehmer_is_prime(61)
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)  # divisible by 3


def test_is_prime_range_limit():
    with pytest.raises(ValueError):
        is_prime(3_317_044_064_679_887_385_961_981)


def test_next_prime():
    assert next_prime(5) == 5
    assert next_prime(8) == 11
    assert next_prime(100) == 101
    assert next_prime(2) == 2


# --- profiles ------------------------------------------------------------

def test_toy_passthrough():
    prof = GrowthProfile.toy(slope=1, intercept=4)
    assert f_of(prof, 1) == 5
    assert f_of(prof, 10) == 14


def test_table_profile_ceiling():
    # log F = e^e gives loglog F = e, hence ceil(e^e / e) = 6
    prof = GrowthProfile.from_table([math.e**math.e])
    assert f_of(prof, 1) == math.ceil(math.e**math.e / math.e) == 6


def test_builtin_f_values():
    prof = GrowthProfile.builtin()
    assert f_of(prof, 1) == 2312
    vals = [f_of(prof, n) for n in range(1, 2001, 50)]
    assert vals == sorted(vals)
    assert vals[-1] > vals[0]


def test_builtin_log_F_growth_floor():
    # hypothesis (a): log F(n) >= c n log(n)^2 loglog(n)^(1+eps), sampled
    prof = GrowthProfile.builtin()
    for n in range(3, 5000, 97):
        floor = (
            prof.c
            * n
            * math.log(n) ** 2
            * math.log(math.log(n)) ** (1.0 + prof.eps)
        )
        assert prof.log_F(n) >= floor


def test_bprime_loglog_identity():
    # loglog F(n) = log c + log(n)^2 holds with equality for this family
    prof = GrowthProfile.bprime(c=1.0)
    for n in range(2, 60):
        assert math.isclose(
            math.log(prof.log_F(n)), math.log(n) ** 2, rel_tol=1e-12
        )


def test_log_F_nondecreasing():
    for prof in (GrowthProfile.toy(), GrowthProfile.builtin(), GrowthProfile.bprime()):
        vals = [prof.log_F(n) for n in range(1, 300)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


# --- sequence derivation -------------------------------------------------

def test_toy_sequences_match_greedy_oracle(toy_seqs):
    rows = greedy_oracle([16 * n + 64 for n in range(1, 31)])
    for n, (f, d, r) in enumerate(rows, start=1):
        assert toy_seqs.f_of(n) == f
        assert toy_seqs.d_of(n) == d
        assert toy_seqs.r_of(n) == r


def test_toy_frozen_prefix(toy_seqs):
    assert [toy_seqs.d_of(n) for n in range(1, 11)] == [
        83, 97, 113, 131, 149, 163, 179, 193, 211, 227,
    ]
    assert [toy_seqs.r_of(n) for n in range(1, 11)] == [
        2, 3, 5, 7, 8, 9, 11, 12, 13, 15,
    ]


def test_first_offset_is_two(toy_seqs):
    assert toy_seqs.r_of(1) == 2


def test_r_of_2_hand_example():
    # d(1)=97, d(2)=101: k=3 avoids +-2, +-4 mod 97, and 2 avoids +-3, +-6 mod 101
    seqs = SequenceSet(GrowthProfile.toy(slope=4, intercept=93))
    seqs.ensure(2)
    assert seqs.d_of(1) == 97 and seqs.d_of(2) == 101
    assert seqs.r_of(2) == 3


def test_bertrand_bracket(toy_seqs):
    for n in range(1, 31):
        f, d = toy_seqs.f_of(n), toy_seqs.d_of(n)
        assert f <= d <= 2 * f
        assert is_prime(d) and d >= 5


def test_monotone(toy_seqs):
    ds = [toy_seqs.d_of(n) for n in range(1, 51)]
    fs = [toy_seqs.f_of(n) for n in range(1, 51)]
    assert ds == sorted(ds)
    assert fs == sorted(fs)


def test_builtin_first_divisor():
    seqs = SequenceSet(GrowthProfile.builtin())
    seqs.ensure(1)
    assert seqs.d_of(1) == 2333
    assert seqs.r_of(1) == 2


def test_divisor_too_small():
    with pytest.raises(DivisorTooSmall) as err:
        SequenceSet(GrowthProfile.toy(slope=1, intercept=4)).ensure(1)
    assert "below the required floor 16" in str(err.value)


def test_no_admissible_residue_direct():
    # window {6..9} has residues 1..4 mod 5, all blocked by r=1 at d=5
    with pytest.raises(NoAdmissibleResidue):
        _scan_window(5, 4, [(5, 1)], 1_000_003)


def test_scan_window_counts_rejections():
    k, rejected = _scan_window(1, 16, [], 83)
    assert k == 2 and rejected == 0


def test_certificates_recorded(toy_seqs):
    cert = toy_seqs.certificates[3]
    assert cert["d"] == 113 and cert["r"] == 5 and cert["q"] == 3
    assert cert["window"] == (3, 53)


def test_validate_toy_hard_ok(toy_seqs):
    report = toy_seqs.validate_hypotheses(50)
    assert report["ok"]
    assert all(
        row["prime_ok"] and row["pairwise_ok"] for row in report["rows"]
    )


def test_validate_toy_series_ok_on_short_prefix():
    # partial sums of 1/d stay below 1/16 through n=8 and cross at n=9
    seqs = SequenceSet(GrowthProfile.toy())
    assert seqs.validate_hypotheses(8)["info"]["series_ok"]
    assert not seqs.validate_hypotheses(9)["info"]["series_ok"]


def test_validate_toy_series_fails_at_200():
    # harmonic-like tail of a linear profile crosses 1/16 before n=200;
    # construction stays valid, so this is advisory only
    seqs = SequenceSet(GrowthProfile.toy())
    report = seqs.validate_hypotheses(200)
    assert report["ok"]
    assert not report["info"]["series_ok"]
    assert report["info"]["series_value"] > 1.0 / 16.0


def test_validate_builtin_all_pass():
    seqs = SequenceSet(GrowthProfile.builtin())
    report = seqs.validate_hypotheses(100)
    assert report["ok"]
    assert report["info"]["growth_floor_ok"]
    assert report["info"]["series_ok"]


def test_preset_constant_five_fails_series():
    seqs = SequenceSet.preset(d=[5, 5, 5, 5], r=[2, 2, 2, 2])
    report = seqs.validate_hypotheses(4)
    assert not report["info"]["series_ok"]


def test_profile_too_small():
    from bhneumann import ProfileTooSmall

    with pytest.raises(ProfileTooSmall):
        f_of(GrowthProfile.from_table([0.5]), 1)
