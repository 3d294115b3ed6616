"""Free reduction, enumeration and sampling over {a, A, b, B}."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bhneumann import words as W


def reduce_oracle(raw: str) -> str:
    """Quadratic reference reduction: rescan from scratch after every hit."""
    out = list(raw)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i].swapcase() == out[i + 1]:
                del out[i : i + 2]
                changed = True
                break
    return "".join(out)


letters = st.text(alphabet="aAbB", max_size=24)


def test_free_reduce_examples():
    assert W.free_reduce("aA") == ""
    assert W.free_reduce("baAB") == ""
    assert W.free_reduce("abBa") == "aa"


def test_free_reduce_rejects_bad_letter():
    with pytest.raises(ValueError):
        W.free_reduce("abc")


@given(letters)
def test_free_reduce_matches_oracle(raw):
    got = W.free_reduce(raw)
    assert got == reduce_oracle(raw)
    assert W.is_reduced(got)
    assert W.free_reduce(got) == got


@given(letters)
def test_word_times_inverse_cancels(raw):
    w = W.free_reduce(raw)
    assert W.free_reduce(w + W.invert(w)) == ""
    assert W.free_reduce(W.invert(w) + w) == ""


def test_invert():
    assert W.invert("ab") == "BA"
    assert W.invert("") == ""
    assert W.invert("aBa") == "AbA"


def test_commutator_convention():
    assert W.commutator("b", "a") == "BAba"


def test_conjugate():
    assert W.conjugate("b", "a") == "abA"
    assert W.conjugate("b", "aa") == "aabAA"


def test_enumeration_census():
    words = list(W.enumerate_reduced(8))
    assert words[0] == ""
    by_len = {}
    for w in words:
        by_len.setdefault(len(w), []).append(w)
    assert len(by_len[0]) == 1
    for k in range(1, 9):
        assert len(by_len[k]) == 4 * 3 ** (k - 1)
    assert len(words) == 1 + sum(4 * 3 ** (k - 1) for k in range(1, 9))
    assert len(words) == 13121
    assert len(set(words)) == len(words)
    assert all(W.is_reduced(w) for w in words)


def test_enumeration_orders_agree_as_sets():
    a = set(W.enumerate_reduced(5, order="shortlex"))
    b = set(W.enumerate_reduced(5, order="dfs"))
    assert a == b
    with pytest.raises(ValueError):
        list(W.enumerate_reduced(2, order="sideways"))


def test_random_reduced_contract():
    w = W.random_reduced(64, 1234)
    assert len(w) == 64
    assert W.is_reduced(w)
    assert W.random_reduced(64, 1234) == w
    others = {W.random_reduced(64, s) for s in range(5)}
    assert len(others) > 1


def test_random_reduced_zero_length():
    assert W.random_reduced(0, 7) == ""


def test_to_codes_roundtrip():
    codes = W.to_codes("aAbB")
    assert list(codes) == [0, 1, 2, 3]
    # inverse letter = code xor 1
    assert all(
        W.ALPHABET[c ^ 1] == W.INVERSE_OF[W.ALPHABET[c]] for c in range(4)
    )


def test_splitmix_deterministic():
    s0 = 42
    s1, x1 = W.splitmix64(s0)
    s1b, x1b = W.splitmix64(s0)
    assert (s1, x1) == (s1b, x1b)
    s2, x2 = W.splitmix64(s1)
    assert x2 != x1
