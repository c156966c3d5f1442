import itertools

import pytest
from hypothesis import given, strategies as st

from mzvcycles.words import (
    is_lyndon,
    lyndon_words,
    standard_factorization,
    word,
    word_str,
)


def brute_force_lyndon(max_len):
    out = []
    for n in range(1, max_len + 1):
        for w in itertools.product((0, 1), repeat=n):
            if w and all(w < w[i:] for i in range(1, len(w))):
                out.append(w)
    return sorted(out)


def test_is_lyndon_examples():
    assert is_lyndon(word("0011"))
    assert not is_lyndon(word("10"))
    assert not is_lyndon(word("0101"))
    assert not is_lyndon(())


def test_enumeration_matches_printed_order():
    assert [word_str(w) for w in lyndon_words(4)] == [
        "0", "0001", "001", "0011", "01", "011", "0111", "1",
    ]
    assert [word_str(w) for w in lyndon_words(2)] == ["0", "01", "1"]
    assert [word_str(w) for w in lyndon_words(1)] == ["0", "1"]


@pytest.mark.parametrize("n", range(1, 11))
def test_enumeration_equals_brute_force(n):
    assert lyndon_words(n) == brute_force_lyndon(n)


def test_standard_factorization_examples():
    assert standard_factorization(word("01")) == (word("0"), word("1"))
    assert standard_factorization(word("0011")) == (word("0"), word("011"))
    assert standard_factorization(word("00101")) == (word("001"), word("01"))
    with pytest.raises(ValueError):
        standard_factorization(word("0"))


def test_factorization_brute_force_oracle():
    # the factor v must be the minimum over all proper right factors
    for w in lyndon_words(8):
        if len(w) < 2:
            continue
        u, v = standard_factorization(w)
        assert u + v == w
        assert v == min(w[i:] for i in range(1, len(w)))
        assert is_lyndon(u) and is_lyndon(v)
        assert u < w < v


@given(st.lists(st.integers(0, 1), min_size=1, max_size=12))
def test_lyndon_iff_least_aperiodic_rotation(bits):
    # independent characterization: w is Lyndon iff it is strictly
    # smaller than every nontrivial rotation of itself
    w = tuple(bits)
    rotations = [w[i:] + w[:i] for i in range(1, len(w))]
    assert is_lyndon(w) == all(w < r for r in rotations)
