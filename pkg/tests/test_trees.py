import pytest

from mzvcycles.trees import (
    bracket_expand,
    decompose,
    decompose_tracked,
    graft,
    is_hall,
    leaf,
    lyndon_tree,
    normalize_sign,
)
from mzvcycles.words import word

from treeutil import all_trees, words_of_length


def test_lyndon_tree_shapes():
    t01 = lyndon_tree(word("01"))
    assert t01 == graft(leaf(0), leaf(1))
    t011 = lyndon_tree(word("011"))
    assert t011 == graft(graft(leaf(0), leaf(1)), leaf(1))
    t0011 = lyndon_tree(word("0011"))
    assert t0011 == graft(leaf(0), t011)
    t00101 = lyndon_tree(word("00101"))
    assert t00101 == graft(lyndon_tree(word("001")), t01)


def test_is_hall():
    assert is_hall(lyndon_tree(word("011")))
    assert is_hall(leaf(0))
    assert not is_hall(graft(lyndon_tree(word("01")), lyndon_tree(word("001"))))
    # every Hall tree is the image of its own word
    for n in range(1, 7):
        for w in words_of_length(n):
            assert is_hall(lyndon_tree(w))


def test_normalize_sign():
    t01 = lyndon_tree(word("01"))
    assert normalize_sign(graft(leaf(1), leaf(0))) == (t01, -1)
    assert normalize_sign(graft(leaf(0), leaf(0))) is None
    for n in range(1, 7):
        for w in words_of_length(n):
            assert normalize_sign(lyndon_tree(w)) == (lyndon_tree(w), 1)


def test_decompose_examples():
    t01 = lyndon_tree(word("01"))
    assert decompose(graft(leaf(1), leaf(0))) == {word("01"): -1}
    inner = graft(leaf(0), graft(leaf(1), t01))
    assert decompose(inner) == {word("0011"): -1}
    for n in range(1, 7):
        for w in words_of_length(n):
            assert decompose(lyndon_tree(w)) == {w: 1}


def test_decompose_antisymmetry():
    for n in range(2, 6):
        for wa in range(1, n):
            for a in all_trees(wa):
                for b in all_trees(n - wa):
                    if a == b:
                        assert decompose(graft(a, b)) == {}
                        continue
                    lhs = decompose(graft(a, b))
                    rhs = {w: -c for w, c in decompose(graft(b, a)).items()}
                    assert lhs == rhs


def test_decompose_jacobi():
    for n in range(3, 6):
        for wa in range(1, n - 1):
            for wb in range(1, n - wa):
                for a in all_trees(wa):
                    for b in all_trees(wb):
                        for c in all_trees(n - wa - wb):
                            lhs = decompose(graft(graft(a, b), c))
                            tot = dict(decompose(graft(graft(a, c), b)))
                            for w, v in decompose(graft(a, graft(b, c))).items():
                                tot[w] = tot.get(w, 0) + v
                            assert lhs == {w: v for w, v in tot.items() if v}


def test_decompose_linear_in_tree_weight_bound():
    # termination sanity: every weight <= 6 tree decomposes
    for n in range(1, 7):
        for t in all_trees(n):
            total = sum(decompose(t).values())
            assert isinstance(total, int)


def test_tracked_examples():
    t01 = lyndon_tree(word("01"))
    assert decompose_tracked(t01, 2) == {(t01, 2): 1}
    assert decompose_tracked(graft(leaf(1), leaf(0)), 1) == {(t01, 2): -1}
    with pytest.raises(ValueError):
        decompose_tracked(t01, 3)


def test_tracked_sums_match_decompose():
    # the per-position coefficients regroup to the basis decomposition,
    # independently of which leaf is tracked
    for n in range(1, 6):
        for t in all_trees(n):
            base = decompose(t)
            for i in range(1, t.nleaves + 1):
                tot = {}
                for (s, _k), q in decompose_tracked(t, i).items():
                    if is_hall(s):
                        tot[s.word] = tot.get(s.word, 0) + q
                assert {w: v for w, v in tot.items() if v} == base


def test_tracked_position_sum_independent():
    # summing over tracked leaves at a fixed target position gives the
    # same total as summing over target positions at a fixed leaf
    for n in range(2, 6):
        for t in all_trees(n):
            by_target = {}
            for i in range(1, t.nleaves + 1):
                for (s, k), q in decompose_tracked(t, i).items():
                    key = s
                    by_target[key] = by_target.get(key, 0) + q
            base = decompose(t)
            for s, total in by_target.items():
                if is_hall(s):
                    assert total == base.get(s.word, 0) * s.nleaves


def test_bracket_expand():
    assert bracket_expand(word("0"), word("1")) == {word("01"): 1}
    assert bracket_expand(word("01"), word("011")) == {word("01011"): 1}
    assert bracket_expand(word("001"), word("01")) == {word("00101"): 1}
    assert bracket_expand(word("001"), word("1")) == {word("0011"): 1}
    with pytest.raises(ValueError):
        bracket_expand(word("1"), word("0"))
