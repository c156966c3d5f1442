from fractions import Fraction

import pytest

from mzvcycles.dualsums import (
    coefficient_recursion_holds,
    d_lie,
    dual_tree,
    one_leaf_positions,
    strip_leaf,
)
from mzvcycles.trees import decompose, graft, leaf, lyndon_tree, normalize_sign
from mzvcycles.words import lyndon_words, word, word_str

from test_trees import all_trees, words_of_length


def reduced_trees(n):
    out = []
    for t in all_trees(n):
        norm = normalize_sign(t)
        if norm is not None and norm[0] is t and norm[1] == 1:
            out.append(t)
    return out


def test_single_tree_up_to_weight_three():
    for s in ["0", "1", "01", "001", "011"]:
        dt = dual_tree(word(s))
        assert dt.combination == {lyndon_tree(word(s)): Fraction(1)}


def test_weight_four_first_combination():
    dt = dual_tree(word("0011"))
    expected = {
        graft(lyndon_tree(word("0")), lyndon_tree(word("011"))): Fraction(1),
        graft(lyndon_tree(word("001")), lyndon_tree(word("1"))): Fraction(1),
    }
    assert dt.combination == expected
    # the other length-4 words stay single trees
    for s in ["0001", "0111"]:
        assert dual_tree(word(s)).combination == {lyndon_tree(word(s)): Fraction(1)}


def test_leading_coefficient_is_one():
    for n in range(1, 7):
        for w in words_of_length(n):
            assert dual_tree(w).combination[lyndon_tree(w)] == 1


def test_support_is_reduced():
    for n in range(1, 7):
        for w in words_of_length(n):
            for t in dual_tree(w).combination:
                assert normalize_sign(t) == (t, 1)


def test_leaf_sides():
    def sides_ok(t, is_right):
        if t.is_leaf:
            return t.dec == (1 if is_right else 0)
        return sides_ok(t.left, False) and sides_ok(t.right, True)

    for n in range(2, 7):
        for w in words_of_length(n):
            for t in dual_tree(w).combination:
                assert sides_ok(t.left, False) and sides_ok(t.right, True)


def test_duality_matrix():
    # the load-bearing cross-module identity: the coefficient of a
    # reduced tree T in T_W equals the coefficient of W in [T]
    for n in range(1, 7):
        duals = {w: dual_tree(w).combination for w in words_of_length(n)}
        for t in reduced_trees(n):
            dec = decompose(t)
            for w, comb in duals.items():
                assert comb.get(t, Fraction(0)) == dec.get(w, 0)


def test_d_lie_examples():
    assert d_lie(dual_tree(word("01"))) == {(word("0"), word("1")): Fraction(1)}
    assert d_lie(dual_tree(word("0"))) == {}
    got = d_lie(dual_tree(word("01011")))
    assert got == {
        (word("01"), word("011")): Fraction(1),
        (word("0011"), word("1")): Fraction(1),
    }


def test_d_lie_matches_bracket_expand():
    from mzvcycles.trees import bracket_expand

    for n in range(2, 7):
        for w in words_of_length(n):
            got = d_lie(dual_tree(w))
            words = lyndon_words(n - 1)
            expected = {}
            for u in words:
                for v in words:
                    if len(u) + len(v) == n and u < v:
                        c = bracket_expand(u, v).get(w, 0)
                        if c:
                            expected[(u, v)] = Fraction(c)
            assert got == expected, word_str(w)


def test_strip_leaf_roundtrip():
    from mzvcycles.trees import insert_at_leaf

    for n in range(2, 6):
        for w in words_of_length(n):
            for t in dual_tree(w).combination:
                for pos in one_leaf_positions(t):
                    t1, t2, j = strip_leaf(t, pos)
                    assert insert_at_leaf(t2, j, t1) == t


def test_coefficient_recursion():
    for n in range(2, 6):
        for w in words_of_length(n):
            for t in dual_tree(w).combination:
                for pos in one_leaf_positions(t):
                    assert coefficient_recursion_holds(w, t, pos), (
                        word_str(w),
                        repr(t),
                        pos,
                    )


def test_d_lie_square_zero():
    # dual to Jacobi: applying the cut twice and antisymmetrizing
    # over the three slots cancels
    for n in range(2, 7):
        for w in words_of_length(n):
            acc = {}

            def add(ws, c):
                ws = list(ws)
                sign = 1
                for i in range(len(ws)):
                    for j in range(len(ws) - 1 - i):
                        if ws[j] > ws[j + 1]:
                            ws[j], ws[j + 1] = ws[j + 1], ws[j]
                            sign = -sign
                if len(set(ws)) < 3:
                    return
                key = tuple(ws)
                v = acc.get(key, Fraction(0)) + sign * c
                if v:
                    acc[key] = v
                else:
                    acc.pop(key, None)

            for (u, v), c in d_lie(dual_tree(w)).items():
                if len(u) >= 2:
                    for (a, b), c2 in d_lie(dual_tree(u)).items():
                        add((a, b, v), c * c2)
                if len(v) >= 2:
                    for (a, b), c2 in d_lie(dual_tree(v)).items():
                        add((u, a, b), -c * c2)
            assert not acc, word_str(w)
