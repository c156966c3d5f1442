"""Shared enumeration helpers for the tree-level test modules."""

from mzvcycles.trees import graft, leaf, normalize_sign
from mzvcycles.words import lyndon_words


def all_trees(n):
    if n == 1:
        return [leaf(0), leaf(1)]
    out = []
    for k in range(1, n):
        for a in all_trees(k):
            for b in all_trees(n - k):
                out.append(graft(a, b))
    return out


def words_of_length(n):
    return [w for w in lyndon_words(n) if len(w) == n]


def reduced_trees(n):
    out = []
    for t in all_trees(n):
        norm = normalize_sign(t)
        if norm is not None and norm[0] is t and norm[1] == 1:
            out.append(t)
    return out
