"""Tree sums dual to the Lyndon bracket basis.

T_W is the unique combination of antisymmetry-reduced trees pairing to 1
against the bracket [W] and to 0 against every other Lyndon bracket.  It
is built inductively by grafting shorter dual sums against the bracket
structure constants, and its coefficient on a reduced tree T equals the
coefficient of W in the basis decomposition of [T] (the duality that the
test suite checks exhaustively).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .trees import (
    Tree,
    bracket_expand,
    decompose,
    decompose_tracked,
    graft,
    insert_at_leaf,
    leaf,
    lyndon_tree,
    normalize_sign,
)
from .words import Word, is_lyndon, lyndon_words, word_str

TreeLinComb = dict[Tree, Fraction]


@dataclass(frozen=True)
class DualTreeSum:
    word: Word
    combination: dict  # Tree -> Fraction, supported on reduced trees

    def __iter__(self):
        return iter(sorted(self.combination.items(), key=lambda kv: kv[0].sort_key()))


def _lyndon_pairs(n: int):
    """Ordered pairs (u, v), u < v, of Lyndon words with |u| + |v| = n."""
    words = lyndon_words(n - 1)
    for u in words:
        for v in words:
            if len(u) + len(v) == n and u < v:
                yield u, v


@lru_cache(maxsize=None)
def dual_tree(w: Word) -> DualTreeSum:
    if not is_lyndon(w):
        raise ValueError(f"not a Lyndon word: {word_str(w)}")
    if len(w) == 1:
        return DualTreeSum(w, {leaf(w[0]): Fraction(1)})
    comb: TreeLinComb = {}
    for u, v in _lyndon_pairs(len(w)):
        alpha = bracket_expand(u, v).get(w, 0)
        if not alpha:
            continue
        for t1, c1 in dual_tree(u).combination.items():
            for t2, c2 in dual_tree(v).combination.items():
                norm = normalize_sign(graft(t1, t2))
                if norm is None:
                    continue
                t, sign = norm
                c = comb.get(t, Fraction(0)) + alpha * c1 * c2 * sign
                if c:
                    comb[t] = c
                else:
                    comb.pop(t, None)
    return DualTreeSum(w, comb)


def d_lie(s: DualTreeSum) -> dict[tuple[Word, Word], Fraction]:
    """Cut the root edge of every support tree; express in dual-sum pairs.

    Returns {(w1, w2): coefficient} with w1 < w2; the coefficients are
    the bracket structure constants.  Raises if the pair expansion does
    not lie in the span of T_{w1} (x) T_{w2} (it always does).
    """
    if len(s.word) < 2:
        return {}
    # pair vector of the cut, antisymmetrized to (smaller, larger)
    pairs: dict[tuple[Tree, Tree], Fraction] = {}
    for t, c in s.combination.items():
        a, b = t.left, t.right
        if b.sort_key() < a.sort_key():
            a, b, c = b, a, -c
        key = (a, b)
        acc = pairs.get(key, Fraction(0)) + c
        if acc:
            pairs[key] = acc
        else:
            pairs.pop(key, None)
    # leading coefficients: tau_u appears in T_v iff u == v
    out: dict[tuple[Word, Word], Fraction] = {}
    for w1, w2 in _lyndon_pairs(len(s.word)):
        c = pairs.get((lyndon_tree(w1), lyndon_tree(w2)))
        if c:
            out[(w1, w2)] = c
    # exactness: subtracting the claimed combination leaves nothing
    for (w1, w2), coef in out.items():
        for t1, c1 in dual_tree(w1).combination.items():
            for t2, c2 in dual_tree(w2).combination.items():
                a, b, c = t1, t2, coef * c1 * c2
                if b.sort_key() < a.sort_key():
                    a, b, c = b, a, -c
                acc = pairs.get((a, b), Fraction(0)) - c
                if acc:
                    pairs[(a, b)] = acc
                else:
                    pairs.pop((a, b), None)
    if pairs:
        raise ArithmeticError(f"root cut of T_{word_str(s.word)} is not decomposable")
    return out


def one_leaf_positions(t: Tree) -> list[int]:
    """Positions (1-based, all leaves counted) of the leaves decorated 1."""
    return [i + 1 for i, d in enumerate(t.word) if d == 1]


def strip_leaf(t: Tree, pos: int) -> tuple[Tree, Tree, int]:
    """Detach the sibling subtree of the pos-th leaf.

    Returns (t1, t2, j): t1 is the subtree grafted next to the leaf, t2
    is t with t1^leaf collapsed back to a single leaf, and j is the new
    position of that leaf in t2.  The pos-th leaf must be a right child.
    """
    if t.is_leaf:
        raise ValueError("cannot strip a single leaf")

    def go(s: Tree, k: int):
        if k >= s.left.nleaves:
            k2 = k - s.left.nleaves
            if s.right.is_leaf:
                return s.left, s.right
            t1, rep = go(s.right, k2)
            return t1, graft(s.left, rep)
        if s.left.is_leaf:
            raise ValueError(f"leaf {pos} is a left child; cannot strip")
        t1, rep = go(s.left, k)
        return t1, graft(rep, s.right)

    t1, t2 = go(t, pos - 1)
    # t1's leaves all sit directly before the stripped leaf
    return t1, t2, pos - t1.nleaves


def coefficient_recursion_holds(w: Word, t: Tree, pos: int) -> bool:
    """Check the insertion recursion for c_T^W at a 1-decorated leaf.

    Splits T at the leaf into (T1, T2), runs the tracked rewriting of T2
    with the collapsed leaf marked, and re-inserts each Lyndon bracket of
    T1 at the tracked positions; the resulting coefficient of W must
    reproduce the coefficient of T in T_W.
    """
    lhs = dual_tree(w).combination.get(t, Fraction(0))
    t1, t2, j = strip_leaf(t, pos)
    rhs = Fraction(0)
    tracked = decompose_tracked(t2, j)
    for u1, c_u1 in decompose(t1).items():
        sub = lyndon_tree(u1)
        for (s, k), q in tracked.items():
            c_ins = decompose(insert_at_leaf(s, k, sub)).get(w, 0)
            if c_ins:
                rhs += Fraction(c_u1 * q * c_ins)
    return lhs == rhs
