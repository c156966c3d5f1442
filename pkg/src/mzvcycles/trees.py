"""Rooted planar trivalent trees and the free Lie algebra on {0, 1}.

Trees are the free magma on two decorated leaves; grafting corresponds to
the Lie bracket.  The Lyndon trees (canonical bracketings of Lyndon words
through repeated standard factorization) form a Hall set, so their
brackets are a basis of the free Lie algebra.  ``decompose`` rewrites an
arbitrary tree into that basis by locating a smallest non-Hall subtree
and applying antisymmetry or the Jacobi identity

    [[x, y], z] = [[x, z], y] + [x, [y, z]]

until every term is either a Lyndon tree or contains a symmetric subtree
(bracket zero).  ``decompose_tracked`` runs the same rewriting while
following one distinguished leaf through the surgery; the per-position
coefficients it produces feed the dual-sum recursion checks.
"""

from __future__ import annotations

from functools import lru_cache

from .words import Word, is_lyndon, standard_factorization, word_str


class Tree:
    """Immutable trivalent tree: a decorated leaf or a pair of subtrees."""

    __slots__ = ("dec", "left", "right", "word", "nleaves", "_key", "_hash")

    def __init__(self, dec=None, left=None, right=None):
        self.dec = dec
        self.left = left
        self.right = right
        if dec is not None:
            self.word: Word = (dec,)
            self.nleaves = 1
            self._key = ("L", dec)
        else:
            self.word = left.word + right.word
            self.nleaves = left.nleaves + right.nleaves
            self._key = ("N", left._key, right._key)
        self._hash = hash(self._key)

    @property
    def is_leaf(self) -> bool:
        return self.dec is not None

    def __eq__(self, other):
        return self is other or (isinstance(other, Tree) and self._key == other._key)

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Tree") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        # Word first: restricts to the lexicographic Lyndon order on Hall
        # trees and keeps leaf 0 (resp. 1) the global minimum (resp. the
        # maximum among trees that can share a node with it).  Structural
        # key breaks ties between distinct trees with equal leaf words.
        return (self.word, self._key)

    def __repr__(self):
        if self.is_leaf:
            return str(self.dec)
        return f"({self.left!r}^{self.right!r})"


_LEAF = {0: Tree(dec=0), 1: Tree(dec=1)}
_NODES: dict[tuple[Tree, Tree], Tree] = {}


def leaf(dec: int) -> Tree:
    return _LEAF[dec]


def graft(left: Tree, right: Tree) -> Tree:
    """Join two trees below a new root (the magma operation)."""
    t = _NODES.get((left, right))
    if t is None:
        t = _NODES[(left, right)] = Tree(left=left, right=right)
    return t


@lru_cache(maxsize=None)
def lyndon_tree(w: Word) -> Tree:
    """The canonical bracketing of a Lyndon word."""
    if not is_lyndon(w):
        raise ValueError(f"not a Lyndon word: {word_str(w)}")
    if len(w) == 1:
        return leaf(w[0])
    u, v = standard_factorization(w)
    return graft(lyndon_tree(u), lyndon_tree(v))


@lru_cache(maxsize=None)
def is_hall(t: Tree) -> bool:
    """True iff t is the Lyndon tree of its own (Lyndon) leaf word."""
    return is_lyndon(t.word) and t is lyndon_tree(t.word)


def has_symmetric_subtree(t: Tree) -> bool:
    if t.is_leaf:
        return False
    if t.left == t.right:
        return True
    return has_symmetric_subtree(t.left) or has_symmetric_subtree(t.right)


def normalize_sign(t: Tree):
    """Canonical representative of t modulo the antisymmetry relation.

    Returns (tree, sign) with every node ordered left < right, or None if
    some node has equal children (the bracket is zero).
    """
    if t.is_leaf:
        return t, 1
    nl = normalize_sign(t.left)
    if nl is None:
        return None
    nr = normalize_sign(t.right)
    if nr is None:
        return None
    (l, sl), (r, sr) = nl, nr
    if l == r:
        return None
    if r < l:
        return graft(r, l), -sl * sr
    return graft(l, r), sl * sr


def _min_non_hall(t: Tree):
    """Innermost-leftmost non-Hall subtree, with the leaf offset of its span.

    Returns (subtree, leaf offset) or None if t is in the Hall set.  The
    subtree found has both children in the Hall set.
    """
    if is_hall(t):
        return None
    stack = [(t, 0)]
    best = None
    while stack:
        s, off = stack.pop()
        if s.is_leaf or is_hall(s):
            continue
        if is_hall(s.left) and is_hall(s.right):
            if best is None or off < best[1] or (off == best[1] and s.nleaves < best[0].nleaves):
                best = (s, off)
        stack.append((s.left, off))
        stack.append((s.right, off + s.left.nleaves))
    return best


def _replace_at(t: Tree, target: Tree, off: int, repl: Tree, cur: int = 0) -> Tree:
    """Rebuild t with the subtree at (target, leaf offset off) replaced."""
    if cur == off and t == target:
        return repl
    l = t.left
    if off < cur + l.nleaves:
        return graft(_replace_at(l, target, off, repl, cur), t.right)
    return graft(l, _replace_at(t.right, target, off, repl, cur + l.nleaves))


def _dec_step(t: Tree, pos: int):
    """One rewriting step at the minimal non-Hall subtree of t.

    ``pos`` is the 1-based position of the tracked leaf (counting all
    leaves left to right).  Returns None if t is a fixed point (Hall, or
    frozen because the minimal non-Hall subtree is symmetric), otherwise a
    list of (tree, new position, sign) terms.
    """
    found = _min_non_hall(t)
    if found is None:
        return None
    s, off = found
    a, b = s.left, s.right
    if a == b:
        return None  # frozen: the bracket of any term containing s is zero
    k = pos - 1  # 0-based
    na, nb = a.nleaves, b.nleaves
    if b.sort_key() < a.sort_key():
        # antisymmetry: a^b -> -(b^a); tracked leaf crosses the swap
        if off <= k < off + na:
            k2 = k + nb
        elif off + na <= k < off + na + nb:
            k2 = k - na
        else:
            k2 = k
        return [(_replace_at(t, s, off, graft(b, a)), k2 + 1, -1)]
    # a < b with a^b not Hall forces a composite: a = t1^t2 and
    # [[t1,t2],b] = [[t1,b],t2] + [t1,[t2,b]]
    assert not a.is_leaf, "letter^larger-Hall-tree is always a Hall tree"
    t1, t2 = a.left, a.right
    n1, n2 = t1.nleaves, t2.nleaves
    # first output has leaf layout (t1, b, t2); second keeps (t1, t2, b)
    if off + n1 <= k < off + na:
        k2 = k + nb
    elif off + na <= k < off + na + nb:
        k2 = k - n2
    else:
        k2 = k
    out1 = _replace_at(t, s, off, graft(graft(t1, b), t2))
    out2 = _replace_at(t, s, off, graft(t1, graft(t2, b)))
    return [(out1, k2 + 1, 1), (out2, pos, 1)]


_MAX_SWEEPS = 10_000


def decompose_tracked(t: Tree, pos: int) -> dict[tuple[Tree, int], int]:
    """Stable terms of the rewriting of (t, pos), grouped by (tree, position).

    The result maps (tree, tracked leaf position) to an integer
    coefficient; trees that are not Hall trees carry a symmetric subtree
    and represent zero brackets, but are kept because insertion at a leaf
    can resurrect them.
    """
    if not 1 <= pos <= t.nleaves:
        raise ValueError(f"leaf position {pos} out of range 1..{t.nleaves}")
    terms: dict[tuple[Tree, int], int] = {(t, pos): 1}
    for _ in range(_MAX_SWEEPS):
        new: dict[tuple[Tree, int], int] = {}
        changed = False
        for (tr, p), q in terms.items():
            step = _dec_step(tr, p)
            if step is None:
                new[(tr, p)] = new.get((tr, p), 0) + q
            else:
                changed = True
                for tr2, p2, sg in step:
                    new[(tr2, p2)] = new.get((tr2, p2), 0) + sg * q
        terms = {k: v for k, v in new.items() if v != 0}
        if not changed:
            return terms
    raise RuntimeError("rewriting did not stabilize")


@lru_cache(maxsize=None)
def decompose(t: Tree) -> dict[Word, int]:
    """Coefficients of [t] in the Lyndon bracket basis."""
    terms: dict[Tree, int] = {t: 1}
    for _ in range(_MAX_SWEEPS):
        new: dict[Tree, int] = {}
        changed = False
        for tr, q in terms.items():
            step = _dec_step(tr, 1)
            if step is None:
                new[tr] = new.get(tr, 0) + q
            else:
                changed = True
                for tr2, _, sg in step:
                    new[tr2] = new.get(tr2, 0) + sg * q
        terms = {k: v for k, v in new.items() if v != 0}
        if not changed:
            return {tr.word: q for tr, q in terms.items() if is_hall(tr)}
    raise RuntimeError("rewriting did not stabilize")


@lru_cache(maxsize=None)
def bracket_expand(u: Word, v: Word) -> dict[Word, int]:
    """Structure constants of [[u],[v]] in the Lyndon basis (u < v)."""
    if not u < v:
        raise ValueError("bracket_expand needs u < v")
    return decompose(graft(lyndon_tree(u), lyndon_tree(v)))


def leaf_decorations(t: Tree) -> Word:
    return t.word


def insert_at_leaf(t: Tree, pos: int, sub: Tree) -> Tree:
    """Replace the pos-th leaf (decoration e) of t by sub^e."""
    if not 1 <= pos <= t.nleaves:
        raise ValueError(f"leaf position {pos} out of range 1..{t.nleaves}")

    def go(s: Tree, k: int) -> Tree:
        if s.is_leaf:
            return graft(sub, s)
        if k < s.left.nleaves:
            return graft(go(s.left, k), s.right)
        return graft(s.left, go(s.right, k - s.left.nleaves))

    return go(t, pos - 1)
