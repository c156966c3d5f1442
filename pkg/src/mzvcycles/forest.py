"""Oriented decorated forests and the contraction differential.

A tree here is planar and rooted, with the root an extra valency-1
vertex decorated 't' or '1', leaves decorated 0/1, and an implicit
numbering of its edges (root edge first, then depth first through the
children).  Forests are products of such trees; renumbering the edges by
an odd permutation flips the sign, trees with root decoration 0 vanish,
and so does the one-edge tree with root 1 over leaf 0.

The differential contracts each edge with sign (-1)^(position-1):
contracting the root edge or a leaf edge also splits at the merged
vertex (the new roots inherit its decoration), while an internal edge
just merges two vertices.  Terms are kept in a canonical form: trees
sorted, each tree carrying its own depth-first numbering, with the
parity of the renumbering absorbed into the coefficient.

Nested-tuple encoding: a tree is (root_dec, node) with node either
('L', dec) or ('I', (child nodes...)).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .dualsums import DualTreeSum, dual_tree
from .trees import Tree
from .words import Word, lyndon_words, word_str

Node = tuple
DecoTree = tuple  # (root_dec, Node)
ForestTerm = tuple  # tuple of DecoTree, canonically sorted
ForestLinComb = dict


def _node_of_tree(t: Tree) -> Node:
    if t.is_leaf:
        return ("L", t.dec)
    return ("I", (_node_of_tree(t.left), _node_of_tree(t.right)))


def node_edges(n: Node) -> int:
    """Edges strictly below n (edges from n into its descendants)."""
    if n[0] == "L":
        return 0
    return sum(1 + node_edges(c) for c in n[1])


def tree_edges(t: DecoTree) -> int:
    return 1 + node_edges(t[1])


def node_leaves(n: Node) -> int:
    if n[0] == "L":
        return 1
    return sum(node_leaves(c) for c in n[1])


def tree_weight(t: DecoTree) -> int:
    return node_leaves(t[1])


def term_weight(term: ForestTerm) -> int:
    return sum(tree_weight(t) for t in term)


def term_degree(term: ForestTerm) -> int:
    return 2 * term_weight(term) - sum(tree_edges(t) for t in term)


def _tree_sort_key(t: DecoTree):
    return (str(t[0]), t[1])


# ---------------------------------------------------------------------------
# numbered (transient) representation used while contracting:
#   nbranch = [num, nnode];  nnode = ('L', dec) or ('I', [nbranch...])
# ---------------------------------------------------------------------------


def _number_tree(t: DecoTree, start: int):
    """Attach depth-first edge numbers, returning (nbranch, next_number)."""
    top, nxt = _number_tree_node(t[1], start + 1)
    return [start, top], nxt


def _number_tree_node(n: Node, k: int):
    if n[0] == "L":
        return n, k
    kids = []
    for c in n[1]:
        num = k
        sub, k = _number_tree_node(c, k + 1)
        kids.append([num, sub])
    return ("I", kids), k


def _canonize_branch(nbranch):
    """Canonical form of a numbered branch: sort children at every vertex.

    Child branches commute up to the sign of the induced edge
    renumbering (this is what makes the embedding of antisymmetry-reduced
    trivalent trees well defined), so the canonical representative orders
    them by structure; two equal children whose branches carry an odd
    number of edges make the tree zero.

    Returns (node, numbers in canonical depth-first order) or None.
    """
    num, nnode = nbranch
    if nnode[0] == "L":
        return nnode, [num]
    kids = []
    for b in nnode[1]:
        sub = _canonize_branch(b)
        if sub is None:
            return None
        kids.append(sub)
    kids.sort(key=lambda p: p[0])
    for i in range(len(kids) - 1):
        if kids[i][0] == kids[i + 1][0] and len(kids[i][1]) % 2 == 1:
            return None
    nums = [num]
    for _, sub_nums in kids:
        nums.extend(sub_nums)
    return ("I", tuple(k for k, _ in kids)), nums


def _contract_numbered(root_dec, nbranch, m):
    """Contract the edge numbered m; returns a list of (root_dec, nbranch).

    The caller guarantees the tree has at least two edges.
    """
    num, top = nbranch
    if num == m:
        # root edge: merged vertex keeps the root decoration, then split
        assert top[0] == "I"
        return [(root_dec, b) for b in top[1]]

    def go(node):
        # rebuilds node with the contraction applied underneath; returns
        # (new_node, split_off) where split_off is a list of trees
        if node[0] == "L":
            return node, None
        kids = node[1]
        for i, (bnum, bnode) in enumerate(kids):
            if bnum == m:
                if bnode[0] == "L":
                    # leaf edge: vertex inherits the decoration, split here
                    dec = bnode[1]
                    others = kids[:i] + kids[i + 1 :]
                    split = [(str(dec), b) for b in others]
                    return ("L", dec), split
                # internal edge: absorb the child's children in place
                merged = kids[:i] + list(bnode[1]) + kids[i + 1 :]
                return ("I", merged), []
            new_sub, split = go(bnode)
            if split is not None:
                out = kids[:i] + [[bnum, new_sub]] + kids[i + 1 :]
                return ("I", out), split
        return node, None

    new_top, split = go(top)
    assert split is not None, f"edge {m} not found"
    return [(root_dec, [num, new_top])] + list(split)


def _classify_edges(t: DecoTree):
    """Map canonical edge number -> class in {root, int, leaf0, leaf1}."""
    classes = {}
    counter = [1]

    def go(n: Node, incoming_root: bool):
        num = counter[0]
        counter[0] += 1
        if n[0] == "L":
            classes[num] = "root" if incoming_root else f"leaf{n[1]}"
            return
        classes[num] = "root" if incoming_root else "int"
        for c in n[1]:
            go(c, False)

    go(t[1], True)
    return classes


def _perm_parity(seq: list[int]) -> int:
    """Parity (+1/-1) of the permutation written as a sequence of values."""
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    seen = [False] * len(seq)
    sign = 1
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, cyc = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            cyc += 1
        if cyc % 2 == 0:
            sign = -sign
    return sign


def _normalize(numbered_trees) -> tuple[ForestTerm, int] | None:
    """Canonicalize a list of (root_dec, nbranch); None if the term is zero."""
    stripped = []
    for root_dec, nb in numbered_trees:
        if root_dec == "0":
            return None
        canon = _canonize_branch(nb)
        if canon is None:
            return None
        node, nums = canon
        t = (root_dec, node)
        if root_dec == "1" and node == ("L", 0):
            return None
        stripped.append((t, nums))
    stripped.sort(key=lambda p: _tree_sort_key(p[0]))
    for i in range(len(stripped) - 1):
        a, b = stripped[i][0], stripped[i + 1][0]
        if a == b and tree_edges(a) % 2 == 1:
            return None  # odd-degree square
    flat: list[int] = []
    for _, nums in stripped:
        flat.extend(nums)
    sign = _perm_parity(flat)
    return tuple(t for t, _ in stripped), sign


def _add(acc: ForestLinComb, term: ForestTerm, c: Fraction) -> None:
    v = acc.get(term, Fraction(0)) + c
    if v:
        acc[term] = v
    else:
        acc.pop(term, None)


def make_term(*trees: DecoTree) -> ForestLinComb:
    """Normalized forest term from trees taken in the given product order."""
    numbered = []
    k = 1
    for t in trees:
        nb, k = _number_tree(t, k)
        numbered.append((t[0], nb))
    norm = _normalize(numbered)
    if norm is None:
        return {}
    term, sign = norm
    return {term: Fraction(sign)}


def embed_dual(s: DualTreeSum, root) -> ForestLinComb:
    """Image of a dual tree sum with root decorated 't' or '1'."""
    root = str(root)
    out: ForestLinComb = {}
    for t, c in s.combination.items():
        for term, sgn in make_term((root, _node_of_tree(t))).items():
            _add(out, term, sgn * c)
    return out


def scale(flc: ForestLinComb, c) -> ForestLinComb:
    c = Fraction(c)
    return {k: v * c for k, v in flc.items()} if c else {}


def add_into(acc: ForestLinComb, flc: ForestLinComb, c=1) -> None:
    c = Fraction(c)
    for term, v in flc.items():
        _add(acc, term, v * c)


def mul(f1: ForestLinComb, f2: ForestLinComb) -> ForestLinComb:
    out: ForestLinComb = {}
    for t1, c1 in f1.items():
        for t2, c2 in f2.items():
            for term, sgn in make_term(*(t1 + t2)).items():
                _add(out, term, sgn * c1 * c2)
    return out


def contract(t: DecoTree, edge: int, raw: bool = False):
    """Contraction of a single canonically numbered tree along one edge.

    Returns the normalized one-term combination (possibly empty); with
    ``raw`` the unnormalized forest is returned as a list of trees in
    split order, which exposes the four contraction cases directly.
    """
    ne = tree_edges(t)
    if not 1 <= edge <= ne:
        raise ValueError(f"edge {edge} out of range 1..{ne}")
    if ne == 1:
        return [] if raw else {}
    nb, _ = _number_tree(t, 1)
    pieces = _contract_numbered(t[0], nb, edge)
    shifted = [(rd, _shift_down(b, edge)) for rd, b in pieces]
    if raw:
        return [(rd, _strip_numbers(b[1])) for rd, b in shifted]
    norm = _normalize(shifted)
    if norm is None:
        return {}
    term, sign = norm
    return {term: Fraction(sign)}


def _strip_numbers(nnode) -> Node:
    if nnode[0] == "L":
        return nnode
    return ("I", tuple(_strip_numbers(b[1]) for b in nnode[1]))


def _shift_down(nbranch, m):
    num, node = nbranch
    num2 = num - 1 if num > m else num
    if node[0] == "L":
        return [num2, node]
    return [num2, ("I", [_shift_down(b, m) for b in node[1]])]


def d_cy(flc: ForestLinComb, classes=None) -> ForestLinComb:
    """Signed sum of edge contractions, extended over products.

    ``classes`` restricts to edges of the given kinds ('root', 'int',
    'leaf0', 'leaf1'); the global numbering makes the graded Leibniz
    signs automatic.
    """
    out: ForestLinComb = {}
    for term, coeff in flc.items():
        offset = 0
        numbered = []
        for t in term:
            nb, nxt = _number_tree(t, offset + 1)
            numbered.append((t[0], nb))
            offset = nxt - 1
        for idx, t in enumerate(term):
            ne = tree_edges(t)
            base = sum(tree_edges(x) for x in term[:idx])
            if ne == 1:
                continue  # a one-edge tree maps to 0
            cls = _classify_edges(t)
            for local in range(1, ne + 1):
                if classes is not None and cls[local] not in classes:
                    continue
                m = base + local
                pieces = _contract_numbered(t[0], numbered[idx][1], m)
                new_forest = [
                    (rd, _shift_down(nb, m))
                    for rd, nb in (numbered[:idx] + numbered[idx + 1 :])
                ]
                new_forest[idx:idx] = [(rd, _shift_down(b, m)) for rd, b in pieces]
                norm = _normalize(new_forest)
                if norm is None:
                    continue
                nterm, sign = norm
                _add(out, nterm, coeff * sign * (-1) ** (m - 1))
    return out


# ---------------------------------------------------------------------------
# exact extraction of the product decomposition of d_cy(T_W)
# ---------------------------------------------------------------------------


def _solve_exact(columns, rhs):
    """Solve sum_j x_j col_j = rhs exactly; raises on nonzero residual."""
    basis = sorted(set(rhs) | {t for col in columns for t in col})
    index = {t: i for i, t in enumerate(basis)}
    nrows, ncols = len(basis), len(columns)
    mat = [[Fraction(0)] * (ncols + 1) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for t, v in col.items():
            mat[index[t]][j] = v
    for t, v in rhs.items():
        mat[index[t]][ncols] = v
    row = 0
    pivots = []
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if mat[r][col]), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        sol[col] = mat[r][ncols]
    for r in range(row, nrows):
        if mat[r][ncols]:
            raise ArithmeticError("differential is not in the product span")
    return sol


@lru_cache(maxsize=None)
def extract_alpha_beta(w: Word):
    """Product decomposition of d_cy(T_W) into T_U.T_V and T_U.T_V(1).

    Returns (alpha, beta): alpha maps pairs (u, v) with u < v, beta maps
    arbitrary ordered pairs (u, v) with v /= 0, to exact rationals.
    """
    if len(w) < 2:
        raise ValueError("need |W| >= 2")
    lhs = d_cy(embed_dual(dual_tree(w), "t"))
    words = lyndon_words(len(w) - 1)
    labels = []
    columns = []
    for u in words:
        for v in words:
            if len(u) + len(v) != len(w):
                continue
            if u < v:
                labels.append(("alpha", u, v))
                columns.append(
                    mul(embed_dual(dual_tree(u), "t"), embed_dual(dual_tree(v), "t"))
                )
            if v != (0,):
                labels.append(("beta", u, v))
                columns.append(
                    mul(embed_dual(dual_tree(u), "t"), embed_dual(dual_tree(v), "1"))
                )
    sol = _solve_exact(columns, lhs)
    alpha: dict[tuple[Word, Word], Fraction] = {}
    beta: dict[tuple[Word, Word], Fraction] = {}
    for (kind, u, v), x in zip(labels, sol):
        if x:
            (alpha if kind == "alpha" else beta)[(u, v)] = x
    return alpha, beta
