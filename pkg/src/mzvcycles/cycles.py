"""Colored trees and the parametrized cycles they define.

A colored tree is a rooted trivalent tree whose edges are solid or
dashed; the recursive combinations indexed by a Lyndon word follow the
derived coefficient tables (a, b for the plain family, a', b' for the
primed one, the primed grafting using a dashed root edge).  Reading a
colored tree edge by edge produces a tuple of rational functions: a
solid edge from value a to value b contributes 1 - a/b, a dashed one
(b - a)/(b - 1); internal vertices carry the parameters x_{p-1}, ...,
x_1 in discovery order and the root carries t.  The resulting terms
[t; f_1, ..., f_{2p-1}] are algebraic-cycle parametrizations; their
cubical boundary restricts coordinates to 0 or infinity by solving the
corresponding Moebius equation for one parameter.

A restricted term dies in two ways: a coordinate identically 1 lands in
the removed divisor (empty), and a tuple fixed by an odd signed
permutation of the cube coordinates (duplicate coordinates, a pair of
mutually inverse coordinates, a constant -1) is killed by the
alternating projector.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coeffs import W0, W1, derive_ab, derive_apbp
from .ratexpr import Frac, ONE, Poly, ZERO, frac_str, parse_expr
from .words import Word, is_lyndon, word, word_str

SOLID = "s"
DASHED = "d"

# branch = (style, node); node = ('L', dec) or ('N', branch, branch)
Branch = tuple
ColoredComb = dict  # Branch -> Fraction

T0_BRANCH: Branch = (DASHED, ("L", 0))
T1_BRANCH: Branch = (SOLID, ("L", 1))


def _graft(style: str, b1: Branch, b2: Branch) -> Branch:
    return (style, ("N", b1, b2))


def _comb_graft(style: str, c1: ColoredComb, c2: ColoredComb) -> ColoredComb:
    out: ColoredComb = {}
    for b1, x1 in c1.items():
        for b2, x2 in c2.items():
            b = _graft(style, b1, b2)
            v = out.get(b, Fraction(0)) + x1 * x2
            if v:
                out[b] = v
            else:
                out.pop(b, None)
    return out


def _comb_add(acc: ColoredComb, other: ColoredComb, c: Fraction) -> None:
    for b, x in other.items():
        v = acc.get(b, Fraction(0)) + x * c
        if v:
            acc[b] = v
        else:
            acc.pop(b, None)


@lru_cache(maxsize=None)
def build_colored(w: Word, variant: str = "plain") -> tuple:
    """Signed combination of colored trees for L_W (plain) or L1_W (one).

    Returned as a tuple of (coefficient, branch) pairs.
    """
    if not is_lyndon(w):
        raise ValueError(f"not a Lyndon word: {word_str(w)}")
    if variant not in ("plain", "one"):
        raise ValueError(f"unknown variant {variant!r}")
    if len(w) == 1:
        if variant == "one":
            raise ValueError("the primed family starts at length 2")
        return ((Fraction(1), T0_BRANCH if w == W0 else T1_BRANCH),)
    comb: ColoredComb = {}
    if variant == "plain":
        a, b = derive_ab(w)
        for (u, v), c in a.entries.items():
            _comb_add(comb, _comb_graft(SOLID, _comb(u, "plain"), _comb(v, "plain")), c)
        for (u, v), c in b.entries.items():
            _comb_add(comb, _comb_graft(SOLID, _comb(u, "plain"), _comb(v, "one")), c)
    else:
        ap, bp = derive_apbp(w)
        for (u, v), c in ap.entries.items():
            if u == W0:
                _comb_add(
                    comb, _comb_graft(DASHED, _comb(u, "plain"), _comb(v, "plain")), c
                )
            else:
                _comb_add(comb, _comb_graft(DASHED, _comb(u, "one"), _comb(v, "one")), c)
        for (u, v), c in bp.entries.items():
            _comb_add(comb, _comb_graft(DASHED, _comb(u, "plain"), _comb(v, "one")), c)
    for coeff, br in ((c, b) for b, c in comb.items()):
        _check_leaf_edges(br)
    return tuple(sorted(((c, b) for b, c in comb.items()), key=lambda p: p[1]))


def _comb(w: Word, variant: str) -> ColoredComb:
    return {b: c for c, b in build_colored(w, variant)}


def _check_leaf_edges(branch: Branch) -> None:
    style, node = branch
    if node[0] == "L":
        expected = DASHED if node[1] == 0 else SOLID
        assert style == expected, "leaf edge color violates the construction"
    else:
        _check_leaf_edges(node[1])
        _check_leaf_edges(node[2])


def _branch_leaves(branch: Branch) -> int:
    node = branch[1]
    if node[0] == "L":
        return 1
    return _branch_leaves(node[1]) + _branch_leaves(node[2])


def gamma_tree(branch: Branch) -> tuple:
    """Coordinate tuple of a single colored tree.

    Edges are read depth first; the k-th internal vertex discovered gets
    the parameter x_{p-k} and the root the parameter t.
    """
    p = _branch_leaves(branch)
    coords: list[Frac] = []
    next_var = [p - 1]

    def value_of(node) -> Frac:
        if node[0] == "L":
            return Frac.const(node[1])
        k = next_var[0]
        next_var[0] -= 1
        return Frac.var(f"x{k}")

    def visit(src: Frac, br: Branch) -> None:
        style, node = br
        tgt = value_of(node)
        if style == SOLID:
            coords.append(Frac.const(1) - src / tgt)
        else:
            coords.append((tgt - src) / (tgt - Frac.const(1)))
        if node[0] == "N":
            visit(tgt, node[1])
            visit(tgt, node[2])

    visit(Frac.var("t"), branch)
    assert len(coords) == 2 * p - 1
    return tuple(coords)


@dataclass
class Cycle:
    """Signed sum of parametrized tuples [t; f_1, ..., f_{2p-1}]."""

    weight: int
    terms: dict  # tuple[Frac, ...] -> Fraction

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: _term_sort_key(kv[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def map_terms(self, f) -> "Cycle":
        out: dict = {}
        for tup, c in self.terms.items():
            res = f(tup)
            if res is None:
                continue
            tup2, c2 = res
            v = out.get(tup2, Fraction(0)) + c * c2
            if v:
                out[tup2] = v
            else:
                out.pop(tup2, None)
        return Cycle(self.weight, out)


def _term_sort_key(tup):
    return tuple(frac_str(f) for f in tup)


@lru_cache(maxsize=None)
def cycle(w: Word, variant: str = "plain") -> Cycle:
    """The parametrized cycle of a Lyndon word (plain L_W or primed L1_W)."""
    terms: dict = {}
    for c, branch in build_colored(w, variant):
        tup = gamma_tree(branch)
        v = terms.get(tup, Fraction(0)) + c
        if v:
            terms[tup] = v
        else:
            terms.pop(tup, None)
    return Cycle(len(w), terms)


def _term_variables(tup) -> list[str]:
    seen: list[str] = []
    for f in tup:
        for v in sorted(f.variables(), key=_var_index):
            if v != "t" and v not in seen:
                seen.append(v)
    return seen


def _var_index(v: str) -> int:
    return -1 if v == "t" else int(v[1:])


def canonical_term(tup) -> tuple:
    """Rename parameters by first occurrence scanning left to right."""
    mapping: dict[str, str] = {}
    for f in tup:
        for v in _scan_vars(f):
            if v != "t" and v not in mapping:
                mapping[v] = f"x{len(mapping) + 1}"
    return tuple(f.rename(mapping) for f in tup)


def _scan_vars(f: Frac) -> list[str]:
    return sorted((v for v in f.variables()), key=_var_index, reverse=True)


def canonicalize(c: Cycle) -> Cycle:
    return c.map_terms(lambda tup: (canonical_term(tup), Fraction(1)))


def _seq_parity(seq) -> int:
    seen = [False] * len(seq)
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    sign = 1
    for i in range(len(seq)):
        if seen[i]:
            continue
        j = i
        cyc = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            cyc += 1
        if cyc % 2 == 0:
            sign = -sign
    return sign


def _permutations(items):
    if len(items) <= 1:
        yield tuple(items)
        return
    for i, x in enumerate(items):
        for rest in _permutations(items[:i] + items[i + 1 :]):
            yield (x,) + rest


def alt_canonical_term(tup):
    """Normal form of a term under signed coordinate permutations.

    Coordinates of a cycle commute up to the sign of the permutation
    (the alternating projector), and the parameters have no preferred
    names, so the normal form minimizes the coordinate sequence over all
    parameter bijections and sorts the coordinates, tracking parity.
    Returns (tuple, sign), or None when the term is fixed by an odd
    permutation (it then vanishes under the projector).
    """
    names = _term_variables(tup)
    best = None
    best_sign = 0
    for perm in _permutations(names):
        mapping = {v: f"x{i + 1}" for i, v in enumerate(perm)}
        renamed = [f.rename(mapping) for f in tup]
        keys = [frac_str(f) for f in renamed]
        sign = _seq_parity(keys)
        cand = tuple(x for _, x in sorted(zip(keys, renamed), key=lambda p: p[0]))
        ckey = tuple(sorted(keys))
        if best is None or ckey < best[0]:
            best = (ckey, cand)
            best_sign = sign
        elif ckey == best[0] and sign != best_sign:
            return None  # odd self-symmetry: killed by the projector
    return best[1], best_sign


def canonicalize_alt(c: Cycle) -> Cycle:
    def f(tup):
        norm = alt_canonical_term(tup)
        if norm is None:
            return None
        t2, s = norm
        return t2, Fraction(s)

    return c.map_terms(f)


def product(c1: Cycle, c2: Cycle) -> Cycle:
    """Concatenate tuples over the shared base parameter."""
    out: dict = {}
    for t1, a1 in c1.terms.items():
        used = {_var_index(v) for v in _term_variables(t1)}
        shift = max(used, default=0)
        for t2, a2 in c2.terms.items():
            mapping = {v: f"x{_var_index(v) + shift}" for v in _term_variables(t2)}
            tup = t1 + tuple(f.rename(mapping) for f in t2)
            dead = _term_vanishes(tup)
            if dead:
                continue
            v = out.get(tup, Fraction(0)) + a1 * a2
            if v:
                out[tup] = v
            else:
                out.pop(tup, None)
    return Cycle(c1.weight + c2.weight, out)


def _term_vanishes(tup) -> bool:
    """Empty in the cube, or fixed by an odd signed coordinate permutation."""
    for f in tup:
        if f == "inf":
            return True
        if f.is_one():
            return True
        if f.is_const() and f.const_value() == -1:
            return True
    n = len(tup)
    for i in range(n):
        for j in range(i + 1, n):
            if tup[i] == tup[j]:
                return True
            if (tup[i] * tup[j]).is_one():
                return True
    return False


def fiber_empty_at(c: Cycle, t0) -> bool:
    """True iff substituting the base parameter kills every term."""
    q = Fraction(t0)
    pnum, pden = Poly.const(q.numerator), Poly.const(q.denominator)
    for tup, _ in c.terms.items():
        empty = False
        for f in tup:
            g = f.subst("t", pnum, pden)
            if g != "inf" and g.is_one():
                empty = True
                break
        if not empty:
            return False
    return True


def _solve_variable(f: Frac, prior_vars: set) -> str:
    xs = sorted((v for v in f.variables() if v != "t"), key=_var_index)
    fresh = [v for v in xs if v not in prior_vars]
    if len(fresh) == 1:
        return fresh[0]
    return xs[-1]


def boundary(c: Cycle) -> Cycle:
    """Cubical boundary: alternating sum of the 0 and infinity faces.

    Face i with value eps carries sign (-1)^(i-1) (+ for 0, - for
    infinity); the face equation f_i = eps is solved for one parameter
    of f_i (the fresh one when the coordinates form a chain), the
    solution is substituted in the remaining coordinates and coordinate
    i is removed.  The base parameter t is never solved for.  Restricted
    terms are canonicalized so equal faces cancel.
    """
    out: dict = {}
    for tup, coeff in c.terms.items():
        prior: set = set()
        for i, f in enumerate(tup):
            fvars = {v for v in f.variables() if v != "t"}
            if fvars:
                sol_var = _solve_variable(f, prior)
                a, b, cc, d = f.mobius(sol_var)
                for eps, face_sign in ((0, 1), (1, -1)):  # 1 encodes infinity
                    if eps == 0:
                        if not a.is_zero():
                            p, q = -b, a
                        elif not cc.is_zero():
                            p, q = ONE, ZERO  # solution at infinity
                        else:
                            continue
                    else:
                        if not cc.is_zero():
                            p, q = -d, cc
                        elif not a.is_zero():
                            p, q = ONE, ZERO
                        else:
                            continue
                    rest = [g.subst(sol_var, p, q) for k, g in enumerate(tup) if k != i]
                    if any(g == "inf" for g in rest):
                        continue  # lies inside a deeper face
                    if _term_vanishes(tuple(rest)):
                        continue
                    norm = alt_canonical_term(tuple(rest))
                    if norm is None:
                        continue
                    tup2, perm_sign = norm
                    sign = face_sign * perm_sign * (-1) ** i
                    v = out.get(tup2, Fraction(0)) + coeff * sign
                    if v:
                        out[tup2] = v
                    else:
                        out.pop(tup2, None)
            prior |= fvars
    return Cycle(c.weight, out)


def ed_rhs(w: Word, variant: str = "plain") -> Cycle:
    """Right-hand side of the differential system, built from products."""
    if len(w) < 2:
        return Cycle(len(w), {})
    parts: list[tuple[Fraction, Cycle, Cycle]] = []
    if variant == "plain":
        a, b = derive_ab(w)
        for (u, v), c in a.entries.items():
            parts.append((c, cycle(u, "plain"), cycle(v, "plain")))
        for (u, v), c in b.entries.items():
            parts.append((c, cycle(u, "plain"), cycle(v, "one")))
    else:
        ap, bp = derive_apbp(w)
        for (u, v), c in ap.entries.items():
            if u == W0:
                parts.append((c, cycle(u, "plain"), cycle(v, "plain")))
            else:
                parts.append((c, cycle(u, "one"), cycle(v, "one")))
        for (u, v), c in bp.entries.items():
            parts.append((c, cycle(u, "plain"), cycle(v, "one")))
    out: dict = {}
    for c, c1, c2 in parts:
        for tup, x in canonicalize_alt(product(c1, c2)).terms.items():
            v = out.get(tup, Fraction(0)) + c * x
            if v:
                out[tup] = v
            else:
                out.pop(tup, None)
    return Cycle(len(w), out)


def verify_cycle_differential(w: Word, variant: str = "plain") -> bool:
    """Boundary of the cycle equals the table-built right-hand side."""
    lhs = boundary(cycle(w, variant))
    rhs = ed_rhs(w, variant)
    return lhs.terms == rhs.terms


def differential_mismatch(w: Word, variant: str = "plain") -> dict:
    """Structured difference boundary - rhs (empty dict when verified)."""
    lhs = boundary(cycle(w, variant))
    rhs = ed_rhs(w, variant)
    diff: dict = dict(lhs.terms)
    for tup, c in rhs.terms.items():
        v = diff.get(tup, Fraction(0)) - c
        if v:
            diff[tup] = v
        else:
            diff.pop(tup, None)
    return diff


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def cycle_to_json(w: Word, variant: str, c: Cycle) -> str:
    terms = []
    for tup, coeff in c:
        terms.append(
            {"coeff": str(coeff), "functions": [frac_str(f) for f in tup]}
        )
    return json.dumps(
        {
            "word": word_str(w),
            "variant": variant,
            "weight": c.weight,
            "terms": terms,
        },
        indent=2,
    )


def cycle_from_json(text: str) -> tuple[Word, str, Cycle]:
    data = json.loads(text)
    terms: dict = {}
    for item in data["terms"]:
        tup = tuple(parse_expr(s) for s in item["functions"])
        coeff = Fraction(item["coeff"])
        if coeff:
            terms[tup] = terms.get(tup, Fraction(0)) + coeff
    return word(data["word"]), data["variant"], Cycle(data["weight"], terms)


def cycle_pretty(c: Cycle) -> str:
    """Bracket notation, one signed term per line."""
    if c.is_zero():
        return "0"
    lines = []
    for tup, coeff in c:
        inner = ", ".join(frac_str(f) for f in tup)
        if coeff == 1:
            head = "+"
        elif coeff == -1:
            head = "-"
        else:
            head = f"{coeff}*"
        lines.append(f"{head}[t; {inner}]")
    return "\n".join(lines)
