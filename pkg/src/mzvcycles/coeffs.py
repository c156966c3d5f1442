"""Derived coefficient systems and their quadratic relations.

From the product decomposition of the tree differential (tables alpha,
beta) one forms the coefficients driving the two cycle differential
systems:

    a_{U,V}  = alpha_{U,V} + beta_{U,V} - beta_{V,U}          (U < V)
    b_{U,V}  = -beta_{U,V}
    a'_{U,V} = -a_{U,V}                (0 < U < V),   a'_{0,V} = a_{0,V}
    b'_{U,V} = a_{U,V} + b_{U,V}       (0 < U < V)
    b'_{V,U} = -a_{U,V} + b_{V,U}      (0 < U < V),   b'_{U,U} = b_{U,U}

with b'_{0,V} = b'_{V,0} = 0.  The r/s/t residuals spell out d^2 = 0 of
the forest differential against the independent product families and
must vanish identically; the formal checks replay the same vanishing in
an abstract graded-commutative algebra on degree-1 symbols.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .forest import extract_alpha_beta
from .words import Word, lyndon_words, word, word_str

Pair = tuple[Word, Word]

W0: Word = (0,)
W1: Word = (1,)


@dataclass
class CoeffTable:
    kind: str  # alpha | beta | a | b | ap | bp
    word: Word
    entries: dict  # Pair -> Fraction

    def __getitem__(self, pair: Pair) -> Fraction:
        return self.entries.get(pair, Fraction(0))

    def items(self):
        return sorted(self.entries.items())


def _alpha(w: Word) -> dict:
    return extract_alpha_beta(w)[0]


def _beta(w: Word) -> dict:
    return extract_alpha_beta(w)[1]


def alpha_table(w: Word) -> CoeffTable:
    return CoeffTable("alpha", w, dict(_alpha(w)))


def beta_table(w: Word) -> CoeffTable:
    return CoeffTable("beta", w, dict(_beta(w)))


@lru_cache(maxsize=None)
def derive_ab(w: Word) -> tuple[CoeffTable, CoeffTable]:
    if len(w) < 2:
        return CoeffTable("a", w, {}), CoeffTable("b", w, {})
    alpha, beta = extract_alpha_beta(w)
    pairs = {p for p in alpha} | {p for p in beta} | {(v, u) for u, v in beta}
    a: dict[Pair, Fraction] = {}
    b: dict[Pair, Fraction] = {}
    for u, v in pairs:
        if u < v:
            val = (
                Fraction(alpha.get((u, v), 0))
                + beta.get((u, v), 0)
                - beta.get((v, u), 0)
            )
            if val:
                a[(u, v)] = val
        bval = -Fraction(beta.get((u, v), 0))
        if bval:
            b[(u, v)] = bval
    for (u, v), val in a.items():
        # the only admissible pair ending in 1 with nonzero a is (0, 1)
        assert v != W1 or u == W0 or val == 0, "a_{U,1} must vanish for U != 0"
    for (u, v), val in b.items():
        assert u != W0 and v != W0 and v != W1, "b entries touching 0 or (.,1)"
    return CoeffTable("a", w, a), CoeffTable("b", w, b)


@lru_cache(maxsize=None)
def derive_apbp(w: Word) -> tuple[CoeffTable, CoeffTable]:
    a, b = derive_ab(w)
    ap: dict[Pair, Fraction] = {}
    bp: dict[Pair, Fraction] = {}
    for (u, v), val in a.entries.items():
        if u == W0:
            ap[(u, v)] = val  # multiplies the plain pair in the primed system
        else:
            ap[(u, v)] = -val
            if val:
                bp[(u, v)] = bp.get((u, v), Fraction(0)) + val
                bp[(v, u)] = bp.get((v, u), Fraction(0)) - val
    for (u, v), val in b.entries.items():
        if u == W0 or v == W0:
            continue
        bp[(u, v)] = bp.get((u, v), Fraction(0)) + val
    ap = {p: v for p, v in ap.items() if v}
    bp = {p: v for p, v in bp.items() if v}
    for (u, v), val in bp.items():
        assert u != W0 and v != W0 and v != W1
    return CoeffTable("ap", w, ap), CoeffTable("bp", w, bp)


def _words_of_length(n: int) -> list[Word]:
    return [u for u in lyndon_words(n) if len(u) == n]


def residual_r(w: Word, a: Word, b: Word, c: Word) -> Fraction:
    """Quadratic alpha-alpha residual; zero for every admissible triple."""
    if not a < b < c:
        raise ValueError("need a < b < c")
    if len(a) + len(b) + len(c) != len(w):
        return Fraction(0)  # every summand vanishes by weight additivity
    al = _alpha(w)

    def inner(x: Word, y: Word, u: Word) -> Fraction:
        if not x < y or len(u) < 2:
            return Fraction(0)
        return Fraction(_alpha(u).get((x, y), 0))

    tot = Fraction(0)
    for u in lyndon_words(len(w) - 1):
        if u < a:
            tot += Fraction(al.get((u, a), 0)) * inner(b, c, u)
            tot -= Fraction(al.get((u, b), 0)) * inner(a, c, u)
            tot += Fraction(al.get((u, c), 0)) * inner(a, b, u)
        elif a < u < b:
            tot -= Fraction(al.get((a, u), 0)) * inner(b, c, u)
            tot -= Fraction(al.get((u, b), 0)) * inner(a, c, u)
            tot += Fraction(al.get((u, c), 0)) * inner(a, b, u)
        elif b < u < c:
            tot -= Fraction(al.get((a, u), 0)) * inner(b, c, u)
            tot += Fraction(al.get((b, u), 0)) * inner(a, c, u)
            tot += Fraction(al.get((u, c), 0)) * inner(a, b, u)
        elif c < u:
            tot -= Fraction(al.get((a, u), 0)) * inner(b, c, u)
            tot += Fraction(al.get((b, u), 0)) * inner(a, c, u)
            tot -= Fraction(al.get((c, u), 0)) * inner(a, b, u)
    return tot


def residual_s(w: Word, a: Word, b: Word, c: Word) -> Fraction:
    """Mixed alpha-beta residual for a < b, any c; vanishes identically."""
    if not a < b:
        raise ValueError("need a < b")
    al, be = extract_alpha_beta(w)

    def alpha_u(u: Word, x: Word, y: Word) -> Fraction:
        if not x < y or len(u) < 2:
            return Fraction(0)
        return Fraction(_alpha(u).get((x, y), 0))

    def beta_u(u: Word, x: Word, y: Word) -> Fraction:
        if len(u) < 2:
            return Fraction(0)
        return Fraction(_beta(u).get((x, y), 0))

    tot = Fraction(0)
    for u in lyndon_words(len(w) - 1):
        tot += Fraction(be.get((u, c), 0)) * alpha_u(u, a, b)
        if u < a:
            tot += Fraction(al.get((u, a), 0)) * beta_u(u, b, c)
        if u < b:
            tot -= Fraction(al.get((u, b), 0)) * beta_u(u, a, c)
        if u > a:
            tot -= Fraction(al.get((a, u), 0)) * beta_u(u, b, c)
        if u > b:
            tot += Fraction(al.get((b, u), 0)) * beta_u(u, a, c)
    return tot


def residual_t(w: Word, a: Word, b: Word, c: Word) -> Fraction:
    """Beta-beta residual for b < c, b != 0, any a; vanishes identically.

    For b = 0 the residual multiplies the coefficient of a product
    containing the zero tree (root 1 over leaf 0), so no relation is
    forced there and the sum can be nonzero.
    """
    if not b < c:
        raise ValueError("need b < c")
    if b == W0:
        raise ValueError("t residual needs b != 0")
    be = _beta(w)

    def alpha_u(u: Word, x: Word, y: Word) -> Fraction:
        if not x < y or len(u) < 2:
            return Fraction(0)
        return Fraction(_alpha(u).get((x, y), 0))

    def beta_u(u: Word, x: Word, y: Word) -> Fraction:
        if len(u) < 2:
            return Fraction(0)
        return Fraction(_beta(u).get((x, y), 0))

    tot = Fraction(0)
    for u in lyndon_words(len(w) - 1):
        tot += Fraction(be.get((u, c), 0)) * beta_u(u, a, b)
        tot -= Fraction(be.get((u, b), 0)) * beta_u(u, a, c)
        tot += Fraction(be.get((a, u), 0)) * (
            -alpha_u(u, b, c) - beta_u(u, b, c) + beta_u(u, c, b)
        )
    return tot


# ---------------------------------------------------------------------------
# formal degree-1 symbols A_U, A1_U and the induced differential
# ---------------------------------------------------------------------------

Symbol = tuple[Word, int]  # (word, variant): variant 0 plain, 1 primed


def _sym_key(s: Symbol):
    return (s[0], s[1])


class FormalElement:
    """Graded-commutative polynomial in degree-1 symbols.

    Monomials are kept as sorted symbol tuples; a repeated symbol kills
    the monomial and each adjacent swap during sorting flips the sign.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple, Fraction] = dict(terms or {})

    @classmethod
    def symbol(cls, w: Word, variant: int = 0) -> "FormalElement":
        return cls({((w, variant),): Fraction(1)})

    @classmethod
    def zero(cls) -> "FormalElement":
        return cls()

    def __add__(self, other: "FormalElement") -> "FormalElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, Fraction(0)) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return FormalElement(out)

    def __sub__(self, other: "FormalElement") -> "FormalElement":
        return self + (other * -1)

    def __mul__(self, other) -> "FormalElement":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return FormalElement({m: v * c for m, v in self.terms.items()} if c else {})
        out: dict[tuple, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                norm = _sort_monomial(m1 + m2)
                if norm is None:
                    continue
                m, sign = norm
                v = out.get(m, Fraction(0)) + sign * c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return FormalElement(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in sorted(self.terms.items()):
            names = ".".join(
                ("A1_" if var else "A_") + word_str(w) for w, var in m
            )
            bits.append(f"{c}*{names}")
        return " + ".join(bits)


def _sort_monomial(m: tuple):
    """Insertion sort with sign; None when a symbol repeats."""
    lst = list(m)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and _sym_key(lst[j]) < _sym_key(lst[j - 1]):
            lst[j], lst[j - 1] = lst[j - 1], lst[j]
            sign = -sign
            j -= 1
    for i in range(len(lst) - 1):
        if lst[i] == lst[i + 1]:
            return None
    return tuple(lst), sign


def rhs_plain(w: Word) -> FormalElement:
    """Right-hand side of the differential system for the plain symbol."""
    a, b = derive_ab(w)
    out = FormalElement.zero()
    for (u, v), c in a.entries.items():
        out = out + FormalElement.symbol(u) * FormalElement.symbol(v) * c
    for (u, v), c in b.entries.items():
        out = out + FormalElement.symbol(u) * FormalElement.symbol(v, 1) * c
    return out


def rhs_primed(w: Word) -> FormalElement:
    """Right-hand side for the primed symbol; 0 and 1 only enter plain."""
    ap, bp = derive_apbp(w)
    out = FormalElement.zero()
    for (u, v), c in ap.entries.items():
        if u == W0:
            out = out + FormalElement.symbol(W0) * FormalElement.symbol(v) * c
        else:
            out = out + FormalElement.symbol(u, 1) * FormalElement.symbol(v, 1) * c
    for (u, v), c in bp.entries.items():
        out = out + FormalElement.symbol(u) * FormalElement.symbol(v, 1) * c
    return out


def formal_differential(x: FormalElement) -> FormalElement:
    """Extend d(symbol) = rhs to products by the graded Leibniz rule."""
    out = FormalElement.zero()
    for m, c in x.terms.items():
        for i, (w, var) in enumerate(m):
            if len(w) < 2:
                continue  # letters are closed
            d = rhs_primed(w) if var else rhs_plain(w)
            rest = m[:i] + m[i + 1 :]
            # d(symbol) has even degree, so it commutes past the rest
            out = out + FormalElement({rest: c * (-1) ** i}) * d
    return out


def formal_differential_check(w: Word) -> bool:
    """d(rhs) = 0 for both systems at w (formal replay of d^2 = 0)."""
    if len(w) < 2:
        return True
    return formal_differential(rhs_plain(w)).is_zero() and formal_differential(
        rhs_primed(w)
    ).is_zero()


def difference_identity_holds(w: Word) -> bool:
    """rhs_plain - rhs_primed factors through the differences A_U - A1_U."""
    if len(w) < 2:
        return rhs_plain(w) == rhs_primed(w)
    a, _ = derive_ab(w)
    expected = FormalElement.zero()
    for (u, v), c in a.entries.items():
        if u == W0 or v == W1:
            continue
        du = FormalElement.symbol(u) - FormalElement.symbol(u, 1)
        dv = FormalElement.symbol(v) - FormalElement.symbol(v, 1)
        expected = expected + du * dv * c
    return (rhs_plain(w) - rhs_primed(w)) == expected


# ---------------------------------------------------------------------------
# tab-separated on-disk table format (pure memo of the extraction)
# ---------------------------------------------------------------------------

TSV_VERSION = "mzvcycles-tables v1"


def tables_for(w: Word) -> dict[str, CoeffTable]:
    a, b = derive_ab(w)
    ap, bp = derive_apbp(w)
    return {
        "alpha": alpha_table(w),
        "beta": beta_table(w),
        "a": a,
        "b": b,
        "ap": ap,
        "bp": bp,
    }


def dump_tables(max_weight: int) -> str:
    """All tables for |W| <= max_weight as TSV with a version header."""
    buf = io.StringIO()
    buf.write(f"# {TSV_VERSION} max_weight={max_weight}\n")
    for w in lyndon_words(max_weight):
        if len(w) < 2:
            continue
        for kind, table in tables_for(w).items():
            for (u, v), val in table.items():
                buf.write(
                    f"{kind}\t{word_str(w)}\t{word_str(u)}\t{word_str(v)}\t{val}\n"
                )
    return buf.getvalue()


def load_tables(text: str):
    """Parse a TSV dump; returns (max_weight, {(kind, W, U, V): Fraction})."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(f"# {TSV_VERSION}"):
        raise ValueError("unrecognized table cache format")
    max_weight = int(lines[0].rsplit("=", 1)[1])
    rows = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        kind, w, u, v, val = line.split("\t")
        rows[(kind, word(w), word(u), word(v))] = Fraction(val)
    return max_weight, rows
