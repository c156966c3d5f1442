"""Named invariant checks behind the ``verify`` command.

Each suite returns a list of Check objects; a Check runs independently
and reports (ok, detail).  The batteries mirror the structural facts the
construction rests on, bounded by a weight cap so the whole run stays
interactive.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import numerics
from .coeffs import (
    W0,
    W1,
    derive_ab,
    derive_apbp,
    difference_identity_holds,
    formal_differential_check,
    residual_r,
    residual_s,
    residual_t,
)
from .cycles import (
    canonicalize,
    cycle,
    fiber_empty_at,
    gamma_tree,
    verify_cycle_differential,
)
from .dualsums import (
    coefficient_recursion_holds,
    d_lie,
    dual_tree,
    one_leaf_positions,
)
from .forest import d_cy, embed_dual, extract_alpha_beta
from .ratexpr import parse_expr
from .trees import (
    Tree,
    bracket_expand,
    decompose,
    decompose_tracked,
    graft,
    is_hall,
    leaf,
    lyndon_tree,
    normalize_sign,
)
from .words import Word, is_lyndon, lyndon_words, word, word_str

SUITES = ["words", "dual", "forest", "coeffs", "cycles", "numeric"]


@dataclass
class Check:
    name: str
    fn: object

    def run(self):
        try:
            detail = self.fn()
            return True, detail or ""
        except AssertionError as e:
            return False, str(e)


def _words_of_length(n: int):
    return [w for w in lyndon_words(n) if len(w) == n]


def all_trees(n: int) -> list[Tree]:
    """Every decorated trivalent tree with n leaves."""
    if n == 1:
        return [leaf(0), leaf(1)]
    out = []
    for k in range(1, n):
        for a in all_trees(k):
            for b in all_trees(n - k):
                out.append(graft(a, b))
    return out


def reduced_trees(n: int) -> list[Tree]:
    """The antisymmetry-reduced basis trees of weight n."""
    out = []
    for t in all_trees(n):
        norm = normalize_sign(t)
        if norm is not None and norm[0] is t and norm[1] == 1:
            out.append(t)
    return out


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------


def _check_duval_vs_bruteforce(n: int):
    brute = sorted(
        w
        for ln in range(1, n + 1)
        for w in itertools.product((0, 1), repeat=ln)
        if is_lyndon(w)
    )
    assert lyndon_words(n) == brute, f"enumeration mismatch at n={n}"


def _check_factorization(n: int):
    from .words import standard_factorization

    for w in lyndon_words(n):
        if len(w) < 2:
            continue
        u, v = standard_factorization(w)
        assert u + v == w and is_lyndon(u) and is_lyndon(v), word_str(w)
        assert u < w < v, f"order violation for {word_str(w)}"
        assert (0,) <= w <= (1,), word_str(w)


def _suite_words(max_weight: int):
    n = min(10, max(max_weight, 8))
    return [
        Check(f"enumeration equals brute force up to n={n}", lambda n=n: _check_duval_vs_bruteforce(n)),
        Check(f"standard factorization sane up to n={n}", lambda n=n: _check_factorization(n)),
    ]


# ---------------------------------------------------------------------------
# dual (tree rewriting and duality)
# ---------------------------------------------------------------------------


def _check_rewriting_identities(n: int):
    for wa in range(1, n):
        for a in all_trees(wa):
            for b in all_trees(n - wa):
                if a != b:
                    lhs = decompose(graft(a, b))
                    rhs = {w: -c for w, c in decompose(graft(b, a)).items()}
                    assert lhs == rhs, f"antisymmetry {a!r} {b!r}"
    for wa in range(1, n - 1):
        for wb in range(1, n - wa):
            for a in all_trees(wa):
                for b in all_trees(wb):
                    for c in all_trees(n - wa - wb):
                        lhs = decompose(graft(graft(a, b), c))
                        r1 = decompose(graft(graft(a, c), b))
                        r2 = decompose(graft(a, graft(b, c)))
                        tot = dict(r1)
                        for w, v in r2.items():
                            tot[w] = tot.get(w, 0) + v
                        tot = {w: v for w, v in tot.items() if v}
                        assert lhs == tot, f"Jacobi {a!r} {b!r} {c!r}"


def _check_hall_identity(n: int):
    for w in _words_of_length(n):
        assert decompose(lyndon_tree(w)) == {w: 1}, word_str(w)


def _check_tracked_sums(n: int):
    for t in all_trees(n):
        base = decompose(t)
        per_pos = []
        for i in range(1, t.nleaves + 1):
            tracked = decompose_tracked(t, i)
            tot: dict[Word, int] = {}
            for (s, _k), q in tracked.items():
                if is_hall(s):
                    tot[s.word] = tot.get(s.word, 0) + q
            per_pos.append({w: v for w, v in tot.items() if v})
        assert all(p == base for p in per_pos), f"tracked sums differ for {t!r}"


def _check_duality(n: int):
    duals = {w: dual_tree(w).combination for w in _words_of_length(n)}
    for t in reduced_trees(n):
        dec = decompose(t)
        for w, comb in duals.items():
            assert comb.get(t, Fraction(0)) == dec.get(w, 0), (
                f"duality fails at T={t!r}, W={word_str(w)}"
            )


def _check_leaf_sides(n: int):
    def sides_ok(t: Tree, is_right: bool) -> bool:
        if t.is_leaf:
            return t.dec == (1 if is_right else 0)
        return sides_ok(t.left, False) and sides_ok(t.right, True)

    for w in _words_of_length(n):
        for t in dual_tree(w).combination:
            assert sides_ok(t.left, False) and sides_ok(t.right, True), (
                f"leaf side violation in T_{word_str(w)}: {t!r}"
            )


def _check_dlie_squares(n: int):
    # d applied twice, antisymmetrized over the three slots, must cancel
    for w in _words_of_length(n):
        acc: dict[tuple, Fraction] = {}

        def add(ws, c):
            perm_sign = 1
            ws = list(ws)
            for i in range(len(ws)):
                for j in range(len(ws) - 1 - i):
                    if ws[j] > ws[j + 1]:
                        ws[j], ws[j + 1] = ws[j + 1], ws[j]
                        perm_sign = -perm_sign
            if len(set(ws)) < 3:
                return
            key = tuple(ws)
            v = acc.get(key, Fraction(0)) + perm_sign * c
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
        assert not acc, f"d_Lie^2 != 0 for {word_str(w)}: {acc}"


def _check_ctw_recursion(n: int):
    for w in _words_of_length(n):
        for t in dual_tree(w).combination:
            for pos in one_leaf_positions(t):
                assert coefficient_recursion_holds(w, t, pos), (
                    f"coefficient recursion fails: W={word_str(w)} T={t!r} i={pos}"
                )


def _suite_dual(max_weight: int):
    out = []
    rewrite_cap = min(max_weight, 6)
    out.append(
        Check(
            f"antisymmetry and Jacobi of decompose (weight <= {rewrite_cap})",
            lambda: [_check_rewriting_identities(n) for n in range(2, rewrite_cap + 1)],
        )
    )
    out.append(
        Check(
            f"decompose is identity on Hall trees (weight <= {max_weight})",
            lambda: [_check_hall_identity(n) for n in range(1, max_weight + 1)],
        )
    )
    tracked_cap = min(max_weight, 5)
    out.append(
        Check(
            f"tracked sums reproduce decompose (weight <= {tracked_cap})",
            lambda: [_check_tracked_sums(n) for n in range(1, tracked_cap + 1)],
        )
    )
    out.append(
        Check(
            f"duality matrix (weight <= {max_weight})",
            lambda: [_check_duality(n) for n in range(1, max_weight + 1)],
        )
    )
    out.append(
        Check(
            f"leaves sit on their forced sides (weight <= {max_weight})",
            lambda: [_check_leaf_sides(n) for n in range(2, max_weight + 1)],
        )
    )
    out.append(
        Check(
            f"d_Lie squares to zero (weight <= {max_weight})",
            lambda: [_check_dlie_squares(n) for n in range(2, max_weight + 1)],
        )
    )
    ctw_cap = min(max_weight, 5)
    out.append(
        Check(
            f"insertion recursion for dual coefficients (weight <= {ctw_cap})",
            lambda: [_check_ctw_recursion(n) for n in range(2, ctw_cap + 1)],
        )
    )
    return out


# ---------------------------------------------------------------------------
# forest
# ---------------------------------------------------------------------------

GOLDEN_TABLES = {
    "011": ({("01", "1"): 1}, {("1", "01"): 1}),
    "0011": (
        {("0", "011"): 1, ("001", "1"): 1},
        {("1", "001"): 1, ("01", "01"): 1},
    ),
    "01011": (
        {("01", "011"): 1, ("0011", "1"): 1},
        {("1", "0011"): 1, ("011", "01"): 2},
    ),
}


def _check_golden_tables():
    for wstr, (ea, eb) in GOLDEN_TABLES.items():
        alpha, beta = extract_alpha_beta(word(wstr))
        got_a = {(word_str(u), word_str(v)): c for (u, v), c in alpha.items()}
        got_b = {(word_str(u), word_str(v)): c for (u, v), c in beta.items()}
        assert got_a == ea and got_b == eb, f"tables differ for {wstr}"


def _check_dcy_square(n: int):
    for w in _words_of_length(n):
        f = embed_dual(dual_tree(w), "t")
        assert d_cy(d_cy(f)) == {}, f"d_cy^2 != 0 on T_{word_str(w)}"
        assert d_cy(f, classes=("int",)) == {}, f"d_int != 0 on T_{word_str(w)}"
        assert d_cy(f, classes=("leaf0",)) == {}, f"d_l^0 != 0 on T_{word_str(w)}"


def _check_dcy_square_products(n: int):
    from .forest import mul

    ws = lyndon_words(n - 1)
    count = 0
    for u in ws:
        for v in ws:
            if len(u) + len(v) == n and u < v and len(u) >= 2 and len(v) >= 2:
                f = mul(
                    embed_dual(dual_tree(u), "t"), embed_dual(dual_tree(v), "t")
                )
                assert d_cy(d_cy(f)) == {}, f"d_cy^2 on product {word_str(u)}.{word_str(v)}"
                count += 1
    return count


def _check_relv01(n: int):
    for w in _words_of_length(n):
        alpha, beta = extract_alpha_beta(w)
        for (u, v), c in beta.items():
            assert v != W0 and u != W0, f"beta touches 0 for {word_str(w)}"
            assert v != W1 or c == 0, f"beta_(U,1) != 0 for {word_str(w)}"
            assert len(u) + len(v) == len(w), "weight additivity"
        for (u, v), c in alpha.items():
            assert len(u) + len(v) == len(w), "weight additivity"
            if u == W1:
                assert beta.get((W1, v), 0) == alpha.get((v, W1), 0)
        # beta_(1,U) = alpha_(U,1)
        for (u, v), c in list(beta.items()):
            if u == W1:
                assert c == alpha.get((v, W1), 0), (
                    f"beta_(1,{word_str(v)}) != alpha_({word_str(v)},1) for {word_str(w)}"
                )


def _check_alpha_vs_bracket(n: int):
    for w in _words_of_length(n):
        alpha, _ = extract_alpha_beta(w)
        expected = {}
        for u in lyndon_words(n - 1):
            for v in lyndon_words(n - 1):
                if len(u) + len(v) == n and u < v:
                    c = bracket_expand(u, v).get(w, 0)
                    if c:
                        expected[(u, v)] = Fraction(c)
        assert alpha == expected, f"alpha vs bracket mismatch for {word_str(w)}"


def _suite_forest(max_weight: int):
    out = [Check("printed differential tables reproduce", _check_golden_tables)]
    out.append(
        Check(
            f"d_cy^2 = d_int = d_l^0 = 0 on dual sums (weight <= {max_weight})",
            lambda: [_check_dcy_square(n) for n in range(2, max_weight + 1)],
        )
    )
    out.append(
        Check(
            f"d_cy^2 = 0 on products (weight <= {max_weight})",
            lambda: [_check_dcy_square_products(n) for n in range(4, max_weight + 1)],
        )
    )
    out.append(
        Check(
            f"relations among alpha/beta at 0 and 1 (weight <= {max_weight})",
            lambda: [_check_relv01(n) for n in range(2, max_weight + 1)],
        )
    )
    out.append(
        Check(
            f"root part equals the bracket expansion (weight <= {max_weight})",
            lambda: [_check_alpha_vs_bracket(n) for n in range(2, max_weight + 1)],
        )
    )
    return out


# ---------------------------------------------------------------------------
# coeffs
# ---------------------------------------------------------------------------


def _check_rst(n: int):
    for w in _words_of_length(n):
        small = lyndon_words(n - 2)
        for a, b, c in itertools.product(small, repeat=3):
            if len(a) + len(b) + len(c) != n:
                continue
            if a < b < c:
                assert residual_r(w, a, b, c) == 0, (
                    f"r != 0: {word_str(w)} {word_str(a)},{word_str(b)},{word_str(c)}"
                )
            if a < b:
                assert residual_s(w, a, b, c) == 0, (
                    f"s != 0: {word_str(w)} {word_str(a)},{word_str(b)},{word_str(c)}"
                )
            if b < c and b != W0:
                assert residual_t(w, a, b, c) == 0, (
                    f"t != 0: {word_str(w)} {word_str(a)},{word_str(b)},{word_str(c)}"
                )


def _check_formal(n: int):
    for w in _words_of_length(n):
        assert formal_differential_check(w), f"formal d^2 fails for {word_str(w)}"
        assert difference_identity_holds(w), f"difference identity fails for {word_str(w)}"


def _check_coef_zeroes(n: int):
    for w in _words_of_length(n):
        a, b = derive_ab(w)
        ap, bp = derive_apbp(w)
        for (u, v), c in a.entries.items():
            if v == W1 and u != W0:
                assert c == 0
        for table in (b, bp):
            for (u, v), c in table.entries.items():
                assert u != W0 and v != W0 and v != W1, (
                    f"{table.kind} touches a forbidden index for {word_str(w)}"
                )


def _suite_coeffs(max_weight: int):
    return [
        Check(
            f"quadratic residuals vanish (weight <= {max_weight})",
            lambda: [_check_rst(n) for n in range(3, max_weight + 1)],
        ),
        Check(
            f"formal differential closes (weight <= {max_weight})",
            lambda: [_check_formal(n) for n in range(2, max_weight + 1)],
        ),
        Check(
            f"forced zero entries (weight <= {max_weight})",
            lambda: [_check_coef_zeroes(n) for n in range(2, max_weight + 1)],
        ),
    ]


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------

PRINTED_CYCLES = {
    ("0", "plain"): [(1, ["t"])],
    ("1", "plain"): [(1, ["1 - t"])],
    ("01", "plain"): [(1, ["1 - t/x1", "x1", "1 - x1"])],
    ("01", "one"): [(1, ["(x1 - t)/(x1 - 1)", "x1", "1 - x1"])],
    ("011", "plain"): [
        (-1, ["1 - t/x2", "1 - x2", "(x1 - x2)/(x1 - 1)", "x1", "1 - x1"])
    ],
    ("011", "one"): [
        (-1, ["(x2 - t)/(x2 - 1)", "1 - x2", "(x1 - x2)/(x1 - 1)", "x1", "1 - x1"])
    ],
    ("001", "one"): [
        (1, ["(x2 - t)/(x2 - 1)", "x2", "1 - x2/x1", "x1", "1 - x1"])
    ],
    ("001", "plain"): [(1, ["1 - t/x2", "x2", "1 - x2/x1", "x1", "1 - x1"])],
    ("0001", "plain"): [
        (1, ["1 - t/x3", "x3", "1 - x3/x2", "x2", "1 - x2/x1", "x1", "1 - x1"])
    ],
    ("0011", "plain"): [
        (-1, ["1 - t/x3", "x3", "1 - x3/x2", "1 - x2", "(x1 - x2)/(x1 - 1)", "x1", "1 - x1"]),
        (-1, ["1 - t/x3", "1 - x3", "(x2 - x3)/(x2 - 1)", "x2", "1 - x2/x1", "x1", "1 - x1"]),
        (-1, ["1 - t/x3", "1 - x3/x2", "x2", "1 - x2", "(x1 - x3)/(x1 - 1)", "x1", "1 - x1"]),
    ],
}


def _check_printed_cycles():
    from .cycles import Cycle

    for (wstr, variant), sign_terms in PRINTED_CYCLES.items():
        got = canonicalize(cycle(word(wstr), variant)).terms
        want: dict = {}
        for coeff, exprs in sign_terms:
            tup = tuple(parse_expr(e) for e in exprs)
            want[tuple(tup)] = Fraction(coeff)
        want = canonicalize(Cycle(len(wstr), want)).terms
        assert got == want, f"parametrization differs for {wstr} ({variant})"


def _check_cycle_shapes(n: int):
    from .cycles import build_colored

    for w in _words_of_length(n):
        for variant in ("plain", "one"):
            for _c, branch in build_colored(w, variant):
                tup = gamma_tree(branch)
                assert len(tup) == 2 * n - 1, "coordinate count"
                xs = {v for f in tup for v in f.variables() if v != "t"}
                assert len(xs) == n - 1, "parameter count"


def _check_fibers(n: int):
    for w in _words_of_length(n):
        assert fiber_empty_at(cycle(w, "plain"), 0), f"L_{word_str(w)} at 0"
        assert fiber_empty_at(cycle(w, "one"), 1), f"L1_{word_str(w)} at 1"


def _check_differentials(n: int):
    for w in _words_of_length(n):
        for variant in ("plain", "one"):
            assert verify_cycle_differential(w, variant), (
                f"differential fails: {word_str(w)} ({variant})"
            )


def _suite_cycles(max_weight: int):
    out = [Check("printed parametrizations reproduce", _check_printed_cycles)]
    shape_cap = min(max_weight, 5)
    out.append(
        Check(
            f"tuple shapes (weight <= {shape_cap})",
            lambda: [_check_cycle_shapes(n) for n in range(2, shape_cap + 1)],
        )
    )
    fiber_cap = min(max_weight, 5)
    out.append(
        Check(
            f"fibers empty at the marked points (weight <= {fiber_cap})",
            lambda: [_check_fibers(n) for n in range(2, fiber_cap + 1)],
        )
    )
    diff_cap = min(max_weight, 5)
    out.append(
        Check(
            f"boundary equals the differential system (weight <= {diff_cap})",
            lambda: [_check_differentials(n) for n in range(2, diff_cap + 1)],
        )
    )
    return out


# ---------------------------------------------------------------------------
# numeric
# ---------------------------------------------------------------------------


def _check_quad_vs_series(tol: float):
    for t0 in (0.1, 0.3, 0.5, 0.7, 0.9):
        q = numerics.integral_I011(t0, tol)
        s = numerics.j_series(t0, tol / 100)
        assert abs(q - s) < 10 * tol, f"quad/series disagree at t0={t0}: {q} vs {s}"


def _check_limit():
    lim = numerics.j_limit_at_one()
    target = -2.0 * numerics.zeta21()
    assert abs(lim - target) < 1e-4, f"limit {lim} vs {target}"


def _check_bounded():
    vals = [numerics.j_series(1 - 2.0**-k, 1e-12) for k in range(4, 13)]
    assert all(abs(v) < 3.0 for v in vals), "J unbounded along the sequence"
    # each summand alone diverges like log(1 - t0)
    big = numerics.li1(1 - 2.0**-12) * numerics.zeta2()
    assert big > 5.0


def _suite_numeric(max_weight: int, tol: float):
    return [
        Check("quadrature matches the series", lambda: _check_quad_vs_series(max(tol, 1e-9))),
        Check("extrapolated limit hits -2 zeta(2,1)", _check_limit),
        Check("divergences cancel in the combination", _check_bounded),
    ]


def suite_checks(suite: str, max_weight: int, tol: float = 1e-9):
    if suite == "words":
        return _suite_words(max_weight)
    if suite == "dual":
        return _suite_dual(max_weight)
    if suite == "forest":
        return _suite_forest(max_weight)
    if suite == "coeffs":
        return _suite_coeffs(max_weight)
    if suite == "cycles":
        return _suite_cycles(max_weight)
    if suite == "numeric":
        return _suite_numeric(max_weight, tol)
    raise ValueError(f"unknown suite {suite!r}")
