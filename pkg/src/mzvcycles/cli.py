"""Command-line surface: inspection commands plus the verification suites."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import checks
from .coeffs import TSV_VERSION, dump_tables, load_tables, tables_for
from .cycles import cycle, cycle_pretty, cycle_to_json
from .dualsums import dual_tree
from .numerics import integral_I011, j_series
from .trees import lyndon_tree
from .words import is_lyndon, lyndon_words, word, word_str

CACHE_FILE = "tables.tsv"


def _parse_word(s: str):
    w = word(s)
    if not is_lyndon(w):
        raise SystemExit(f"error: {s!r} is not a Lyndon word")
    return w


def _cache_dir(args) -> Path | None:
    d = args.cache_dir or os.environ.get("MZV_CACHE_DIR")
    return Path(d) if d else None


def _tables_with_cache(w, cache_dir: Path | None):
    """Coefficient tables for w, going through the on-disk memo if set."""
    if cache_dir is not None:
        path = cache_dir / CACHE_FILE
        if path.exists():
            max_weight, rows = load_tables(path.read_text())
            if max_weight >= len(w):
                out: dict[str, dict] = {}
                for (kind, w0, u, v), val in rows.items():
                    if w0 == w:
                        out.setdefault(kind, {})[(u, v)] = val
                return {k: out.get(k, {}) for k in ("alpha", "beta", "a", "b", "ap", "bp")}
        text = dump_tables(len(w))
        cache_dir.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return {k: dict(t.entries) for k, t in tables_for(w).items()}


def cmd_lyndon(args) -> int:
    for w in lyndon_words(args.n):
        print(word_str(w))
    return 0


def cmd_tree(args) -> int:
    print(repr(lyndon_tree(_parse_word(args.word))))
    return 0


def cmd_dual(args) -> int:
    s = dual_tree(_parse_word(args.word))
    for t, c in s:
        print(f"{c}\t{t!r}")
    return 0


def cmd_dcy(args) -> int:
    w = _parse_word(args.word)
    if len(w) < 2:
        print("0")
        return 0
    tables = _tables_with_cache(w, _cache_dir(args))
    for kind in ("alpha", "beta"):
        for (u, v), val in sorted(tables[kind].items()):
            print(f"{kind}\t{word_str(u)}\t{word_str(v)}\t{val}")
    return 0


def cmd_coeffs(args) -> int:
    w = _parse_word(args.word)
    tables = _tables_with_cache(w, _cache_dir(args))
    kinds = [args.kind] if args.kind else ["a", "b", "ap", "bp"]
    for kind in kinds:
        for (u, v), val in sorted(tables[kind].items()):
            print(f"{kind}\t{word_str(u)}\t{word_str(v)}\t{val}")
    return 0


def cmd_cycle(args) -> int:
    w = _parse_word(args.word)
    c = cycle(w, args.variant)
    if args.json:
        print(cycle_to_json(w, args.variant, c))
    else:
        print(cycle_pretty(c))
    return 0


def cmd_numeric(args) -> int:
    if args.what != "j":
        raise SystemExit(f"error: unknown numeric target {args.what!r}")
    t0 = args.t0
    s = j_series(t0, args.tol)
    print(f"series     J({t0}) = {s:.12f}")
    if t0 < 1.0:
        q = integral_I011(t0, args.tol)
        print(f"quadrature J({t0}) = {q:.12f}")
    return 0


def cmd_verify(args) -> int:
    suites = checks.SUITES if args.suite == "all" else [args.suite]
    failures = []
    t_start = time.time()
    for suite in suites:
        items = checks.suite_checks(suite, args.max_weight, tol=args.tol)
        if args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(lambda c: c.run(), items))
        else:
            results = [c.run() for c in items]
        for check, (ok, detail) in zip(items, results):
            status = "PASS" if ok else "FAIL"
            print(f"{status}  [{suite}] {check.name}")
            if not ok:
                failures.append({"suite": suite, "check": check.name, "detail": detail})
    print(f"({time.time() - t_start:.1f}s)")
    for f in failures:
        print(json.dumps(f), file=sys.stderr)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mzvcycles",
        description="Lyndon-word tree sums and parametrized algebraic cycles",
    )
    p.add_argument("--cache-dir", help="coefficient table cache (env MZV_CACHE_DIR)")
    p.add_argument("--jobs", type=int, default=1, help="parallel verification workers")
    p.add_argument("--tol", type=float, default=1e-9, help="numeric tolerance")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("lyndon", help="list Lyndon words up to a length")
    q.add_argument("n", type=int)
    q.set_defaults(func=cmd_lyndon)

    q = sub.add_parser("tree", help="print the canonical bracketing tree")
    q.add_argument("word")
    q.set_defaults(func=cmd_tree)

    q = sub.add_parser("dual", help="print the dual tree sum")
    q.add_argument("word")
    q.set_defaults(func=cmd_dual)

    q = sub.add_parser("dcy", help="print the differential decomposition tables")
    q.add_argument("word")
    q.set_defaults(func=cmd_dcy)

    q = sub.add_parser("coeffs", help="print derived coefficient tables")
    q.add_argument("word")
    q.add_argument("--kind", choices=["a", "b", "ap", "bp"])
    q.set_defaults(func=cmd_coeffs)

    q = sub.add_parser("cycle", help="emit a parametrized cycle")
    q.add_argument("word")
    q.add_argument("--variant", choices=["plain", "one"], default="plain")
    fmt = q.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--pretty", action="store_true")
    q.set_defaults(func=cmd_cycle)

    q = sub.add_parser("verify", help="run the invariant suites")
    q.add_argument("--max-weight", type=int, default=6)
    q.add_argument(
        "--suite",
        choices=checks.SUITES + ["all"],
        default="all",
    )
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("numeric", help="evaluate the weight-3 integral")
    q.add_argument("what", choices=["j"])
    q.add_argument("--t0", type=float, required=True)
    q.set_defaults(func=cmd_numeric)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
