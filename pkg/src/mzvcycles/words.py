"""Lyndon words over the two-letter alphabet {0, 1}.

A word is stored as a tuple of ints, each 0 or 1.  Python's tuple
comparison is exactly the lexicographic order with the convention that a
proper prefix is smaller than its extensions, so words double as their
own sort keys.  Every other module indexes its data by these words.
"""

from __future__ import annotations

from functools import lru_cache

Word = tuple[int, ...]


def word(s: str | Word) -> Word:
    """Coerce a string like "0011" (or an int tuple) to a Word."""
    if isinstance(s, tuple):
        w = s
    else:
        w = tuple(int(c) for c in s)
    if any(c not in (0, 1) for c in w):
        raise ValueError(f"not a binary word: {s!r}")
    return w


def word_str(w: Word) -> str:
    return "".join(str(c) for c in w)


def is_lyndon(w: Word) -> bool:
    """True iff w is nonempty and smaller than all its proper right factors."""
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(max_len: int) -> list[Word]:
    """All Lyndon words of length <= max_len, in lexicographic order.

    Duval's algorithm: each word is obtained from its predecessor by
    periodic extension to max_len followed by incrementing the last
    non-maximal letter.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    out: list[Word] = []
    w = [0]
    while w:
        out.append(tuple(w))
        # extend periodically, then strip trailing 1s and bump
        w = [w[i % len(w)] for i in range(max_len)]
        while w and w[-1] == 1:
            w.pop()
        if w:
            w[-1] += 1
    return out


def lyndon_words_of_length(n: int) -> list[Word]:
    return [w for w in lyndon_words(n) if len(w) == n]


@lru_cache(maxsize=None)
def standard_factorization(w: Word) -> tuple[Word, Word]:
    """Split w = u·v with v the smallest nontrivial proper right factor.

    For Lyndon w both parts are again Lyndon.
    """
    if len(w) < 2:
        raise ValueError("standard factorization needs length >= 2")
    i = min(range(1, len(w)), key=lambda i: w[i:])
    return w[:i], w[i:]
