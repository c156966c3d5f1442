"""Sparse multivariate polynomials over Z and reduced rational functions.

Everything the cycle parametrizations need: ring arithmetic, exact gcd
reduction (primitive pseudo-remainder sequences), degree-1 "Moebius"
decomposition in a chosen variable, and projective substitution of one
variable by a ratio of polynomials.  Expressions stay tiny, so clarity
beats asymptotics throughout.

A monomial is a sorted tuple of (variable, exponent); a Poly maps
monomials to nonzero ints.  A Frac is a reduced pair num/den with the
denominator's leading coefficient positive.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

Mono = tuple


class Poly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Mono, int] = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({(): int(c)} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    # -- basics --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(m == () for m in self.terms)

    def const_value(self) -> int:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.terms.get((), 0)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return poly_str(self)

    # -- ring operations ------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[Mono, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(out)

    def scaled(self, c: int) -> "Poly":
        return Poly({m: c * v for m, v in self.terms.items()}) if c else Poly()

    # -- structure in one variable --------------------------------------
    def degree(self, v: str) -> int:
        d = 0
        for m in self.terms:
            for name, e in m:
                if name == v:
                    d = max(d, e)
        return d

    def univar(self, v: str) -> dict[int, "Poly"]:
        """Coefficients as polynomials without v, keyed by the power of v."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for name, k in m:
                if name == v:
                    e = k
                else:
                    rest.append((name, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly(d) for e, d in out.items()}

    def leading_sign(self) -> int:
        if not self.terms:
            return 0
        m = max(self.terms)
        return 1 if self.terms[m] > 0 else -1


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


ZERO = Poly()
ONE = Poly.const(1)


def _from_univar(coeffs: dict[int, Poly], v: str) -> Poly:
    out = Poly()
    for e, p in coeffs.items():
        if e:
            out = out + p * Poly({((v, e),): 1})
        else:
            out = out + p
    return out


def content(p: Poly) -> int:
    c = 0
    for v in p.terms.values():
        c = igcd(c, abs(v))
    return c


def div_exact(a: Poly, b: Poly) -> Poly:
    """Exact division a / b; raises if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError
    if a.is_zero():
        return ZERO
    if b.is_const():
        c = b.const_value()
        if any(v % c for v in a.terms.values()):
            raise ArithmeticError("inexact division")
        return Poly({m: v // c for m, v in a.terms.items()})
    v = sorted(b.variables())[0]
    bu = b.univar(v)
    db = max(bu)
    lead_b = bu[db]
    out: dict[int, Poly] = {}
    rem = a
    while not rem.is_zero():
        ru = rem.univar(v)
        dr = max(ru)
        if dr < db:
            raise ArithmeticError("inexact division")
        q = div_exact(ru[dr], lead_b)
        out[dr - db] = out.get(dr - db, ZERO) + q
        rem = rem - _from_univar({dr - db: q}, v) * b
    return _from_univar(out, v)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Gcd via primitive pseudo-remainder sequences; positive leading sign."""
    if a.is_zero():
        g = b
    elif b.is_zero():
        g = a
    else:
        g = _gcd_rec(a, b)
    if g.leading_sign() < 0:
        g = -g
    return g


def _poly_content_in(p: Poly, v: str) -> Poly:
    cont = ZERO
    for coeff in p.univar(v).values():
        cont = _gcd_rec(cont, coeff) if not cont.is_zero() else coeff
    return cont


def _pseudo_rem(a: Poly, b: Poly, v: str) -> Poly:
    """Pseudo-remainder of a by b in v (scales a by powers of b's lead)."""
    db = b.degree(v)
    lead_b = b.univar(v)[db]
    r = a
    while not r.is_zero():
        dr = r.degree(v)
        if dr < db:
            break
        lead_r = r.univar(v)[dr]
        r = r * lead_b - b * _from_univar({dr - db: lead_r}, v)
    return r


def _gcd_rec(a: Poly, b: Poly) -> Poly:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_const() or b.is_const():
        return Poly.const(igcd(content(a), content(b)))
    v = sorted(a.variables() | b.variables())[0]
    if v not in a.variables():
        return _gcd_rec(a, _poly_content_in(b, v))
    if v not in b.variables():
        return _gcd_rec(_poly_content_in(a, v), b)
    ca, cb = _poly_content_in(a, v), _poly_content_in(b, v)
    pa, pb = div_exact(a, ca), div_exact(b, cb)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    while not pb.is_zero():
        if pb.degree(v) == 0:
            return _gcd_rec(ca, cb)  # primitive parts are coprime
        r = _pseudo_rem(pa, pb, v)
        if not r.is_zero():
            r = div_exact(r, _poly_content_in(r, v))
        pa, pb = pb, r
    return _gcd_rec(ca, cb) * pa


class Frac:
    """Reduced ratio of two polynomials with canonical sign."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce and not num.is_zero():
            g = poly_gcd(num, den)
            if not (g.is_const() and g.const_value() == 1):
                num = div_exact(num, g)
                den = div_exact(den, g)
        if num.is_zero():
            den = ONE
        if den.leading_sign() < 0:
            num, den = -num, -den
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, q) -> "Frac":
        q = Fraction(q)
        return cls(Poly.const(q.numerator), Poly.const(q.denominator), reduce=False)

    @classmethod
    def var(cls, name: str) -> "Frac":
        return cls(Poly.var(name), ONE, reduce=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return Fraction(self.num.const_value(), self.den.const_value())

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Frac)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other: "Frac") -> "Frac":
        return Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Frac":
        return Frac(-self.num, self.den, reduce=False)

    def __sub__(self, other: "Frac") -> "Frac":
        return self + (-other)

    def __mul__(self, other: "Frac") -> "Frac":
        return Frac(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "Frac") -> "Frac":
        if other.is_zero():
            raise ZeroDivisionError
        return Frac(self.num * other.den, self.den * other.num)

    def __repr__(self):
        return frac_str(self)

    def mobius(self, v: str):
        """Write self as (A v + B) / (C v + D); raises if degree > 1 in v."""
        if self.num.degree(v) > 1 or self.den.degree(v) > 1:
            raise ValueError(f"not Moebius in {v}: {self!r}")
        nu = self.num.univar(v)
        de = self.den.univar(v)
        return (
            nu.get(1, ZERO),
            nu.get(0, ZERO),
            de.get(1, ZERO),
            de.get(0, ZERO),
        )

    def subst(self, v: str, p: Poly, q: Poly):
        """Projective substitution v := p/q  (q = 0 encodes infinity).

        Returns a Frac, or the string "inf" when the result is the
        constant infinity.
        """
        if v not in self.variables():
            return self
        a, b, c, d = self.mobius(v)
        num = a * p + b * q
        den = c * p + d * q
        if den.is_zero():
            if num.is_zero():
                raise ArithmeticError("indeterminate substitution")
            return "inf"
        return Frac(num, den)

    def rename(self, mapping: dict) -> "Frac":
        return Frac(_poly_rename(self.num, mapping), _poly_rename(self.den, mapping), reduce=False)


def _poly_rename(p: Poly, mapping: dict) -> Poly:
    out: dict[Mono, int] = {}
    for m, c in p.terms.items():
        m2 = tuple(sorted((mapping.get(v, v), e) for v, e in m))
        out[m2] = out.get(m2, 0) + c
    return Poly(out)


# ---------------------------------------------------------------------------
# printing and parsing (grammar: ints, t, x<k>, + - * /, parentheses)
# ---------------------------------------------------------------------------


def _mono_str(m: Mono, c: int) -> str:
    parts = []
    if abs(c) != 1 or not m:
        parts.append(str(abs(c)))
    for v, e in m:
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def poly_str(p: Poly) -> str:
    if p.is_zero():
        return "0"
    terms = sorted(p.terms.items(), reverse=True)
    if terms[0][1] < 0:
        # lead with a positive term when one exists
        for i, (m, c) in enumerate(terms):
            if c > 0:
                terms.insert(0, terms.pop(i))
                break
    out = ""
    for m, c in terms:
        s = _mono_str(m, c)
        if not out:
            out = ("-" if c < 0 else "") + s
        else:
            out += (" - " if c < 0 else " + ") + s
    return out


def frac_str(f: Frac) -> str:
    num = poly_str(f.num)
    if f.den == ONE:
        return num
    den = poly_str(f.den)
    ns = f"({num})" if (" " in num or "*" in num) else num
    ds = f"({den})" if (" " in den or "*" in den) else den
    return f"{ns}/{ds}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Frac:
        out = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                out = out + self.term()
            elif ch == "-":
                self.pos += 1
                out = out - self.term()
            else:
                return out

    def term(self) -> Frac:
        out = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                out = out * self.factor()
            elif ch == "/":
                self.pos += 1
                out = out / self.factor()
            else:
                return out

    def factor(self) -> Frac:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.factor()
        if ch == "(":
            self.pos += 1
            out = self.expr()
            if self.peek() != ")":
                raise ValueError("unbalanced parentheses")
            self.pos += 1
            return self._power(out)
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return self._power(Frac.const(int(self.text[start : self.pos])))
        if ch.isalpha():
            start = self.pos
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isalnum():
                self.pos += 1
            return self._power(Frac.var(self.text[start : self.pos]))
        raise ValueError(f"unexpected character {ch!r} at {self.pos}")

    def _power(self, base: Frac) -> Frac:
        if self.peek() == "^":
            self.pos += 1
            ch = self.peek()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            e = int(self.text[start : self.pos])
            out = Frac.const(1)
            for _ in range(e):
                out = out * base
            return out
        return base


def parse_expr(text: str) -> Frac:
    p = _Parser(text)
    out = p.expr()
    if p.peek():
        raise ValueError(f"trailing input at {p.pos}: {text[p.pos:]!r}")
    return out
