"""Numerical side: one-variable multiple polylogarithms and the weight-3
integral identity.

The series Li_{k_1,...,k_m}(z) = sum over n_1 > ... > n_m >= 1 of
z^{n_1} / (n_1^{k_1} ... n_m^{k_m}) is summed with explicit tail bounds.
The combination J(t0) = Li_{1,2}(t0) - Li_1(t0) Li_2(1) equals the
normalized iterated integral attached to the weight-3 cycle; both sides
stay bounded as t0 -> 1 although each summand diverges, and the limit is
-2 zeta(2,1) (the double series sum 1/(n^2 m) over n > m >= 1).
"""

from __future__ import annotations

import math

from scipy.integrate import quad

EULER_GAMMA = 0.5772156649015328606

# ---------------------------------------------------------------------------
# series evaluation
# ---------------------------------------------------------------------------


def _tail_zk(r: int, k: int, n: float) -> float:
    """Upper bound for the integral of (1+ln x)^r x^(-k) over [n, inf)."""
    if k <= 1:
        raise ValueError("needs k >= 2")
    out = (1 + math.log(n)) ** r * n ** (1 - k) / (k - 1)
    if r > 0:
        out += r / (k - 1) * _tail_zk(r - 1, k, n)
    return out


def _zeta_rough(k: int) -> float:
    """Crude upper bound for zeta(k), enough for tail estimates."""
    return 1.0 + 2.0 ** (1 - k) * k  # zeta(k) <= 1 + k/2^(k-1) for k >= 2


def li_series(index, z: float, tol: float = 1e-10) -> float:
    """Truncated nested sum with a tail estimate below tol.

    Requires 0 <= z < 1, or z = 1 with leading exponent >= 2 (the
    boundary-convergent case); z = 1 with leading exponent 1 diverges.
    """
    index = tuple(int(k) for k in index)
    if not index or any(k < 1 for k in index):
        raise ValueError(f"bad index {index!r}")
    if not 0.0 <= z <= 1.0:
        raise ValueError("z must lie in [0, 1]")
    if z == 1.0 and index[0] == 1:
        raise ValueError("divergent series: z = 1 with leading index 1")
    if z == 0.0:
        return 0.0
    k1 = index[0]
    rest = index[1:]
    r = sum(1 for k in rest if k == 1)
    kbound = 1.0
    for k in rest:
        if k >= 2:
            kbound *= _zeta_rough(k)

    def tail_bound(n: int) -> float:
        if z == 1.0:
            return kbound * _tail_zk(r, k1, n)
        # geometric regime: (1+ln x)^r <= (1+ln n)^r e^(r (x-n)/n)
        ze = z * math.exp(r / n)
        if ze >= 1.0:
            return math.inf
        grow = kbound * (1 + math.log(n)) ** r
        return grow * z ** (n + 1) * math.exp(r / n) / (1.0 - ze) / n ** k1

    n = 64
    while tail_bound(n) > tol and n < 50_000_000:
        n *= 2
    if tail_bound(n) > tol:
        raise ArithmeticError("series tolerance not reachable")
    # cumulative inner sums c_i(q) = sum over q > n_i > ... of the tail
    # product, built bottom up
    inner = [1.0] * (n + 1)
    for k in reversed(rest):
        acc = 0.0
        new = [0.0] * (n + 1)
        for q in range(1, n + 1):
            new[q] = acc
            acc += inner[q] / q**k
        inner = new
    total = 0.0
    zp = 1.0
    for q in range(1, n + 1):
        zp *= z
        total += zp * inner[q] / q**k1
    return total


def _em_tail(f, fp, fppp, integral, a: float) -> float:
    """Euler-Maclaurin estimate of the sum of f over n > a - 1 ... n >= a."""
    return integral(a) + f(a) / 2.0 - fp(a) / 12.0 + fppp(a) / 720.0


def zeta2(n: int = 100_000) -> float:
    """zeta(2) by direct summation with an Euler-Maclaurin tail."""
    s = sum(1.0 / (q * q) for q in range(1, n + 1))
    a = float(n + 1)
    s += _em_tail(
        lambda x: x**-2.0,
        lambda x: -2.0 * x**-3.0,
        lambda x: -24.0 * x**-5.0,
        lambda x: 1.0 / x,
        a,
    )
    return s


def zeta21(n: int = 100_000) -> float:
    """zeta(2,1) = sum of H_{n-1}/n^2 with an Euler-Maclaurin tail.

    The tail uses H_{q-1} = ln q + gamma - 1/(2q) - 1/(12 q^2) + ..., so
    the remainder splits into zeta-like pieces evaluated by the same
    device.
    """
    s = 0.0
    h = 0.0  # harmonic number of q - 1
    for q in range(1, n + 1):
        s += h / (q * q)
        h += 1.0 / q
    a = float(n + 1)
    g = EULER_GAMMA
    # piece 1: (ln x + gamma)/x^2
    s += _em_tail(
        lambda x: (math.log(x) + g) / x**2,
        lambda x: (1.0 - 2.0 * (math.log(x) + g)) / x**3,
        lambda x: (26.0 - 24.0 * (math.log(x) + g)) / x**5,
        lambda x: (math.log(x) + 1.0 + g) / x,
        a,
    )
    # piece 2: -(1/2) x^-3   (from -1/(2q) in H_{q-1})
    s += -0.5 * _em_tail(
        lambda x: x**-3.0,
        lambda x: -3.0 * x**-4.0,
        lambda x: -60.0 * x**-6.0,
        lambda x: 0.5 / x**2,
        a,
    )
    # piece 3: -(1/12) x^-4
    s += -(1.0 / 12.0) * _em_tail(
        lambda x: x**-4.0,
        lambda x: -4.0 * x**-5.0,
        lambda x: -120.0 * x**-7.0,
        lambda x: (1.0 / 3.0) / x**3,
        a,
    )
    return s


def li1(z: float) -> float:
    """-log(1 - z), the leading-index-1 closed form."""
    if not 0.0 <= z < 1.0:
        raise ValueError("needs 0 <= z < 1")
    return -math.log1p(-z)


def li12(z: float, tol: float = 1e-12) -> float:
    """Li_{1,2}(z) = sum_n z^n/n * sum_{m<n} 1/m^2 with explicit tail."""
    if not 0.0 <= z < 1.0:
        raise ValueError("needs 0 <= z < 1")
    if z == 0.0:
        return 0.0
    z2 = zeta2()
    total = 0.0
    s2 = 0.0  # sum_{m<n} 1/m^2
    zp = 1.0
    n = 0
    while True:
        n += 1
        if n > 1:
            s2 += 1.0 / ((n - 1) * (n - 1))
        zp *= z
        total += zp * s2 / n
        # tail <= zeta(2) * z^(n+1) / ((n+1)(1-z))
        if z2 * zp * z / ((n + 1) * (1.0 - z)) < tol:
            return total
        if n > 100_000_000:
            raise ArithmeticError("series tolerance not reachable")


def j_series(t0: float, tol: float = 1e-12) -> float:
    """J(t0) = Li_{1,2}(t0) - Li_1(t0) Li_2(1) via the series route."""
    if t0 == 0.0:
        return 0.0
    return li12(t0, tol) - li1(t0) * zeta2()


# ---------------------------------------------------------------------------
# quadrature evaluation of the two simplex integrals
# ---------------------------------------------------------------------------


def integral_I011(t0: float, tol: float = 1e-9) -> float:
    """The weight-3 iterated integral (without the (2 pi i)^-3 prefactor).

    Evaluates the 3-simplex integral of
        t0 ds3/(1 - t0 s3) ^ ds2/s2 ^ t0 ds1/(1 - t0 s1)
    and the product of the 1-simplex and 2-simplex factors by nested
    adaptive quadrature, returning their signed combination, which
    equals Li_{1,2}(t0) - Li_1(t0) Li_2(1).
    """
    if not 0.0 <= t0 < 1.0:
        raise ValueError("needs 0 <= t0 < 1")
    if t0 == 0.0:
        return 0.0
    eps = tol / 10.0

    def h(s2: float) -> float:
        # inner edge integral: int_0^{s2} t0 ds1/(1 - t0 s1)
        return -math.log1p(-t0 * s2)

    def g(s3: float) -> float:
        val, _ = quad(lambda s2: h(s2) / s2, 0.0, s3, epsabs=eps, epsrel=eps, limit=200)
        return val

    simplex3, _ = quad(
        lambda s3: t0 / (1.0 - t0 * s3) * g(s3),
        0.0,
        1.0,
        epsabs=eps,
        epsrel=eps,
        limit=200,
    )
    one_simplex, _ = quad(
        lambda s: t0 / (1.0 - t0 * s), 0.0, 1.0, epsabs=eps, epsrel=eps, limit=200
    )
    two_simplex, _ = quad(
        lambda s2: -math.log1p(-s2) / s2, 0.0, 1.0, epsabs=eps, epsrel=eps, limit=200
    )
    return simplex3 - one_simplex * two_simplex


def richardson_limit(values) -> float:
    """Extrapolate f(1 - h_k) for h_k halving to the limit h -> 0.

    ``values`` lists f at consecutive halvings, coarsest first.  The
    error expansion here has shape sum_i h^i (a_i ln^2 h + b_i ln h +
    c_i), and one factor-2^i elimination lowers the log power attached
    to h^i by one, so the ladder applies each factor three times before
    moving to the next power.
    """
    rows = [list(values)]
    j = 0
    while len(rows[-1]) > 1:
        fac = 2.0 ** (1 + j // 3)
        prev = rows[-1]
        rows.append(
            [
                (fac * prev[i + 1] - prev[i]) / (fac - 1.0)
                for i in range(len(prev) - 1)
            ]
        )
        j += 1
    return rows[-1][0]


def j_limit_at_one(k_min: int = 4, k_max: int = 12, tol: float = 1e-12) -> float:
    """Richardson-extrapolated J(1 - 2^-k) for k = k_min..k_max."""
    vals = [j_series(1.0 - 2.0**-k, tol) for k in range(k_min, k_max + 1)]
    return richardson_limit(vals)
