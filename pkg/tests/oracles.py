"""Independent oracles used by the test suite.

Everything here is deliberately naive (cofactor expansions, exhaustive
enumeration, brute-force point counts, textbook formulas) and independent
of the library code paths it checks.
"""

from fractions import Fraction
from itertools import product
from math import gcd


def det_cofactor(rows):
    """Determinant by first-row cofactor expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_cofactor(minor)
    return total


def charpoly_cofactor(rows):
    """Coefficients of det(xI - M), leading first, via cofactor expansion
    over the polynomial ring."""

    def padd(p, q):
        n = max(len(p), len(q))
        p = [0] * (n - len(p)) + list(p)
        q = [0] * (n - len(q)) + list(q)
        return [a + b for a, b in zip(p, q)]

    def pmul(p, q):
        out = [0] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] += a * b
        return out

    def pdet(m):
        n = len(m)
        if n == 1:
            return m[0][0]
        total = [0]
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for r in m[1:]]
            term = pmul(m[0][j], pdet(minor))
            if j % 2:
                term = [-c for c in term]
            total = padd(total, term)
        return total

    n = len(rows)
    m = [[[Fraction(1), -Fraction(rows[i][j])] if i == j
          else [-Fraction(rows[i][j])] for j in range(n)] for i in range(n)]
    p = pdet(m)
    return tuple(p)


def shortest_vector_sup(cols, bound):
    """Exhaustive shortest nonzero vector (sup norm) of the lattice spanned
    by integer columns, searching coefficient boxes up to `bound`."""
    k = len(cols)
    n = len(cols[0])
    best = None
    for coeffs in product(range(-bound, bound + 1), repeat=k):
        if all(c == 0 for c in coeffs):
            continue
        v = tuple(sum(c * col[i] for c, col in zip(coeffs, cols))
                  for i in range(n))
        norm = max(abs(x) for x in v)
        if norm and (best is None or norm < best):
            best = norm
    return best


def shortest_vector_l2(cols, bound):
    """Exhaustive minimal squared euclidean length, same search box."""
    k = len(cols)
    n = len(cols[0])
    best = None
    for coeffs in product(range(-bound, bound + 1), repeat=k):
        if all(c == 0 for c in coeffs):
            continue
        v = tuple(sum(c * col[i] for c, col in zip(coeffs, cols))
                  for i in range(n))
        norm = sum(x * x for x in v)
        if norm and (best is None or norm < best):
            best = norm
    return best


def continued_fraction_chain(num, den):
    """Unimodular column pairs decomposing the geodesic {oo, num/den}.

    Convergents p_k/q_k of num/den, seeded with p_{-1}/q_{-1} = 1/0; the
    chain is the sum of symbols [(p_{k-1}, q_{k-1}), (p_k, q_k)].
    For den = 0 (the cusp oo itself) the chain is empty.
    """
    if den == 0:
        return []
    if den < 0:
        num, den = -num, -den
    pairs = []
    p_prev, q_prev = 1, 0
    a, b = num, den
    # convergents via the euclidean algorithm, starting from floor(num/den)
    p, q = None, None
    while b != 0:
        k = a // b
        a, b = b, a - k * b
        if p is None:
            p, q = k, 1
        else:
            p, q, p_prev, q_prev = k * p + p_prev, k * q + q_prev, p, q
        pairs.append(((p_prev, q_prev), (p, q)))
    return pairs


def manin_cf_decomposition(col1, col2):
    """{alpha, beta} as a list of (sign, unimodular column pair).

    alpha, beta are the cusps of the two primitive columns; the symbol is
    {alpha, oo} + {oo, beta}, each half decomposed by convergents.
    """
    out = [(1, pair) for pair in continued_fraction_chain(col2[0], col2[1])]
    out += [(-1, pair) for pair in continued_fraction_chain(col1[0], col1[1])]
    return out


def gamma0_index(n):
    """Index of Gamma_0(N) in SL_2(Z): N * prod_{p | N} (1 + 1/p)."""
    idx = n
    for p in _prime_divisors(n):
        idx = idx // p * (p + 1)
    return idx


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def nu2(n):
    if n % 4 == 0:
        return 0
    out = 1
    for p in _prime_divisors(n):
        if p == 2:
            continue
        if p % 4 == 1:
            out *= 2
        else:
            return 0
    return out


def nu3(n):
    if n % 9 == 0:
        return 0
    out = 1
    for p in _prime_divisors(n):
        if p == 3:
            continue
        if p % 3 == 1:
            out *= 2
        else:
            return 0
    return out


def cusp_count(n):
    return sum(_euler_phi(gcd(d, n // d)) for d in _divisors(n))


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _euler_phi(n):
    out = n
    for p in _prime_divisors(n):
        out = out // p * (p - 1)
    return out


def genus_x0(n):
    """Genus of X_0(N) from the classical index/elliptic point/cusp formula."""
    mu = gamma0_index(n)
    g12 = mu - 3 * nu2(n) - 4 * nu3(n) - 6 * cusp_count(n) + 12
    assert g12 % 12 == 0
    return g12 // 12


# minimal Weierstrass models (a1, a2, a3, a4, a6) of the rank-0 optimal
# curves of conductor 11, 14, 15
ELLIPTIC_CURVES = {
    11: (0, -1, 1, -10, -20),
    14: (1, 0, 1, 4, -6),
    15: (1, 1, 1, -10, -10),
}


def ec_count_points(coeffs, p):
    """#E(F_p) for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 by brute
    force over all affine pairs, plus the point at infinity."""
    a1, a2, a3, a4, a6 = (c % p for c in coeffs)
    count = 1
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y) % p == rhs:
                count += 1
    return count


def ec_ap(conductor, p):
    """Trace of Frobenius a_p = p + 1 - #E(F_p) for the rank-0 curve of the
    given conductor (good reduction required)."""
    assert conductor % p != 0
    return p + 1 - ec_count_points(ELLIPTIC_CURVES[conductor], p)
