"""Exact integer/rational linear algebra substrate.

Scalars are Python ints and fractions.Fraction (both exact and unbounded);
vectors are tuples of scalars and matrices are row-major tuples of row
tuples.  No floating point is used anywhere.
"""

from fractions import Fraction
from math import gcd

from .errors import DegenerateInputError, DimensionError, RankError

__all__ = [
    "det", "adjugate", "make_primitive", "lll_reduce", "lll_transform",
    "charpoly", "rref", "integer_kernel", "mat_mul", "mat_vec", "identity",
]


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_vec(rows, v):
    if len(rows[0]) != len(v):
        raise DimensionError("matrix/vector size mismatch")
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in rows)


def mat_mul(a, b):
    if len(a[0]) != len(b):
        raise DimensionError("matrix size mismatch in product")
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def transpose(rows):
    return tuple(zip(*rows))


def _check_square(rows):
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise DimensionError("square matrix required")
    return n


def det(rows):
    """Exact determinant by fraction-free Bareiss elimination.

    Works for integer entries (stays integral throughout) and for Fraction
    entries.  See Cohen, A Course in Computational Algebraic Number Theory,
    for the one-step fraction-free scheme.  Dimensions up to 4 take a
    direct cofactor shortcut.
    """
    n = _check_square(rows)
    if n <= 4:
        return _det_small(rows, n)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                if isinstance(num, int):
                    m[i][j] = num // prev
                else:
                    m[i][j] = num / prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _det_small(m, n):
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    # 4x4 by expansion in shared 2x2 minors of the bottom two rows
    (a, b, c, d), (e, f, g, h), (i, j, k, l), (p, q, r, s) = m
    m23 = k * s - l * r
    m13 = j * s - l * q
    m12 = j * r - k * q
    m03 = i * s - l * p
    m02 = i * r - k * p
    m01 = i * q - j * p
    return (a * (f * m23 - g * m13 + h * m12)
            - b * (e * m23 - g * m03 + h * m02)
            + c * (e * m13 - f * m03 + h * m01)
            - d * (e * m12 - f * m02 + g * m01))


def _minor(rows, i, j):
    return tuple(r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i)


def _adj3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return ((e * i - f * h, c * h - b * i, b * f - c * e),
            (f * g - d * i, a * i - c * g, c * d - a * f),
            (d * h - e * g, b * g - a * h, a * e - b * d))


def _adj4(m):
    # cofactors from shared 2x2 minors of the top and bottom row pairs
    (a, b, c, d), (e, f, g, h), (i, j, k, l), (p, q, r, s) = m
    t01 = a * f - b * e
    t02 = a * g - c * e
    t03 = a * h - d * e
    t12 = b * g - c * f
    t13 = b * h - d * f
    t23 = c * h - d * g
    b01 = i * q - j * p
    b02 = i * r - k * p
    b03 = i * s - l * p
    b12 = j * r - k * q
    b13 = j * s - l * q
    b23 = k * s - l * r
    return (
        (f * b23 - g * b13 + h * b12,
         -(b * b23 - c * b13 + d * b12),
         q * t23 - r * t13 + s * t12,
         -(j * t23 - k * t13 + l * t12)),
        (-(e * b23 - g * b03 + h * b02),
         a * b23 - c * b03 + d * b02,
         -(p * t23 - r * t03 + s * t02),
         i * t23 - k * t03 + l * t02),
        (e * b13 - f * b03 + h * b01,
         -(a * b13 - b * b03 + d * b01),
         p * t13 - q * t03 + s * t01,
         -(i * t13 - j * t03 + l * t01)),
        (-(e * b12 - f * b02 + g * b01),
         a * b12 - b * b02 + c * b01,
         -(p * t12 - q * t02 + r * t01),
         i * t12 - j * t02 + k * t01),
    )


def adjugate(rows):
    """Adjugate matrix: adj(M)[i][j] = (-1)^(i+j) * minor_{j,i}."""
    n = _check_square(rows)
    if n == 1:
        return ((1,),)
    if n == 2:
        return ((rows[1][1], -rows[0][1]), (-rows[1][0], rows[0][0]))
    if n == 3:
        return _adj3(rows)
    if n == 4:
        return _adj4(rows)
    return tuple(tuple((-1) ** (i + j) * det(_minor(rows, j, i))
                       for j in range(n)) for i in range(n))


def make_primitive(v):
    """Scale a nonzero rational vector to its primitive integer form.

    Returns (w, orientation) with w integral, gcd of entries 1, first
    nonzero entry positive, and v = q*w where orientation = sign(q).
    """
    if len(v) == 0 or all(x == 0 for x in v):
        raise DegenerateInputError("zero vector has no primitive form")
    denom = 1
    for x in v:
        if isinstance(x, Fraction):
            denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    w = [x // g for x in ints]
    lead = next(x for x in w if x != 0)
    orientation = 1
    if lead < 0:
        w = [-x for x in w]
        orientation = -1
    return tuple(w), orientation


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def _lll_columns(cols, delta):
    """Exact LLL on a list of integer column vectors, with transform.

    Classical size reduction + Lovasz condition loop over exact rational
    Gram-Schmidt data (Cohen, Algorithm 2.6.3).  Returns (reduced columns,
    U columns) where reduced[j] = sum_i U[j][i] * original_i.
    """
    if not (Fraction(1, 4) < delta <= 1):
        raise ValueError("delta must lie in (1/4, 1]")
    k = len(cols)
    b = [list(c) for c in cols]
    u = [[1 if i == j else 0 for i in range(k)] for j in range(k)]

    def gram_schmidt():
        star = []
        mu = [[Fraction(0)] * k for _ in range(k)]
        norms = []
        for i in range(k):
            w = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = _dot(b[i], star[j]) / norms[j]
                w = [wx - mu[i][j] * sx for wx, sx in zip(w, star[j])]
            star.append(w)
            norms.append(_dot(w, w))
            if norms[i] == 0:
                raise RankError("columns are linearly dependent")
        return star, mu, norms

    star, mu, norms = gram_schmidt()
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            if abs(mu[i][j]) > Fraction(1, 2):
                r = round(mu[i][j])
                b[i] = [x - r * y for x, y in zip(b[i], b[j])]
                u[i] = [x - r * y for x, y in zip(u[i], u[j])]
                star, mu, norms = gram_schmidt()
        if norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            u[i], u[i - 1] = u[i - 1], u[i]
            star, mu, norms = gram_schmidt()
            i = max(i - 1, 1)
    return [tuple(c) for c in b], [tuple(c) for c in u]


def lll_transform(cols, delta=Fraction(3, 4)):
    """LLL on integer columns; returns (reduced columns, transform columns)."""
    return _lll_columns(list(cols), Fraction(delta))


def lll_reduce(rows, delta=Fraction(3, 4)):
    """LLL-reduce the columns of an integer matrix.

    Input and output are row-major n x k matrices whose k columns span the
    same lattice; the output satisfies the Lovasz condition for delta.
    Deterministic for fixed input and delta.
    """
    n = len(rows)
    if n == 0 or any(len(r) != len(rows[0]) for r in rows):
        raise DimensionError("rectangular matrix required")
    if len(rows[0]) > n:
        raise RankError("more columns than rows cannot be independent")
    cols = [tuple(r[j] for r in rows) for j in range(len(rows[0]))]
    red, _ = _lll_columns(cols, Fraction(delta))
    return tuple(tuple(red[j][i] for j in range(len(red))) for i in range(n))


def charpoly(rows):
    """Monic characteristic polynomial det(xI - M), leading coefficient first.

    Division-free Samuelson-Berkowitz recursion, exact over ints and over
    Fractions.
    """
    n = _check_square(rows)
    return tuple(_berkowitz(tuple(tuple(r) for r in rows)))


def _berkowitz(m):
    n = len(m)
    if n == 1:
        return [1, -m[0][0]]
    a = m[0][0]
    row = m[0][1:]
    col = [m[i][0] for i in range(1, n)]
    sub = [r[1:] for r in m[1:]]
    toep = [1, -a]
    cur = col
    for _ in range(n - 1):
        toep.append(-sum(r * c for r, c in zip(row, cur)))
        cur = [sum(sub[i][j] * cur[j] for j in range(n - 1))
               for i in range(n - 1)]
    subpoly = _berkowitz(sub)
    out = []
    for i in range(n + 1):
        s = 0
        for j in range(len(subpoly)):
            d = i - j
            if 0 <= d < len(toep):
                s += toep[d] * subpoly[j]
        out.append(s)
    return out


def rref(rows):
    """Reduced row echelon form over Q.  Returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in m], pivots


def integer_kernel(rows):
    """Z-basis of the saturated integer kernel {x in Z^n : A x = 0}.

    Column reduction of A with a unimodular transform: the transform columns
    matching the zeroed-out columns of A form the basis.
    """
    nrows = len(rows)
    ncols = len(rows[0])
    a = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_op(j1, j2, q):
        for i in range(nrows):
            a[i][j2] -= q * a[i][j1]
        for i in range(ncols):
            u[i][j2] -= q * u[i][j1]

    def col_swap(j1, j2):
        for i in range(nrows):
            a[i][j1], a[i][j2] = a[i][j2], a[i][j1]
        for i in range(ncols):
            u[i][j1], u[i][j2] = u[i][j2], u[i][j1]

    lead = 0
    for i in range(nrows):
        if lead >= ncols:
            break
        # euclidean column reduction clears row i to the right of `lead`;
        # earlier pivot rows stay zero there, so they are unaffected.
        while True:
            nz = [j for j in range(lead, ncols) if a[i][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(a[i][j]))
            if jmin != lead:
                col_swap(lead, jmin)
            done = True
            for j in range(lead + 1, ncols):
                if a[i][j] != 0:
                    col_op(lead, j, a[i][j] // a[i][lead])
                    if a[i][j] != 0:
                        done = False
            if done:
                break
        if lead < ncols and a[i][lead] != 0:
            lead += 1
    kernel = []
    for j in range(ncols):
        if all(a[i][j] == 0 for i in range(nrows)):
            kernel.append(tuple(u[i][j] for i in range(ncols)))
    return kernel
