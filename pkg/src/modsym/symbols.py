"""SL_n modular symbols and the recursive reduction to unimodular symbols.

A symbol [m_1,...,m_n] is stored canonically: every column primitive with
positive leading entry (scaling a column by any nonzero rational does not
change the class), columns sorted in strictly increasing lex order with the
permutation parity folded into the sign, and the zero class (det = 0)
represented by the ZERO singleton.

The reduction rewrites a symbol as a sum of unimodular ones by repeatedly
expanding against a reducing point v: a nonzero integer vector for which
every child determinant |det m_i(v)| is strictly below |det m|.  Child
determinants are read off the adjugate pairing, det m_i(v) = (adj(m) v)_i,
which is what all search strategies below exploit.
"""

from math import gcd

try:
    import numpy as np
except ImportError:  # pragma: no cover - numpy is a declared dependency
    np = None

from .errors import (
    DimensionError, InternalSearchError, MathPreconditionError,
)
from .intlinalg import (
    adjugate, det, _det_small, lll_transform, make_primitive, mat_vec,
)

__all__ = [
    "ZERO", "ModularSymbol", "SymbolChain", "ReducingCertificate",
    "ReductionTrace", "Reducer", "normalize", "cocycle_expand",
    "find_reducing_point", "reduce_to_unimodular",
]


class _ZeroSymbol:
    """The zero class of relation 3 (degenerate column span)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __bool__(self):
        return False


ZERO = _ZeroSymbol()


class ModularSymbol:
    """Canonical modular symbol: sorted primitive columns, sign, |det|."""

    __slots__ = ("columns", "sign", "det_abs")

    def __init__(self, columns, sign, det_abs):
        self.columns = columns
        self.sign = sign
        self.det_abs = det_abs

    @property
    def n(self):
        return len(self.columns)

    def matrix(self):
        """Row-major matrix whose columns are the symbol's columns."""
        return tuple(zip(*self.columns))

    def signed_det(self):
        return det(self.matrix())

    def is_unimodular(self):
        return self.det_abs == 1

    def __neg__(self):
        return ModularSymbol(self.columns, -self.sign, self.det_abs)

    def __eq__(self, other):
        return (isinstance(other, ModularSymbol)
                and self.columns == other.columns and self.sign == other.sign)

    def __hash__(self):
        return hash((self.columns, self.sign))

    def __repr__(self):
        s = "" if self.sign == 1 else "-"
        return "%s[%s]" % (s, ", ".join(str(list(c)) for c in self.columns))


def _sort_with_parity(cols):
    cols = list(cols)
    sign = 1
    for i in range(1, len(cols)):
        j = i
        while j > 0 and cols[j - 1] > cols[j]:
            cols[j - 1], cols[j] = cols[j], cols[j - 1]
            sign = -sign
            j -= 1
    return tuple(cols), sign


def normalize(raw):
    """Canonicalize a tuple of n rational column vectors (relations 1-3).

    Returns ZERO when the determinant vanishes; raises on zero columns or
    dimension mismatches.
    """
    n = len(raw)
    if n == 0:
        raise DimensionError("empty symbol")
    cols = []
    for v in raw:
        if len(v) != n:
            raise DimensionError(
                "expected %d vectors of dimension %d" % (n, n))
        w, _ = make_primitive(v)  # orientation is free by relation 1
        cols.append(w)
    sorted_cols, sign = _sort_with_parity(cols)
    d = det(tuple(zip(*sorted_cols)))
    if d == 0:
        return ZERO
    return ModularSymbol(sorted_cols, sign, abs(d))


class SymbolChain:
    """Finite integer combination of canonical modular symbols.

    Keys are sorted column tuples; the symbol's sign is folded into the
    coefficient, and zero coefficients are purged on the fly.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = dict(coeffs) if coeffs else {}

    def add(self, symbol, coeff=1):
        if symbol is ZERO or coeff == 0:
            return self
        key = symbol.columns
        c = self.coeffs.get(key, 0) + coeff * symbol.sign
        if c:
            self.coeffs[key] = c
        else:
            self.coeffs.pop(key, None)
        return self

    def add_chain(self, other, coeff=1):
        for key, c in other.coeffs.items():
            new = self.coeffs.get(key, 0) + coeff * c
            if new:
                self.coeffs[key] = new
            else:
                self.coeffs.pop(key, None)
        return self

    def items(self):
        """Deterministic (ModularSymbol, coefficient) pairs."""
        return [(ModularSymbol(k, 1, abs(det(tuple(zip(*k))))), c)
                for k, c in sorted(self.coeffs.items())]

    def __iter__(self):
        return iter(sorted(self.coeffs.items()))

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, SymbolChain) and self.coeffs == other.coeffs

    def __add__(self, other):
        return SymbolChain(self.coeffs).add_chain(other)

    def __sub__(self, other):
        return SymbolChain(self.coeffs).add_chain(other, -1)

    def scaled(self, c):
        if c == 0:
            return SymbolChain()
        return SymbolChain({k: c * v for k, v in self.coeffs.items()})

    def __repr__(self):
        if not self.coeffs:
            return "SymbolChain(0)"
        parts = ["%+d*[%s]" % (c, ", ".join(str(list(x)) for x in k))
                 for k, c in sorted(self.coeffs.items())]
        return "SymbolChain(%s)" % " ".join(parts)


def _child_columns(cols, i, v):
    """Columns with slot i replaced by v, re-sorted; the determinant is not
    recomputed because all columns stay primitive."""
    replaced = cols[:i] + (v,) + cols[i + 1:]
    return _sort_with_parity(replaced)


def cocycle_expand(m, v):
    """Expand [m] against v: the chain sum_i [m_1,..,v@i,..,m_n].

    This is relation 4 applied to the tuple (v, m_1, ..., m_n) and solved
    for [m]; the in-place replacement absorbs the alternating signs.  Terms
    with det = 0 drop (relation 3).  The returned chain is homologous to [m].
    """
    if not isinstance(m, ModularSymbol):
        raise MathPreconditionError("expected a nonzero canonical symbol")
    v, _ = make_primitive(v)
    if len(v) != m.n:
        raise DimensionError("point dimension does not match symbol")
    w = mat_vec(adjugate(m.matrix()), v)
    chain = SymbolChain()
    for i in range(m.n):
        if w[i] == 0:
            continue
        child_cols, parity = _child_columns(m.columns, i, v)
        chain.add(ModularSymbol(child_cols, parity, abs(w[i])), m.sign)
    return chain


class ReducingCertificate:
    """A verified reducing point: 0 <= |det m_i(v)| < |det m| for all i."""

    __slots__ = ("v", "child_dets", "parent_det", "parent_columns")

    def __init__(self, parent_columns, v, child_dets, parent_det):
        self.parent_columns = parent_columns
        self.v = v
        self.child_dets = tuple(child_dets)
        self.parent_det = parent_det
        self._verify()

    def _verify(self):
        cols = self.parent_columns
        n = len(cols)
        if abs(_det_small(tuple(zip(*cols)), n) if n <= 4 else
               det(tuple(zip(*cols)))) != self.parent_det \
                or self.parent_det <= 1:
            raise MathPreconditionError("certificate parent det mismatch")
        for i in range(n):
            child = tuple(zip(*(cols[:i] + (self.v,) + cols[i + 1:])))
            wi = _det_small(child, n) if n <= 4 else det(child)
            if abs(wi) != self.child_dets[i]:
                raise MathPreconditionError(
                    "certificate child det %d mismatch" % i)
            if not abs(wi) < self.parent_det:
                raise MathPreconditionError(
                    "reducing inequality fails at column %d" % i)

    def __repr__(self):
        return "ReducingCertificate(v=%s, children=%s, parent=%d)" % (
            list(self.v), list(self.child_dets), self.parent_det)


def _ext_gcd(a, b):
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def _ext_gcd_combination(coeffs):
    """Integer vector x with coeffs . x = gcd(coeffs) >= 0."""
    x = [0] * len(coeffs)
    g = 0
    for i, a in enumerate(coeffs):
        if a == 0:
            continue
        if g == 0:
            g = abs(a)
            x[i] = 1 if a > 0 else -1
            continue
        g, s, t = _ext_gcd(g, a)
        for j in range(i):
            x[j] *= s
        x[i] = t
    return x, g


def _row_kernel(row):
    """Integer kernel basis of a single row functional, by column ops."""
    n = len(row)
    r = list(row)
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    while True:
        nz = [j for j in range(n) if r[j] != 0]
        if len(nz) <= 1:
            break
        jm = min(nz, key=lambda j: abs(r[j]))
        for j in nz:
            if j == jm:
                continue
            q = r[j] // r[jm]
            if q:
                r[j] -= q * r[jm]
                for t in range(n):
                    u[t][j] -= q * u[t][jm]
    return [tuple(u[t][j] for t in range(n)) for j in range(n) if r[j] == 0]


def _center_q(a, d):
    """Nearest integer to a/d with exact halves rounded toward zero, so a
    coordinate already at +-d/2 is left alone."""
    if d < 0:
        a, d = -a, -d
    q, r = divmod(a, d)
    if 2 * r > d or (2 * r == d and a < 0):
        q += 1
    return q


_GRID_FRACTIONS = ((1, 2), (1, 3), (2, 3))
_SMALL_CANDIDATES = {}


def _small_candidates(n):
    if n not in _SMALL_CANDIDATES:
        from itertools import product
        out = set()
        for t in product((-1, 0, 1), repeat=n):
            if any(t):
                out.add(_primitive_int(t))
        _SMALL_CANDIDATES[n] = sorted(out)
    return _SMALL_CANDIDATES[n]


def _primitive_int(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    w = tuple(x // g for x in v)
    lead = next(x for x in w if x != 0)
    return w if lead > 0 else tuple(-x for x in w)


def _box_shell(n, radius):
    """All integer vectors of exact sup norm `radius`."""
    out = []

    def rec(prefix, hit):
        if len(prefix) == n:
            if hit:
                out.append(tuple(prefix))
            return
        for x in range(-radius, radius + 1):
            rec(prefix + [x], hit or abs(x) == radius)

    rec([], False)
    return out


# dets below this bound use the plain small-vector pool only
_SMALL_DET = 1 << 5
# dets above this bound add the projected-lattice candidates
_STRUCTURED_DET = 1 << 12


class Reducer:
    """Reduction engine with a memo shared across calls.

    strategy: "cf" (extended-gcd pivot candidates, the continued-fraction
    convergent choice at n = 2), "lll" (lattice-reduction candidates from
    the adjugate lattice, plus the rounded grid), "box" (expanding
    exhaustive box only), or None for the default ladder (cf at n = 2, lll
    otherwise).  Every candidate is verified against the strict descent
    inequality before acceptance; among the valid ones the choice minimizes
    (second-largest child det by bit length, largest child det, lex v), so
    the search is a pure function of the input symbol.
    """

    def __init__(self, strategy=None):
        if strategy not in (None, "cf", "lll", "box"):
            raise ValueError("unknown strategy %r" % (strategy,))
        self.strategy = strategy
        self.memo = {}
        self.steps = {}

    # -- candidate generation -------------------------------------------

    def _pivot_candidates(self, cols, adj, d):
        """One candidate per adjugate row: v with (adj v)_i = +-gcd(row_i).
        The selection stage centers every other coordinate mod det, which
        at n = 2 recovers the classical continued-fraction convergent."""
        n = len(cols)
        out = []
        for i in range(n):
            x, g = _ext_gcd_combination(adj[i])
            if g != 0 and g < abs(d):
                out.append(tuple(x))
        return out

    def _grid_candidates(self, cols, n):
        """Rounded fractional multiples of single columns and column pairs."""
        out = []
        for j in range(n):
            for p, q in _GRID_FRACTIONS:
                out.append(tuple(_center_q(2 * p * cols[j][r], 2 * q)
                                 for r in range(n)))
        for a in range(n):
            for b in range(a + 1, n):
                out.append(tuple(_center_q(cols[a][r] + cols[b][r], 2)
                                 for r in range(n)))
        return out

    def _projected_candidates(self, cols, adj, d):
        """(w, v) pairs with one exact zero child, two lattice-shortened
        children, and the remaining child centered mod det.

        For each adjugate row j, integer points of its kernel kill child j;
        the joint image of the kernel under the other adjugate rows is a
        lattice whose short vectors keep two further children small.  The
        leftover coordinate is centered by column shifts, which move it by
        multiples of det without touching the rest.
        """
        n = len(cols)
        out = []
        for j in range(n):
            centered = []
            for v in _row_kernel(adj[j]):
                w = list(mat_vec(adj, v))
                v = list(v)
                for c in range(n):
                    if c == j or w[c] == 0:
                        continue
                    k = _center_q(w[c], d)
                    if k:
                        for t in range(n):
                            v[t] -= k * cols[c][t]
                        w[c] -= k * d
                centered.append((w, v))
            rest = [c for c in range(n) if c != j]
            for m_coord in rest:
                ab = [c for c in rest if c != m_coord]
                vecs = [[list(w), list(v)] for w, v in centered]
                for _ in range(25):
                    vecs.sort(key=lambda p: sum(p[0][c] ** 2 for c in ab))
                    changed = False
                    for x in range(1, len(vecs)):
                        for y in range(x):
                            wx, vx = vecs[x]
                            wy, vy = vecs[y]
                            ny = sum(wy[c] ** 2 for c in ab)
                            if ny == 0:
                                continue
                            q = _center_q(sum(wx[c] * wy[c] for c in ab), ny)
                            if q:
                                vecs[x][0] = [a - q * b
                                              for a, b in zip(wx, wy)]
                                vecs[x][1] = [a - q * b
                                              for a, b in zip(vx, vy)]
                                changed = True
                    if not changed:
                        break
                pool = [(w[:], v[:]) for w, v in vecs]
                for x in range(len(vecs)):
                    for y in range(x + 1, len(vecs)):
                        wx, vx = vecs[x]
                        wy, vy = vecs[y]
                        pool.append(([a + b for a, b in zip(wx, wy)],
                                     [a + b for a, b in zip(vx, vy)]))
                        pool.append(([a - b for a, b in zip(wx, wy)],
                                     [a - b for a, b in zip(vx, vy)]))
                for w, v in pool:
                    if not any(v):
                        continue
                    k = _center_q(w[m_coord], d)
                    if k:
                        v = [a - k * b for a, b in zip(v, cols[m_coord])]
                        w = w[:]
                        w[m_coord] -= k * d
                    out.append((tuple(w), tuple(v)))
        return out

    def _lll_candidates(self, adj):
        """Short vectors of the adjugate column lattice, with preimages."""
        n = len(adj)
        adj_cols = [tuple(adj[r][c] for r in range(n)) for c in range(n)]
        try:
            _, transform = lll_transform(adj_cols)
        except MathPreconditionError:
            return []
        cands = list(transform)
        for a in range(n):
            for b in range(a + 1, n):
                pa, pb = transform[a], transform[b]
                cands.append(tuple(x + y for x, y in zip(pa, pb)))
                cands.append(tuple(x - y for x, y in zip(pa, pb)))
        return cands

    # -- candidate selection ----------------------------------------------

    def _select(self, raw_pool, known_pool, cols, adj, d):
        """Center every candidate mod det, drop invalid ones, and pick the
        minimizer of (bitlen of 2nd-largest child, largest child, lex v).

        Evaluation runs vectorized over machine ints when the magnitudes
        provably fit; otherwise an identical exact path is used.  The
        winner is always re-verified with exact arithmetic.
        """
        n = len(cols)
        d_abs = abs(d)
        max_entry = max(max(map(abs, r)) for r in adj)
        for w, v in known_pool:
            max_entry = max(max_entry, max(map(abs, w)), max(map(abs, v)))
        max_col = max(max(map(abs, c)) for c in cols)
        max_cand = max((max(map(abs, v)) for v in raw_pool), default=0)
        bound = (max_entry + 1) * (max_cand + 1) * n
        shift_bound = n * (max_col + 1) * (bound // d_abs + 2)
        raw_pool = list(dict.fromkeys(raw_pool))
        if (np is not None and raw_pool and d_abs < 2 ** 42
                and bound < 2 ** 55 and shift_bound < 2 ** 61):
            picked = self._select_bulk(raw_pool, known_pool, cols, adj, d)
        else:
            picked = self._select_exact(raw_pool, known_pool, cols, adj, d)
        if picked is None:
            return None
        v = picked
        w = mat_vec(adj, v)
        if max(abs(x) for x in w) >= d_abs or not any(w):
            return None
        return v, w

    def _key_exact(self, w, d_abs):
        aw = sorted((abs(x) for x in w), reverse=True)
        if aw[0] >= d_abs or aw[0] == 0:
            return None
        second = aw[1] if len(aw) > 1 else 0
        branching = sum(1 for x in aw if x > 1)
        return (second.bit_length(), branching, aw[0])

    def _select_exact(self, raw_pool, known_pool, cols, adj, d):
        n = len(cols)
        d_abs = abs(d)
        scored = []
        for v in raw_pool:
            if not any(v):
                continue
            w = list(mat_vec(adj, v))
            vv = list(v)
            for c in range(n):
                k = _center_q(w[c], d)
                if k:
                    for t in range(n):
                        vv[t] -= k * cols[c][t]
                    w[c] -= k * d
            scored.append((tuple(vv), w))
        scored.extend((tuple(v), list(w)) for w, v in known_pool)
        best_key = None
        for v, w in scored:
            if not any(v):
                continue
            key = self._key_exact(w, d_abs)
            if key is not None and (best_key is None or key < best_key):
                best_key = key
        if best_key is None:
            return None
        best = None
        for v, w in scored:
            if not any(v):
                continue
            if self._key_exact(w, d_abs) == best_key \
                    and (best is None or v < best):
                best = v
        return None if best is None else _primitive_int(best)

    def _select_bulk(self, raw_pool, known_pool, cols, adj, d):
        n = len(cols)
        d_abs = abs(d)
        v_arr = np.array(raw_pool, dtype=np.int64).T
        adj_arr = np.array(adj, dtype=np.int64)
        cols_arr = np.array([[cols[c][r] for c in range(n)]
                             for r in range(n)], dtype=np.int64)
        w_arr = adj_arr @ v_arr
        a_arr, dd = (w_arr, d) if d > 0 else (-w_arr, -d)
        k_arr = a_arr // dd
        r_arr = a_arr - dd * k_arr
        k_arr += ((2 * r_arr > dd) |
                  ((2 * r_arr == dd) & (a_arr < 0))).astype(np.int64)
        v_arr = v_arr - cols_arr @ k_arr
        w_arr = w_arr - d * k_arr
        if known_pool:
            v_arr = np.concatenate(
                [v_arr, np.array([v for _, v in known_pool],
                                 dtype=np.int64).T], axis=1)
            w_arr = np.concatenate(
                [w_arr, np.array([w for w, _ in known_pool],
                                 dtype=np.int64).T], axis=1)
        abs_w = np.abs(w_arr)
        largest = abs_w.max(axis=0)
        second = np.partition(abs_w, n - 2, axis=0)[n - 2] if n > 1 \
            else np.zeros_like(largest)
        valid = (abs_w.sum(axis=0) > 0) & (largest < d_abs)
        if not bool(valid.any()):
            return None
        # composite key: (bitlen of 2nd child, #children needing work,
        # largest child), packed into one integer for a single argmin
        second_bits = np.frexp(second.astype(np.float64))[1].astype(np.int64)
        branching = (abs_w > 1).sum(axis=0).astype(np.int64)
        composite = (second_bits << 45) | (branching << 42) | largest
        composite[~valid] = np.iinfo(np.int64).max
        m = composite.min()
        idxs = np.nonzero(composite == m)[0]
        best = None
        for i in idxs.tolist():
            col = tuple(int(x) for x in v_arr[:, i])
            if any(col) and (best is None or col < best):
                best = col
        return None if best is None else _primitive_int(best)

    def _weak(self, res, adj, d_abs):
        """True when the cheap pool's best split leaves the second-largest
        child above ~ det^(1/2), the scale the projected candidates reach."""
        if res is None:
            return True
        _, w = res
        aw = sorted((abs(x) for x in w), reverse=True)
        second = aw[1] if len(aw) > 1 else 0
        return 2 * second.bit_length() > d_abs.bit_length() + 2

    # -- search ------------------------------------------------------------

    def _search(self, cols, rows, adj, d):
        n = len(cols)
        d_abs = abs(d)
        strategy = self.strategy or ("cf" if n == 2 else "lll")
        raw = []
        known = []
        if strategy != "box" and d_abs <= 3:
            # every centered vector already satisfies the strict inequality
            # (|w_i| <= d/2 after centering), so e_1 settles it in one step
            v = [1] + [0] * (n - 1)
            w = [adj[r][0] for r in range(n)]
            for c in range(n):
                k = _center_q(w[c], d)
                if k:
                    for t in range(n):
                        v[t] -= k * cols[c][t]
                    w[c] -= k * d
            if any(v):
                v = _primitive_int(v)
                w = list(mat_vec(adj, v))
                if 0 < max(abs(x) for x in w) < d_abs:
                    return tuple(v), w
        if strategy != "box":
            raw.extend(_small_candidates(n))
            raw.extend(self._pivot_candidates(cols, adj, d))
            if strategy == "lll" and d_abs >= _SMALL_DET:
                raw.extend(self._grid_candidates(cols, n))
            res = self._select(raw, known, cols, adj, d)
            if strategy == "lll" and n >= 3 and d_abs >= _SMALL_DET \
                    and self._weak(res, adj, d_abs):
                # cheap pool cannot split the determinant well; bring in the
                # projected-lattice candidates before committing
                known = self._projected_candidates(cols, adj, d)
                res = self._select(raw, known, cols, adj, d) or res
            if res is not None:
                return res
        # complete fallback: the half-open parallelepiped spanned by the
        # columns contains a valid point, so an expanding box terminates
        limit = sum(max(abs(x) for x in c) for c in cols) + 1
        radius = 1
        while radius <= limit:
            res = self._select(_box_shell(n, radius), [], cols, adj, d)
            if res is not None:
                return res
            radius += 1
        raise InternalSearchError(
            "no reducing point within the guaranteed box for %s"
            % (list(map(list, cols)),))

    def find_reducing_point(self, symbol):
        """Best verified reducing point for a symbol with |det| > 1.

        Returns (certificate, signed child determinants).
        """
        if not isinstance(symbol, ModularSymbol):
            raise MathPreconditionError("nonzero symbol required")
        if symbol.det_abs <= 1:
            raise MathPreconditionError(
                "symbol is already unimodular (|det| = %d)" % symbol.det_abs)
        rows = symbol.matrix()
        v, w = self._search(symbol.columns, rows, adjugate(rows), det(rows))
        cert = ReducingCertificate(symbol.columns, v,
                                   tuple(abs(x) for x in w), symbol.det_abs)
        return cert, w

    # -- reduction ----------------------------------------------------------

    def reduce_columns(self, root_cols):
        """Chain of unimodular symbols homologous to [root_cols] (sign +1)."""
        memo = self.memo
        rows = tuple(zip(*root_cols))
        stack = [(root_cols, det(rows))]
        pending = {}
        while stack:
            cols, d = stack[-1]
            if cols in memo:
                stack.pop()
                continue
            if cols not in pending:
                if abs(d) == 1:
                    memo[cols] = SymbolChain({cols: 1})
                    stack.pop()
                    continue
                rows = tuple(zip(*cols))
                adj = adjugate(rows)
                v, w = self._search(cols, rows, adj, d)
                cert = ReducingCertificate(cols, v,
                                           tuple(abs(x) for x in w), abs(d))
                children = []
                for i in range(len(cols)):
                    if w[i] == 0:
                        continue
                    child_cols, parity = _child_columns(cols, i, v)
                    children.append((child_cols, parity, parity * w[i]))
                self.steps[cols] = (cert, tuple(w))
                pending[cols] = children
                stack.extend((c, dc) for c, _, dc in children
                             if c not in memo)
                continue
            chain = SymbolChain()
            for child_cols, parity, _ in pending.pop(cols):
                chain.add_chain(memo[child_cols], parity)
            memo[cols] = chain
            stack.pop()
        return memo[root_cols]

    def reduce(self, symbol):
        """Reduce a canonical symbol; returns (chain, trace)."""
        if symbol is ZERO:
            return SymbolChain(), ReductionTrace(None, {})
        chain = self.reduce_columns(symbol.columns).scaled(symbol.sign)
        return chain, ReductionTrace(symbol.columns, self.steps)


class ReductionTrace:
    """Per-step certificates of a reduction, replayable.

    steps maps parent columns to (ReducingCertificate, signed child dets);
    the dict may hold steps shared with other reductions by the same
    Reducer, so serialization walks only the part reachable from the root.
    """

    def __init__(self, root_columns, steps):
        self.root_columns = root_columns
        self.steps = steps

    def reachable(self):
        """Deterministic (parent columns -> step) dict for the root's tree."""
        out = {}
        if self.root_columns is None:
            return out
        queue = [self.root_columns]
        while queue:
            cols = queue.pop(0)
            if cols in out or cols not in self.steps:
                continue
            cert, w = self.steps[cols]
            out[cols] = (cert, w)
            for i in range(len(cols)):
                if abs(w[i]) > 1:
                    child_cols, _ = _child_columns(cols, i, cert.v)
                    queue.append(child_cols)
        return out

    def replay(self):
        """Re-derive the output chain from the recorded steps alone."""
        if self.root_columns is None:
            return SymbolChain()
        chains = {}
        stack = [self.root_columns]
        while stack:
            cols = stack[-1]
            if cols in chains:
                stack.pop()
                continue
            if cols not in self.steps:
                chains[cols] = SymbolChain({cols: 1})
                stack.pop()
                continue
            cert, w = self.steps[cols]
            kids = []
            missing = []
            for i in range(len(cols)):
                if w[i] == 0:
                    continue
                child_cols, parity = _child_columns(cols, i, cert.v)
                kids.append((child_cols, parity))
                if child_cols not in chains:
                    missing.append(child_cols)
            if missing:
                stack.extend(missing)
                continue
            chain = SymbolChain()
            for child_cols, parity in kids:
                chain.add_chain(chains[child_cols], parity)
            chains[cols] = chain
            stack.pop()
        return chains[self.root_columns]

    def __len__(self):
        return len(self.reachable())


def find_reducing_point(m, strategy=None):
    """Verified reducing point for a symbol with |det m| > 1."""
    cert, _ = Reducer(strategy).find_reducing_point(m)
    return cert


def reduce_to_unimodular(m, strategy=None, reducer=None):
    """Rewrite [m] as a chain of unimodular symbols with a certificate trace.

    Every output symbol has |det| = 1 and every recorded step satisfies the
    strict descent inequality, so termination is structural.
    """
    if reducer is None:
        reducer = Reducer(strategy)
    elif strategy is not None and reducer.strategy != strategy:
        raise ValueError("reducer strategy mismatch")
    return reducer.reduce(m)
