"""Closed-form evaluators: truncated matrix-product traces, open-boundary
brackets with the partition function, and the determinant formula.

Truncation.  Inside a ring trace the rank-one matrix A resets a row vector
to index 0, D raises the index by exactly one and E never raises it, so a
product over a word of length n only touches indices below n.  Open-boundary
brackets start at index 0 and also only move up through D, so dimension n+2
is exact in both cases.  Every evaluation is repeated at a larger dimension
as a guard.
"""
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb

import flint

from .core import RateParams, as_word, classify, rotate

GUARD = 3


class TraceDiverges(ValueError):
    pass


class InvalidInterval(ValueError):
    pass


class RelationFailure(AssertionError):
    pass


def _q(x):
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _frac(q):
    return Fraction(int(q.p), int(q.q))


@dataclass(frozen=True)
class TruncatedMatrix:
    m: int
    entries: tuple  # tuple of row tuples of Fractions

    def to_flint(self):
        M = flint.fmpq_mat(self.m, self.m)
        for i, row in enumerate(self.entries):
            for j, v in enumerate(row):
                if v:
                    M[i, j] = _q(v)
        return M


def _from_rows(rows):
    return TruncatedMatrix(len(rows), tuple(tuple(Fraction(v) for v in r) for r in rows))


def _e_block(m, t, d, corner):
    """Lower block: E[0][0] = corner, E[i+1][j] = (d/t) E[i][j] + (1/t)[j = i+1]."""
    E = [[Fraction(0)] * m for _ in range(m)]
    E[0][0] = corner
    for i in range(m - 1):
        for j in range(m):
            E[i + 1][j] = d / t * E[i][j] + (1 / t if j == i + 1 else 0)
    return E


def _d_block(m, d):
    D = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m - 1):
        D[i][i + 1] = 1 / d
    return D


def ring_matrices(params, m):
    """(D, A, E) for the ring, satisfying tDE = D + E, dDA = A, eAE = A away
    from the truncation edge.  A = (column of ones) x (row e_0)."""
    t, d, e = params.t, params.d, params.e
    D = _d_block(m, d)
    A = [[Fraction(1) if j == 0 else Fraction(0) for j in range(m)] for _ in range(m)]
    E = _e_block(m, t, d, 1 / e)
    return _from_rows(D), _from_rows(A), _from_rows(E)


def _product(word, mats, m):
    P = flint.fmpq_mat(m, m)
    for i in range(m):
        P[i, i] = 1
    for c in word:
        P = P * mats[c]
    return P


def _ring_trace_at(x, params, m):
    D, A, E = ring_matrices(params, m)
    mats = {2: D.to_flint(), 1: A.to_flint(), 0: E.to_flint()}
    P = _product(x, mats, m)
    return sum((_frac(P[i, i]) for i in range(m)), Fraction(0))


def ansatz_trace_ring(x, params=RateParams(), m=None):
    """tr(product of D, A, E over x) with 2 -> D, 1 -> A, 0 -> E.

    Raises TraceDiverges when x has no 1 (the trace is infinite).
    """
    x = as_word(x)
    if 1 not in x:
        raise TraceDiverges("the trace needs at least one 1")
    m = m or len(x) + 2
    if m < len(x) + 2:
        raise ValueError(f"dimension {m} below {len(x) + 2}")
    val = _ring_trace_at(x, params, m)
    if val != _ring_trace_at(x, params, m + GUARD):
        raise RelationFailure(f"truncation unstable for {x}")
    return val


def ring_normalizer(size, params):
    """Factor t^(k+l) d^k e^l turning a trace into the MLQ weight sum."""
    return params.t ** (size.k + size.l) * params.d ** size.k * params.e ** size.l


# ------------------------------------------------------------ open boundary

@lru_cache(maxsize=256)
def open_matrices(n, r, params, m=None, sectors=None):
    """Block matrices for the open chain with inhomogeneous rates.

    Sectors s = 0..S count the 1s read so far.  In each sector D has 1/d on
    the superdiagonal and E follows the ring recurrence, with corner 1/alpha
    in sector 0 and 1/e afterwards.  A maps index i of sector s to index 0
    of sector s+1.  <w| = e_0 of sector 0 and |v> has entries (d/beta)^j in
    every sector.  Relations: tDE = D + E, dDA = A, eAE = A,
    <w|E = (1/alpha)<w|, D|v> = (1/beta)|v>.
    """
    m = m or n + 2
    S = (sectors or r + 1)
    N = m * (S + 1)
    t, d, e, a, b = params.t, params.d, params.e, params.alpha, params.beta
    D = flint.fmpq_mat(N, N)
    E = flint.fmpq_mat(N, N)
    A = flint.fmpq_mat(N, N)
    db = _d_block(m, d)
    for s in range(S + 1):
        o = s * m
        eb = _e_block(m, t, d, 1 / a if s == 0 else 1 / e)
        for i in range(m):
            for j in range(m):
                if db[i][j]:
                    D[o + i, o + j] = _q(db[i][j])
                if eb[i][j]:
                    E[o + i, o + j] = _q(eb[i][j])
        if s < S:
            for i in range(m):
                A[o + i, o + m] = 1
    w = flint.fmpq_mat(1, N)
    w[0, 0] = 1
    v = flint.fmpq_mat(N, 1)
    for s in range(S + 1):
        for j in range(m):
            v[s * m + j, 0] = _q((d / b) ** j)
    return D, A, E, w, v


@lru_cache(maxsize=256)
def check_open_relations(n, r, params, m=None):
    """Check the five relations on the part of the truncation a word of
    length n can reach (rows below m-2 in each sector).  Returns a list of
    failures, empty when all hold.  Cached matrices are never mutated."""
    m = m or n + 2
    D, A, E, w, v = open_matrices(n, r, params, m)
    t, d, e, a, b = params.t, params.d, params.e, params.alpha, params.beta
    S = r + 1
    rows = [s * m + i for s in range(S + 1) for i in range(m - 2)]
    bad = []

    def cmp(name, L, R, rowset, cols):
        for i in rowset:
            for j in cols:
                if L[i, j] != R[i, j]:
                    bad.append((name, i, j))
                    return

    N = m * (S + 1)
    cmp("tDE=D+E", D * E * _q(t), D + E, rows, range(N))
    cmp("dDA=A", D * A * _q(d), A, [s * m + i for s in range(S) for i in range(m - 2)], range(N))
    inner = [s * m + i for s in range(1, S) for i in range(m - 2)]
    cmp("eAE=A", A * E * _q(e), A, inner, range(N))
    cmp("<w|E", w * E, w * _q(1 / a), [0], range(N))
    cmp("D|v>", D * v, v * _q(1 / b), rows, [0])
    return tuple(bad)


def _bracket(word, D, A, E, w, v):
    mats = {2: D, 1: A, 0: E}
    row = w
    for c in word:
        row = row * mats[c]
    return _frac((row * v)[0, 0])


def ansatz_open(x, params=RateParams(), m=None):
    """<w| product over x |v> with 2 -> D, 1 -> A, 0 -> E (sector matrices)."""
    x = as_word(x)
    n, r = len(x), x.count(1)
    m = m or n + 2
    if m < n + 2:
        raise ValueError(f"dimension {m} below {n + 2}")
    if check_open_relations(n, r, params, m):
        raise RelationFailure("open matrices fail their relations")
    val = _bracket(x, *open_matrices(n, r, params, m))
    if val != _bracket(x, *open_matrices(n, r, params, m + GUARD, r + 3)):
        raise RelationFailure(f"truncation unstable for {x}")
    return val


def open_partition_function(n, r, params=RateParams(), m=None):
    """[y^r] <w|(D + yA + E)^n|v>, expanding the powers of y on the fly."""
    m = m or n + 2
    D, A, E, w, v = open_matrices(n, r, params, m)
    DE = D + E
    rows = {0: w}
    for _ in range(n):
        nxt = {}
        for deg, row in rows.items():
            nxt[deg] = nxt[deg] + row * DE if deg in nxt else row * DE
            if deg < r:
                nxt[deg + 1] = nxt[deg + 1] + row * A if deg + 1 in nxt else row * A
        rows = nxt
    if r not in rows:
        return Fraction(0)
    return _frac((rows[r] * v)[0, 0])


def uchiyama_numerator(x, alpha, beta, m=None):
    """alpha^k beta^l <w|X|v> in the homogeneous normalisation.

    Take the sector matrices at t = d = e = 1 and scale D by beta and E by
    alpha, leaving A alone.  Then DE = D + E, DA = A, AE = A, <w|E = <w| and
    D|v> = |v> (up to the common factor alpha beta), and the value equals
    (alpha beta)^(n-r) times the unit-rate bracket.
    """
    x = as_word(x)
    s = classify(x)
    p = RateParams(alpha=alpha, beta=beta)
    core = ansatz_open(x, p, m)
    scale = (Fraction(alpha) * Fraction(beta)) ** (s.k + s.l)
    return scale * core


def explicit_homogeneous_matrices(alpha, beta, m):
    """A candidate explicit homogeneous representation: D = alpha on the
    superdiagonal, A and E with column 0 equal to beta^i, and
    E_ij = alpha beta^(i-j+1) for 1 <= j <= i+1.

    Kept only so the tests can show they break DA = A, AE = A and
    DE = D + E; nothing else uses them.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    D = [[Fraction(0)] * m for _ in range(m)]
    A = [[Fraction(0)] * m for _ in range(m)]
    E = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        if i + 1 < m:
            D[i][i + 1] = alpha
        A[i][0] = beta ** i
        E[i][0] = beta ** i
        for j in range(1, min(i + 2, m)):
            E[i][j] = alpha * beta ** (i - j + 1)
    return _from_rows(D), _from_rows(A), _from_rows(E)


def homogeneous_relation_failures(D, A, E):
    """Names of the bulk relations DE = D + E, DA = A, AE = A that fail on
    the rows not touched by truncation."""
    Df, Af, Ef = D.to_flint(), A.to_flint(), E.to_flint()
    m = D.m
    out = []
    for name, L, R in (("DE=D+E", Df * Ef, Df + Ef), ("DA=A", Df * Af, Af), ("AE=A", Af * Ef, Af)):
        if any(L[i, j] != R[i, j] for i in range(m - 2) for j in range(m - 2)):
            out.append(name)
    return out


# ------------------------------------------------------------ determinants

def lambda_partition(w):
    """Partition of a word over {0, 2}: entry i is m + i - a_i, where a_i is
    the 1-based position of the i-th 2 and m the number of 0s."""
    w = as_word(w) if w not in ("", ()) else ()
    if 1 in w:
        raise InvalidInterval("interval words contain only 0s and 2s")
    m = w.count(0)
    twos = [i + 1 for i, c in enumerate(w) if c == 2]
    return tuple(m + i - a for i, a in enumerate(twos, start=1))


def binomial_matrix(lam):
    """Entry (i, j) is C(lam_j + 1, j - i + 1), 1-based, zero out of range."""
    j = len(lam)

    def c(a, b):
        return comb(a, b) if 0 <= b <= a else 0

    return [[c(lam[jj] + 1, jj - ii + 1) for jj in range(j)] for ii in range(j)]


def det_int(rows):
    if not rows:
        return 1
    return int(flint.fmpz_mat(rows).det())


def intervals(x):
    """The r cyclic runs of 0s and 2s that follow each 1."""
    x = as_word(x)
    if 1 not in x:
        raise InvalidInterval("no 1 in the word")
    xr = rotate(x, x.index(1))
    runs = []
    cur = None
    for c in xr:
        if c == 1:
            if cur is not None:
                runs.append(tuple(cur))
            cur = []
        else:
            cur.append(c)
    runs.append(tuple(cur))
    return runs


def det_weight(x):
    """Number of TRAT (equivalently MLQs) of x as a product of determinants."""
    x = as_word(x)
    s = classify(x)
    if s.r == 0:
        return comb(s.k + s.l, s.k)
    out = 1
    for run in intervals(x):
        out *= det_int(binomial_matrix(lambda_partition(run)))
    return out
