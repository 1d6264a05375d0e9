"""Acyclic multiline queues and rhombic tableaux for open boundaries.

An AMLQ is a two-row configuration on n sites where no dropping ball wraps
around the right end.  Sites are 0-based; site 0 is where type 2 particles
enter (rate alpha) and site n-1 where they leave (rate beta).
"""
from dataclasses import dataclass

from .core import RateParams, RatePolynomial, all_binary, as_word, classify, random_params
from .markov import build_open_chain, make_chain, stationary_exact
from .mlq import Mlq, mlq_type
from .trat import Tile, Tiling, enumerate_fillings, filling_from_weights

CONVENTIONS = ("definition", "proof")
DEFAULT_CONVENTION = "definition"


class InvalidAmlq(ValueError):
    pass


class ConventionViolation(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Amlq:
    top: tuple
    bottom: tuple

    def __post_init__(self):
        top, bot = tuple(self.top), tuple(self.bottom)
        if len(top) != len(bot):
            raise InvalidAmlq("rows must have equal length")
        if set(top) - {0, 1} or set(bot) - {0, 1}:
            raise InvalidAmlq("rows are 0/1 indicators")
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bot)

    @property
    def n(self):
        return len(self.top)

    def __str__(self):
        return "".join(map(str, self.top)) + "|" + "".join(map(str, self.bottom)) + "|open"

    @classmethod
    def parse(cls, text):
        parts = text.strip().split("|")
        if len(parts) == 3 and parts[2] == "open":
            parts = parts[:2]
        if len(parts) != 2:
            raise InvalidAmlq(f"cannot parse {text!r}")
        try:
            return cls(tuple(int(c) for c in parts[0]), tuple(int(c) for c in parts[1]))
        except ValueError as exc:
            raise InvalidAmlq(str(exc))


def validate_amlq(a):
    """True when no drop wraps: on every suffix of the row there are at
    least as many bottom balls as top balls."""
    if sum(a.top) > sum(a.bottom):
        return False
    tops = bots = 0
    for p in range(a.n - 1, -1, -1):
        tops += a.top[p]
        bots += a.bottom[p]
        if bots < tops:
            return False
    return True


def prefix_condition(a):
    """Prefix reading of validity: the i-th bottom ball from the left has at
    least i top balls weakly to its left.  It fails for every configuration
    with a 1-ball (there are fewer top balls than bottom balls), so it is
    not used; kept only so the scripts can show this."""
    tops = 0
    i = 0
    for p in range(a.n):
        tops += a.top[p]
        if a.bottom[p]:
            i += 1
            if tops < i:
                return False
    return True


def _word(x):
    """as_word, but the empty row is allowed on an open segment."""
    return () if len(x) == 0 else as_word(x)


def _check(a):
    if not validate_amlq(a):
        raise InvalidAmlq(f"{a} has a wrapping drop")


def enumerate_amlqs(n, r):
    """All AMLQs with n sites and r 1-balls (any number of top balls)."""
    out = []
    for l in range(n - r + 1):
        for bot in all_binary(n, l + r):
            for top in all_binary(n, l):
                a = Amlq(top, bot)
                if validate_amlq(a):
                    out.append(a)
    return out


@dataclass(frozen=True)
class AmlqDrop:
    type_word: tuple
    weights: dict        # 0-site -> hitting weight
    marked_by: dict      # vacancy -> 0-site whose ball marked it
    unrestricted: frozenset


def amlq_drop(a):
    """Right-to-left drop without wrapping, plus the free-tile rule for
    unrestricted 0-balls (the search stops at a 1 or at the left end)."""
    _check(a)
    n = a.n
    occ = [False] * n
    mark = {}
    hits = {}
    for p in range(n - 1, -1, -1):
        if not a.top[p]:
            continue
        q = p
        passed = []
        while not (a.bottom[q] and not occ[q]):
            if not a.bottom[q] and q not in mark:
                passed.append(q)
            q += 1
        for y in passed:
            mark[y] = q
        occ[q] = True
        hits[q] = len(passed)
    X = tuple(2 if not a.bottom[i] else (0 if occ[i] else 1) for i in range(n))
    unrest = set()
    for x in hits:
        y = x - 1
        while y >= 0 and X[y] != 1:
            if X[y] == 2 and (y not in mark or mark[y] > x):
                unrest.add(x)
                break
            y -= 1
    return AmlqDrop(X, hits, mark, frozenset(unrest))


def amlq_type(a):
    return amlq_drop(a).type_word


@dataclass(frozen=True)
class RatStats:
    mv: int
    urest: int
    ufree: int
    lfree: int
    n: int
    r: int
    k: int
    l: int


def amlq_stats(a, convention=DEFAULT_CONVENTION):
    """mv, urest and the two boundary statistics.

    "definition": ufree counts restricted 0-balls left of the leftmost 1 and
    lfree counts unmarked vacancies right of the rightmost 1.
    "proof": the swapped reading (unmarked vacancies on the left, restricted
    0-balls on the right).  With no 1 the region is the whole row.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    res = amlq_drop(a)
    X = res.type_word
    n = len(X)
    ones = [i for i, c in enumerate(X) if c == 1]
    lo = ones[0] if ones else n
    hi = ones[-1] if ones else -1
    restricted = lambda i: X[i] == 0 and i not in res.unrestricted
    unmarked = lambda i: X[i] == 2 and i not in res.marked_by
    if convention == "definition":
        ufree = sum(1 for i in range(lo) if restricted(i))
        lfree = sum(1 for i in range(hi + 1, n) if unmarked(i))
    else:
        ufree = sum(1 for i in range(lo) if unmarked(i))
        lfree = sum(1 for i in range(hi + 1, n) if restricted(i))
    s = classify(X) if n else None
    k, r, l = (s.k, s.r, s.l) if s else (0, 0, 0)
    return RatStats(len(res.marked_by), len(res.unrestricted), ufree, lfree, n, r, k, l)


def weight_from_stats(st, enhanced=True):
    """alpha^(n-r-ufree) beta^(n-r-lfree), times d^(mv+lfree-k)
    e^(urest+ufree-l) for the enhanced weight.  The d and e exponents are
    never positive; only negative alpha or beta exponents are rejected."""
    ea = st.n - st.r - st.ufree
    eb = st.n - st.r - st.lfree
    if ea < 0 or eb < 0:
        raise ConventionViolation(f"negative boundary exponent in {st}")
    if not enhanced:
        return RatePolynomial.monomial(alpha=ea, beta=eb)
    return RatePolynomial.monomial(alpha=ea, beta=eb, d=st.mv + st.lfree - st.k,
                                   e=st.urest + st.ufree - st.l)


def amlq_weight(a, enhanced=True, convention=DEFAULT_CONVENTION):
    return weight_from_stats(amlq_stats(a, convention), enhanced)


def class_amlq_weight(x, enhanced=True, convention=DEFAULT_CONVENTION):
    """Sum of AMLQ weights over AMLQ(x)."""
    x = _word(x)
    total = RatePolynomial()
    for a in amlqs_of_type(x):
        total = total + amlq_weight(a, enhanced, convention)
    return total


def amlqs_of_type(x):
    x = _word(x)
    bot = tuple(0 if c == 2 else 1 for c in x)
    out = []
    for top in all_binary(len(x), x.count(0)):
        a = Amlq(top, bot)
        if validate_amlq(a) and amlq_type(a) == x:
            out.append(a)
    return out


def amlq_stationary_weights(n, r, params, enhanced=True, convention=DEFAULT_CONVENTION):
    """Unnormalised stationary weights {word: sum of AMLQ weights}."""
    out = {}
    for a in enumerate_amlqs(n, r):
        x = amlq_type(a)
        out[x] = out.get(x, 0) + amlq_weight(a, enhanced, convention).evaluate(params)
    return out


def select_convention(max_n=5, max_r=3, points=3, seed=0):
    """Compare both readings of ufree/lfree with the exact open chain.

    Returns {convention: bool} over all (n, r) with n <= max_n, r <= max_r,
    at `points` random rational (alpha, beta, d, e) points with t = 1.
    """
    from .core import make_rng
    rng = make_rng(seed)
    pts = [random_params(rng, names=("d", "e", "alpha", "beta")) for _ in range(points)]
    ok = {c: True for c in CONVENTIONS}
    for n in range(1, max_n + 1):
        for r in range(0, min(n, max_r) + 1):
            for p in pts:
                pi = stationary_exact(build_open_chain(n, r, p))
                for c in CONVENTIONS:
                    if not ok[c]:
                        continue
                    try:
                        w = amlq_stationary_weights(n, r, p, True, c)
                    except ConventionViolation:
                        ok[c] = False
                        continue
                    z = sum(w.values())
                    if any(pi[x] != w.get(x, 0) / z for x in pi):
                        ok[c] = False
    return ok


# ------------------------------------------------------------ embedding

def embed_amlq(a):
    """Append a column (no top ball, bottom ball) on both sides."""
    _check(a)
    return Mlq((0,) + a.top + (0,), (1,) + a.bottom + (1,))


def unembed_mlq(m):
    """Inverse of embed_amlq for an MLQ whose type reads 1X1."""
    X = mlq_type(m)
    if len(X) < 2 or X[0] != 1 or X[-1] != 1 or m.top[0] or m.top[-1]:
        raise InvalidAmlq(f"{m} does not read 1X1 with empty end columns")
    a = Amlq(m.top[1:-1], m.bottom[1:-1])
    _check(a)
    return a


# ------------------------------------------------------------ RAT

def open_tiling(x):
    """Canonical tiling of the open region: only pairs that do not wrap.

    North-strip of the 0 at x: the 2s and 1s left of x, nearest first.
    West-strip of the 2 at y: 0s right of y, then 1s right of y, increasing.
    Diagonal strip of the 1 at b: 0s right of b increasing, then 2s left of
    b decreasing.
    """
    x = _word(x)
    n = len(x)
    north = []
    for z in range(n):
        if x[z] == 0:
            strip = [Tile("20" if x[p] == 2 else "10", p, z)
                     for p in range(z - 1, -1, -1) if x[p] != 0]
            north.append((z, tuple(strip)))
    west = []
    for y in range(n):
        if x[y] == 2:
            strip = [Tile("20", y, p) for p in range(y + 1, n) if x[p] == 0]
            strip += [Tile("21", y, p) for p in range(y + 1, n) if x[p] == 1]
            west.append((y, tuple(strip)))
    diag = []
    for b in range(n):
        if x[b] == 1:
            strip = [Tile("10", b, p) for p in range(b + 1, n) if x[p] == 0]
            strip += [Tile("21", p, b) for p in range(b - 1, -1, -1) if x[p] == 2]
            diag.append((b, tuple(strip)))
    return Tiling(tuple(x), tuple(north), tuple(west), tuple(diag))


def enumerate_rats(x):
    return enumerate_fillings(open_tiling(x), toric=False)


def rat_stats(f):
    arrows = f.arrows()
    left = sum(1 for t, a in arrows.items() if a == "left" and t.kind == "20")
    up = sum(1 for t, a in arrows.items() if a == "up" and t.kind == "20")
    ufree = sum(1 for _, i in f.up if i is None)
    lfree = sum(1 for _, i in f.left if i is None)
    X = f.type_word
    return RatStats(left, up, ufree, lfree, len(X), X.count(1), X.count(2), X.count(0))


def rat_weight(f, enhanced=True):
    """alpha^(k + #up) beta^(l + #left), with the enhanced d, e factor."""
    st = rat_stats(f)
    nup = sum(1 for _, i in f.up if i is not None)
    nleft = sum(1 for _, i in f.left if i is not None)
    assert st.k + nup == st.n - st.r - st.ufree and st.l + nleft == st.n - st.r - st.lfree
    return weight_from_stats(st, enhanced)


def rat_from_amlq(a):
    """Fill north-strips left to right with the hitting weights as
    left-arrow counts; an up-arrow goes in the next free tile if any."""
    res = amlq_drop(a)
    return filling_from_weights(open_tiling(res.type_word), res.weights, toric=False)


def amlq_from_weights(x, weights):
    """Open ball lifts, 0-balls left to right (see mlq._lift)."""
    x = _word(x)
    n = len(x)
    marked = [False] * n
    top = [0] * n
    for p in range(n):
        if x[p] != 0:
            continue
        k = weights[p]
        if k == 0:
            top[p] = 1
            continue
        y = p - 1
        found = 0
        while True:
            if y < 0 or x[y] == 1:
                raise InvalidAmlq(f"not enough vacancies left of site {p}")
            if x[y] == 2 and not marked[y]:
                marked[y] = True
                found += 1
                if found == k:
                    break
            y -= 1
        top[y] = 1
    a = Amlq(tuple(top), tuple(0 if c == 2 else 1 for c in x))
    _check(a)
    return a


def amlq_from_rat(f):
    return amlq_from_weights(f.type_word, f.left_counts())


# ------------------------------------------------------------ Markov chain

def amlq_move(a, i):
    """(new AMLQ, rate name) for the move at site i, or None.

    i = 0 is the left boundary, i = n the right boundary, and 1 <= i <= n-1
    the bond between sites i-1 and i.
    """
    n = a.n
    X = amlq_type(a)
    top, bot = list(a.top), list(a.bottom)
    if i == 0:
        if n == 0 or X[0] != 0:
            return None
        # the 0-ball at site 0 becomes a vacancy; its ball leaves the top row
        bot[0] = 0
        j = next((p for p in range(1, n) if bot[p]), None)
        if j is None:
            j = n - 1
        for p in range(0, j):
            top[p] = top[p + 1]
        top[j] = 0
        return Amlq(tuple(top), tuple(bot)), "alpha"
    if i == n:
        if n == 0 or X[-1] != 2:
            return None
        # drop the last column and insert a ball over a ball after the
        # nearest site on the left whose particle is not 0
        j = next((p for p in range(n - 2, -1, -1) if X[p] != 0), -1)
        top, bot = top[:-1], bot[:-1]
        top.insert(j + 1, 1)
        bot.insert(j + 1, 1)
        return Amlq(tuple(top), tuple(bot)), "beta"
    if not bot[i]:
        return None
    left = X[i - 1]
    if top[i]:
        if X[i] != 0 or left == 0:
            return None
        p = i - 2
        while p >= 0 and X[p] == 0:
            p -= 1
        s = p + 1
        cols = [(top[q], bot[q]) for q in range(s, i + 1)]
        cols = cols[-1:] + cols[:-1]
        for q, (u, b) in zip(range(s, i + 1), cols):
            top[q], bot[q] = u, b
        return Amlq(tuple(top), tuple(bot)), "t" if left == 2 else "e"
    if left != 2:
        return None
    j = next((p for p in range(i + 1, n) if X[p] != 2), n - 1)
    bot[i - 1], bot[i] = bot[i], bot[i - 1]
    for q in range(i, j):
        top[q] = top[q + 1]
    top[j] = 0
    return Amlq(tuple(top), tuple(bot)), "t" if X[i] == 0 else "d"


def omega_amlq(a, i):
    mv = amlq_move(a, i)
    return a if mv is None else mv[0]


def build_amlq_chain(n, r, params=RateParams()):
    states = enumerate_amlqs(n, r)
    trans = []
    for a in states:
        for i in range(n + 1):
            mv = amlq_move(a, i)
            if mv:
                trans.append((a, mv[0], getattr(params, mv[1])))
    return make_chain(states, trans, "amlq")


def zeta_rat(f, i):
    """RAT chain move conjugated through the AMLQ bijection."""
    return rat_from_amlq(omega_amlq(amlq_from_rat(f), i))
