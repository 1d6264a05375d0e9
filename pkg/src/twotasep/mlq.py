"""Two-row multiline queues on the ring.

An Mlq is a pair of 0/1 rows.  The top row holds the balls that drop; the
bottom row holds the balls they land on (1) and vacancies (0).  After the drop,
bottom balls that were hit read as particle 0, unhit balls as particle 1 and
vacancies as particle 2.
"""
from dataclasses import dataclass

from .core import (RatePolynomial, all_binary, as_word, classify,
                   rotate)
from .markov import make_chain


class InvalidMlq(ValueError):
    pass


class InconsistentWeights(ValueError):
    pass


class InvalidWeights(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Mlq:
    top: tuple
    bottom: tuple

    def __post_init__(self):
        top, bot = tuple(self.top), tuple(self.bottom)
        if len(top) != len(bot) or not top:
            raise InvalidMlq("rows must be non-empty and of equal length")
        if set(top) - {0, 1} or set(bot) - {0, 1}:
            raise InvalidMlq("rows are 0/1 indicators")
        if sum(top) > sum(bot):
            raise InvalidMlq("more top balls than bottom balls")
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bot)

    @property
    def n(self):
        return len(self.top)

    def rotated(self, s):
        return Mlq(rotate(self.top, s), rotate(self.bottom, s))

    def __str__(self):
        return "".join(map(str, self.top)) + "|" + "".join(map(str, self.bottom))

    @classmethod
    def parse(cls, text):
        try:
            a, b = text.strip().split("|")
            return cls(tuple(int(c) for c in a), tuple(int(c) for c in b))
        except ValueError as exc:
            raise InvalidMlq(f"cannot parse {text!r}: {exc}")


@dataclass(frozen=True)
class DropResult:
    type_word: tuple
    shift: int              # rotation applied before the right-to-left drop
    pairing: dict           # top site -> bottom site it lands on
    zero_ball_sites: tuple  # ascending, original coordinates
    weights: tuple          # hitting weight for each entry of zero_ball_sites
    marked_vacancies: frozenset
    unrestricted: frozenset
    marked_by: dict         # vacancy site -> 0-ball site whose ball marked it

    def weight_of(self, site):
        return dict(zip(self.zero_ball_sites, self.weights))[site]


def _cyclic_type(top, bot, order):
    n = len(top)
    occ = [False] * n
    for p in order:
        if not top[p]:
            continue
        q = p
        for _ in range(n):
            if bot[q] and not occ[q]:
                break
            q = (q + 1) % n
        occ[q] = True
    return tuple(2 if not bot[i] else (0 if occ[i] else 1) for i in range(len(top)))


def mlq_type(m):
    """Type of an MLQ; the ball drop order does not matter for the type."""
    return _cyclic_type(m.top, m.bottom, range(m.n - 1, -1, -1))


def type_with_order(m, order):
    """Type computed with an explicit drop order (list of top sites)."""
    return _cyclic_type(m.top, m.bottom, order)


def drop(m):
    """Right-to-left ball drop after rotating a 1-ball to the left end.

    Each dropping ball lands on the first unoccupied bottom ball weakly to
    its right and marks every unmarked vacancy it passes; the number it marks
    is the hitting weight of the 0-ball it lands on.

    A 0-ball at x is unrestricted when some vacancy between x and the nearest
    1-ball on its left is not marked by the ball landing at x or by any ball
    landing further left.  This is the north-strip "free 20-tile" condition
    of the tableau picture; checking only the vacancies still unmarked when
    the ball drops gives weights that disagree with the tableaux.
    """
    n = m.n
    X = mlq_type(m)
    if 1 in X:
        s = X.index(1)
        T, B = rotate(m.top, s), rotate(m.bottom, s)
        wrap = False
    else:
        # no 1-balls: every bottom ball is a 0-ball; drop cyclically
        s = 0
        T, B = m.top, m.bottom
        wrap = True
    occ = [False] * n
    mark = [None] * n
    pairing = {}
    hits = {}
    for p in range(n - 1, -1, -1):
        if not T[p]:
            continue
        q = p
        passed = []
        while not (B[q] and not occ[q]):
            if not B[q] and mark[q] is None:
                passed.append(q)
            q += 1
            if q == n:
                if not wrap:
                    raise AssertionError("ball wrapped after rotation")
                q = 0
        for y in passed:
            mark[y] = q
        occ[q] = True
        pairing[p] = q
        hits[q] = len(passed)
    Xr = rotate(X, s)
    zeros = tuple(i for i in range(n) if Xr[i] == 0)
    unrest = set()
    if not wrap:
        for x in zeros:
            y = x - 1
            while Xr[y] != 1:
                if Xr[y] == 2 and (mark[y] is None or mark[y] > x):
                    unrest.add(x)
                    break
                y -= 1
    back = lambda i: (i + s) % n
    order = sorted(zeros, key=back)
    return DropResult(
        type_word=X,
        shift=s,
        pairing={back(p): back(q) for p, q in pairing.items()},
        zero_ball_sites=tuple(back(x) for x in order),
        weights=tuple(hits[x] for x in order),
        marked_vacancies=frozenset(back(y) for y in range(n) if mark[y] is not None),
        unrestricted=frozenset(back(x) for x in unrest),
        marked_by={back(y): back(mark[y]) for y in range(n) if mark[y] is not None},
    )


def nearest_one_left(x, i):
    """Index of the nearest 1 strictly left of i in a word starting with 1."""
    j = i - 1
    while x[j] != 1:
        j -= 1
    return j


def is_x_consistent(x, w):
    """Capacity condition on hitting weights.

    For every 0 at position p (word x starts with 1), the weights of the 0s
    in the stretch between the nearest 1 on the left of p and p itself must
    not exceed the number of 2s in that stretch.
    """
    x = as_word(x)
    if x[0] != 1:
        raise InvalidWeights("word must start with 1 (rotate first)")
    zeros = [i for i, c in enumerate(x) if c == 0]
    w = tuple(w)
    if len(w) != len(zeros):
        raise InvalidWeights(f"expected {len(zeros)} weights, got {len(w)}")
    if any(v < 0 for v in w):
        return False
    wt = dict(zip(zeros, w))
    for p in zeros:
        b = nearest_one_left(x, p)
        load = sum(wt[j] for j in zeros if b < j <= p)
        room = sum(1 for j in range(b + 1, p) if x[j] == 2)
        if load > room:
            return False
    return True


def consistent_lists(x):
    """All X-consistent weight lists for a word starting with 1."""
    x = as_word(x)
    zeros = [i for i, c in enumerate(x) if c == 0]
    out = []

    def rec(idx, acc):
        if idx == len(zeros):
            out.append(tuple(acc))
            return
        p = zeros[idx]
        b = nearest_one_left(x, p)
        room = sum(1 for j in range(b + 1, p) if x[j] == 2)
        prev = sum(acc[j] for j in range(idx) if zeros[j] > b)
        for v in range(room - prev + 1):
            acc.append(v)
            rec(idx + 1, acc)
            acc.pop()

    rec(0, [])
    return out


def _lift(xr, w):
    """Ball lifts on a word starting with 1; returns the top row.

    0-balls are lifted left to right.  The ball of a 0-ball with weight w is
    placed above the w-th unmarked vacancy to its left (marking the w passed
    vacancies), or directly above it when w = 0.  Lifting left to right is
    what inverts the right-to-left drop: a ball landing further left always
    claims the nearer vacancies first.
    """
    n = len(xr)
    zeros = [i for i, c in enumerate(xr) if c == 0]
    marked = [False] * n
    top = [0] * n
    for p, k in zip(zeros, w):
        if k == 0:
            top[p] = 1
            continue
        y = p - 1
        found = 0
        while True:
            if y < 0 or xr[y] == 1:
                raise InconsistentWeights(f"not enough vacancies left of site {p}")
            if xr[y] == 2 and not marked[y]:
                marked[y] = True
                found += 1
                if found == k:
                    break
            y -= 1
        top[y] = 1
    return tuple(top)


def mlq_from_weights(x, w):
    """Unique MLQ of type x whose hitting weights are w.

    Weights are listed for the 0s of x from left to right, as in drop().
    """
    x = as_word(x)
    if 1 not in x:
        raise InvalidWeights("weights only determine MLQs with at least one 1")
    s = x.index(1)
    xr = rotate(x, s)
    zeros = [i for i, c in enumerate(x) if c == 0]
    w = tuple(w)
    if len(w) != len(zeros):
        raise InvalidWeights(f"expected {len(zeros)} weights, got {len(w)}")
    # reorder to follow the rotated word
    w = tuple(v for _, v in sorted(zip(zeros, w), key=lambda z: (z[0] - s) % len(x)))
    if not is_x_consistent(xr, w):
        raise InconsistentWeights(f"{w} is not consistent with {''.join(map(str, x))}")
    top = _lift(xr, w)
    bot = tuple(0 if c == 2 else 1 for c in xr)
    return Mlq(top, bot).rotated(-s)


def enumerate_mlqs(x):
    """All MLQs whose type is exactly the word x (no rotations identified)."""
    x = as_word(x)
    if 1 not in x:
        bot = tuple(0 if c == 2 else 1 for c in x)
        return [Mlq(top, bot) for top in all_binary(len(x), x.count(0))]
    s = x.index(1)
    xr = rotate(x, s)
    zeros = [(i + s) % len(x) for i, c in enumerate(xr) if c == 0]
    out = []
    for w in consistent_lists(xr):
        wo = tuple(v for _, v in sorted(zip(zeros, w)))
        out.append(mlq_from_weights(x, wo))
    return out


def all_mlqs(size):
    """Every MLQ configuration of the given size: C(n,k) * C(n,l) of them."""
    n = size.n
    out = []
    for bot in all_binary(n, size.r + size.l):
        for top in all_binary(n, size.l):
            out.append(Mlq(top, bot))
    return out


def mlq_weight(m):
    """Monomial d^mv e^urest t^(k+l-mv-urest).

    Marked vacancies carry d, unrestricted 0-balls carry e, all other
    vacancies and 0-balls carry t.  With no 1-balls the ring only has
    20 -> 02 moves and every MLQ gets t^(k+l).
    """
    res = drop(m)
    size = classify(res.type_word)
    if size.r == 0:
        return RatePolynomial.monomial(t=size.k + size.l)
    mv = len(res.marked_vacancies)
    u = len(res.unrestricted)
    return RatePolynomial.monomial(d=mv, e=u, t=size.k + size.l - mv - u)


def class_weight(x):
    """Sum of mlq_weight over MLQ(x)."""
    total = RatePolynomial()
    for m in enumerate_mlqs(x):
        total = total + mlq_weight(m)
    return total


# ------------------------------------------------------------ Markov chain

def jump_kind(m, i, X=None):
    """Rate name ('t', 'd' or 'e') of the jump at site i, or None."""
    n = m.n
    if not m.bottom[i] or n < 2:
        return None
    X = X or mlq_type(m)
    left = X[(i - 1) % n]
    if m.top[i]:
        # occupied jump: 20 -> 02 at rate t, 10 -> 01 at rate e
        if X[i] == 0 and left == 2:
            return "t"
        if X[i] == 0 and left == 1:
            return "e"
        return None
    # vacant jump: 20 -> 02 at rate t, 21 -> 12 at rate d
    if left != 2:
        return None
    return "t" if X[i] == 0 else "d"


def omega_mlq(m, i):
    """The jump of the MLQ chain at site i (swapping sites i-1 and i).

    Occupied jump (ball above the bottom ball at i): the column at i is
    moved to just after the nearest site j left of i-1 whose particle is not
    0, shifting the columns in between one step right.

    Vacant jump (vacancy above the bottom ball at i): bottom sites i-1 and i
    are swapped, the top entry at i is removed, top entries i+1..j move one
    step left and a top vacancy is put at j, where j is the nearest site
    right of i whose particle is not 2.

    Returns m itself when no jump applies.
    """
    n = m.n
    X = mlq_type(m)
    kind = jump_kind(m, i, X)
    if kind is None:
        return m
    top, bot = list(m.top), list(m.bottom)
    im = (i - 1) % n
    if m.top[i]:
        # with no other non-0 particle the segment is the whole ring
        p = (i - 2) % n
        while X[p] == 0 and p != i:
            p = (p - 1) % n
        start = (p + 1) % n
        seg = []
        q = start
        while True:
            seg.append(q)
            if q == i:
                break
            q = (q + 1) % n
        cols = [(m.top[q], m.bottom[q]) for q in seg]
        cols = cols[-1:] + cols[:-1]
        for q, (a, b) in zip(seg, cols):
            top[q], bot[q] = a, b
    else:
        j = (i + 1) % n
        while X[j] == 2:
            j = (j + 1) % n
        bot[im], bot[i] = bot[i], bot[im]
        seg = [i]
        q = i
        while q != j:
            q = (q + 1) % n
            seg.append(q)
        vals = [m.top[q] for q in seg[1:]] + [0]
        for q, v in zip(seg, vals):
            top[q] = v
    return Mlq(tuple(top), tuple(bot))


def build_mlq_chain(size, params):
    """The MLQ chain; it projects for every size but is irreducible only for r >= 1."""
    states = all_mlqs(size)
    trans = []
    for m in states:
        X = mlq_type(m)
        for i in range(m.n):
            kind = jump_kind(m, i, X)
            if kind:
                trans.append((m, omega_mlq(m, i), getattr(params, kind)))
    return make_chain(states, trans, "mlq")
