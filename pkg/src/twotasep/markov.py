"""Exact continuous-time Markov chains for the two-species TASEP.

Chains are stored as explicit transition lists with Fraction rates and solved
exactly with FLINT's rational matrices.
"""
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import flint
import networkx as nx

from .core import (InvalidParams, RateParams, SizeTriple, cyclic_class,
                   enumerate_words, rotate)

RING_RATES = {(2, 0): "t", (2, 1): "d", (1, 0): "e"}


class NotIrreducible(ValueError):
    def __init__(self, components):
        self.components = components
        super().__init__(f"chain has {len(components)} strongly connected components")


class InvalidProjectionMap(ValueError):
    pass


@dataclass(frozen=True)
class ChainSpec:
    states: tuple
    transitions: tuple  # (from, to, rate)
    kind: str = "generic"

    def rates(self):
        """Aggregated rates {(a, b): rate}, dropping self loops."""
        out = defaultdict(Fraction)
        for a, b, q in self.transitions:
            if a != b:
                out[(a, b)] += q
        return dict(out)


def make_chain(states, transitions, kind="generic"):
    states = tuple(states)
    clean = []
    for a, b, q in transitions:
        q = Fraction(q)
        if a == b:
            continue
        if q <= 0:
            raise InvalidParams(f"non-positive rate {q}")
        clean.append((a, b, q))
    return ChainSpec(states, tuple(clean), kind)


def _swap(w, i, j):
    v = list(w)
    v[i], v[j] = v[j], v[i]
    return tuple(v)


def ring_moves(w, params):
    """(position, new word, rate) for every ring move out of w."""
    n = len(w)
    rates = {pair: getattr(params, name) for pair, name in RING_RATES.items()}
    out = []
    for i in range(n):
        j = (i + 1) % n
        if n > 1 and (w[i], w[j]) in rates:
            out.append((i, _swap(w, i, j), rates[(w[i], w[j])]))
    return out


def build_ring_chain(size, params=RateParams()):
    if size.n < 1:
        raise InvalidParams("empty ring")
    words = enumerate_words(size)
    trans = [(w, v, q) for w in words for _, v, q in ring_moves(w, params)]
    return make_chain(words, trans, "ring")


def open_words(n, r):
    if r > n or r < 0:
        raise InvalidParams(f"need 0 <= r <= n, got r={r}, n={n}")
    out = []
    for k in range(n - r + 1):
        out.extend(enumerate_words(SizeTriple(k, r, n - r - k)))
    return sorted(out)


def open_moves(w, params):
    """(site, new word, rate) for the open chain; site 0 is the left boundary,
    site n the right boundary, site i (1..n-1) the bond (i-1, i)."""
    rates = {pair: getattr(params, name) for pair, name in RING_RATES.items()}
    n = len(w)
    out = []
    if w[0] == 0:
        out.append((0, (2,) + w[1:], params.alpha))
    for i in range(n - 1):
        if (w[i], w[i + 1]) in rates:
            out.append((i + 1, _swap(w, i, i + 1), rates[(w[i], w[i + 1])]))
    if w[-1] == 2:
        out.append((n, w[:-1] + (0,), params.beta))
    return out


def build_open_chain(n, r, params=RateParams()):
    words = open_words(n, r)
    trans = [(w, v, q) for w in words for _, v, q in open_moves(w, params)]
    return make_chain(words, trans, "open")


# -------------------------------------------------------------- solving

def components(chain):
    g = nx.DiGraph()
    g.add_nodes_from(chain.states)
    g.add_edges_from((a, b) for a, b, _ in chain.transitions)
    return [sorted(c) for c in nx.strongly_connected_components(g)]


def check_irreducible(chain):
    comps = components(chain)
    if len(comps) != 1:
        raise NotIrreducible(comps)


def residual(chain, pi):
    """pi Q as a dict; identically zero for a stationary vector."""
    res = defaultdict(Fraction)
    for a, b, q in chain.transitions:
        flow = pi[a] * q
        res[b] += flow
        res[a] -= flow
    return {s: v for s, v in res.items() if v}


def stationary_exact(chain, check=True):
    """Exact stationary distribution of an irreducible chain.

    Solves Q^T x = 0 with one equation replaced by sum(x) = 1 using FLINT's
    exact rational solver.  The result is checked against pi Q = 0.
    """
    if check:
        check_irreducible(chain)
    states = chain.states
    idx = {s: i for i, s in enumerate(states)}
    N = len(states)
    if N == 1:
        return {states[0]: Fraction(1)}
    M = flint.fmpq_mat(N, N)
    for (a, b), q in chain.rates().items():
        i, j = idx[a], idx[b]
        fq = flint.fmpq(q.numerator, q.denominator)
        if j != N - 1:
            M[j, i] += fq
        if i != N - 1:
            M[i, i] -= fq
    for j in range(N):
        M[N - 1, j] = 1
    rhs = flint.fmpq_mat(N, 1)
    rhs[N - 1, 0] = 1
    x = M.solve(rhs)
    pi = {s: Fraction(int(x[i, 0].p), int(x[i, 0].q)) for s, i in idx.items()}
    if check:
        assert sum(pi.values()) == 1
        bad = residual(chain, pi)
        assert not bad, f"non-zero residual at {len(bad)} states"
    return pi


def lumped_chain(chain, f):
    """Quotient chain under f, after checking strong lumpability exactly.

    Every state in a block must have the same total rate into every other
    block; otherwise ValueError.
    """
    blocks = defaultdict(list)
    for s in chain.states:
        blocks[f(s)].append(s)
    out_rates = defaultdict(lambda: defaultdict(Fraction))
    for (a, b), q in chain.rates().items():
        fa, fb = f(a), f(b)
        if fa != fb:
            out_rates[a][fb] += q
    trans = {}
    for blk, members in blocks.items():
        ref = dict(out_rates[members[0]])
        for s in members[1:]:
            if dict(out_rates[s]) != ref:
                raise ValueError(f"not lumpable at block {blk}")
        for target, q in ref.items():
            trans[(blk, target)] = q
    return make_chain(sorted(blocks), [(a, b, q) for (a, b), q in trans.items()],
                      chain.kind + "-lumped")


def ring_stationary(size, params=RateParams(), method="auto"):
    """Stationary distribution of the ring chain on words.

    method="words" solves the word-level chain directly.  method="classes"
    solves the quotient chain on cyclic classes (the ring chain commutes with
    rotation, and strong lumpability is verified), spreads each class
    probability evenly over its rotations, and re-checks pi Q = 0 on the full
    word-level chain.  "auto" picks classes above 600 words.
    """
    chain = build_ring_chain(size, params)
    if method == "auto":
        method = "words" if len(chain.states) <= 600 else "classes"
    if method == "words":
        return stationary_exact(chain)
    rep = {}
    for w in chain.states:
        rep[w] = cyclic_class(w)
    q = lumped_chain(chain, lambda w: rep[w].representative)
    pic = stationary_exact(q)
    pi = {w: pic[rep[w].representative] / rep[w].order for w in chain.states}
    assert sum(pi.values()) == 1
    assert not residual(chain, pi)
    return pi


def class_probabilities(pi):
    """Sum a word-level ring distribution over cyclic classes."""
    out = defaultdict(Fraction)
    for w, p in pi.items():
        out[cyclic_class(w).representative] += p
    return dict(out)


def is_rotation_invariant(pi):
    return all(pi[rotate(w, 1)] == p for w, p in pi.items())


# ------------------------------------------------------------ projection

@dataclass
class ProjectionReport:
    ok: bool
    violations: list = field(default_factory=list)
    fine_transitions: int = 0
    coarse_transitions: int = 0


def check_projection(fine, coarse, f):
    """Check that `fine` projects onto `coarse` under the state map f.

    1. every fine transition x1 -> x2 has the rate of f(x1) -> f(x2);
    2. for every coarse transition y1 -> y2 and every x1 over y1 there is
       exactly one x2 over y2 reachable from x1 in one step.
    Rate equality in (2) follows from (1), so each corrupted rate is reported
    once.
    """
    image = {s: f(s) for s in fine.states}
    missing = set(coarse.states) - set(image.values())
    if missing:
        raise InvalidProjectionMap(f"{len(missing)} coarse states are not hit")
    fr = fine.rates()
    cr = coarse.rates()
    fiber = defaultdict(list)
    for s, y in image.items():
        fiber[y].append(s)
    succ = defaultdict(lambda: defaultdict(list))
    violations = []
    for (a, b), q in fr.items():
        ya, yb = image[a], image[b]
        succ[a][yb].append(b)
        want = cr.get((ya, yb))
        if want != q:
            violations.append({"kind": "rate", "from": a, "to": b,
                               "fine_rate": q, "coarse_rate": want})
    for (y1, y2) in cr:
        for x1 in fiber[y1]:
            hits = succ[x1].get(y2, [])
            if len(hits) != 1:
                violations.append({"kind": "lift", "from": x1, "coarse": (y1, y2),
                                   "successors": hits})
    return ProjectionReport(not violations, violations, len(fr), len(cr))
