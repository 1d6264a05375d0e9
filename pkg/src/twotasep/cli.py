"""Command-line interface and cross-verification harness."""
import argparse
import csv
import io
import json
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import formulas, markov, mlq, open_boundary, trat
from .core import (InvalidParams, InvalidWord, RateParams, RatePolynomial, SizeTriple,
                   as_word, classify, cyclic_class, enumerate_states, frac_str,
                   make_rng, parse_params, random_params, ring_sizes, rotate, word_str)

REPORT_VERSION = 1


# ------------------------------------------------------------ reports

def to_jsonable(x):
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, RateParams):
        return {k: frac_str(v) for k, v in x.as_dict().items()}
    if isinstance(x, RatePolynomial):
        return str(x)
    if isinstance(x, (mlq.Mlq, open_boundary.Amlq, trat.NestedPaths)):
        return str(x)
    if isinstance(x, trat.TratFilling):
        return x.to_json()
    if isinstance(x, SizeTriple):
        return {"k": x.k, "r": x.r, "l": x.l}
    if isinstance(x, tuple) and all(isinstance(c, int) and c in (0, 1, 2) for c in x):
        return word_str(x) if x else ""
    if isinstance(x, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in x]
    return x


@dataclass
class VerificationReport:
    scenario: str
    seed: int
    instances: int = 0
    identities: dict = field(default_factory=dict)  # name -> {"checked", "failed"}
    counterexample: dict = None
    seconds: float = 0.0

    @property
    def ok(self):
        return all(v["failed"] == 0 for v in self.identities.values())

    def to_json(self):
        return {
            "version": REPORT_VERSION,
            "scenario": self.scenario,
            "seed": self.seed,
            "instances": self.instances,
            "identities": {k: dict(v, passed=v["failed"] == 0) for k, v in self.identities.items()},
            "passed": self.ok,
            "counterexample": to_jsonable(self.counterexample),
            "seconds": round(self.seconds, 3),
        }


class Checker:
    def __init__(self, scenario, seed):
        self.report = VerificationReport(scenario, seed)
        self.start = time.perf_counter()

    def check(self, identity, ok, **payload):
        rec = self.report.identities.setdefault(identity, {"checked": 0, "failed": 0})
        rec["checked"] += 1
        if not ok:
            rec["failed"] += 1
            if self.report.counterexample is None:
                self.report.counterexample = dict(identity=identity, **payload)
        return ok

    def done(self):
        self.report.seconds = time.perf_counter() - self.start
        return self.report


def random_points(seed, count, names=("t", "d", "e"), **fixed):
    rng = make_rng(seed)
    return [random_params(rng, names=names, **fixed) for _ in range(count)]


# ------------------------------------------------------------ ring helpers

def canonical(x):
    """Rotation of x starting at its first 1 (x itself when there is none)."""
    return rotate(x, x.index(1)) if 1 in x else x


def ring_class_table(size, params=None):
    """{class representative: (o, weight)} with weight = MLQ weight sum
    (a count at unit rates, a number at the given rates)."""
    _, classes = enumerate_states(size)
    out = {}
    for c in classes:
        x = canonical(c.representative)
        if params is None:
            w = len(mlq.enumerate_mlqs(x))
        else:
            w = mlq.class_weight(x).evaluate(params)
        out[x] = (c.order, w)
    return out


def ring_probability(word, params=None):
    x = as_word(word)
    size = classify(x)
    table = ring_class_table(size, params)
    key = canonical(cyclic_class(x).representative)
    o, w = table[key]
    z = sum(o_ * w_ for o_, w_ in table.values())
    return {"class": word_str(key), "o": o, "weight": w,
            "probability": Fraction(o * w, 1) / z}


def open_probability(word, params):
    x = open_boundary._word(word)
    n, r = len(x), x.count(1)
    weights = open_boundary.amlq_stationary_weights(n, r, params)
    z = sum(weights.values())
    return weights.get(x, Fraction(0)), z


# ------------------------------------------------------------ verification

def verify_ring(max_n=7, seed=0, points=3, inhom_max_n=7):
    ch = Checker("ring", seed)
    pts = random_points(seed, points)
    for n in range(1, max_n + 1):
        for size in ring_sizes(n):
            total = comb(n, size.k) * comb(n, size.l)
            pi = markov.ring_stationary(size)
            ch.check("solver: rotation invariance", markov.is_rotation_invariant(pi), size=size)
            _, classes = enumerate_states(size)
            polys = {}
            for c in classes:
                ch.report.instances += 1
                x = canonical(c.representative)
                prob = c.order * pi[c.representative]
                n_mlq = len(mlq.enumerate_mlqs(x))
                n_trat = trat.trat_count(x)
                n_det = formulas.det_weight(x)
                for name, v in (("mlq", n_mlq), ("trat", n_trat), ("det", n_det)):
                    ch.check(f"solver = o|{name}|/C(n,k)C(n,l)",
                             prob == Fraction(c.order * v, total), word=x, solver=prob, count=v)
                if size.r:
                    tr = formulas.ansatz_trace_ring(x)
                    ch.check("ansatz trace at unit rates = |MLQ|", tr == n_mlq, word=x, trace=tr, count=n_mlq)
                if n <= inhom_max_n:
                    p_m = mlq.class_weight(x)
                    polys[c.representative] = p_m
                    if size.r:
                        p_t = trat.class_trat_weight(x)
                        ch.check("sum wt(TRAT) = sum wt(MLQ)", p_t == p_m, word=x, trat=p_t, mlq=p_m)
                    ch.check("weight degree k+l",
                             p_m.degree() == {size.k + size.l}, word=x, weight=p_m)
            if n > inhom_max_n:
                continue
            for p in pts:
                pi_p = markov.ring_stationary(size, p)
                vals = {rep: polys[rep].evaluate(p) for rep in polys}
                z = sum(c.order * vals[c.representative] for c in classes)
                for c in classes:
                    x = canonical(c.representative)
                    ch.check("solver = sum wt(MLQ)/Z (inhomogeneous)",
                             pi_p[c.representative] == vals[c.representative] / z,
                             word=x, params=p, solver=pi_p[c.representative],
                             mlq=vals[c.representative] / z)
                    if size.r:
                        tr = formulas.ansatz_trace_ring(x, p)
                        lhs = formulas.ring_normalizer(size, p) * tr
                        ch.check("t^(k+l) d^k e^l trace = sum wt(MLQ)", lhs == vals[c.representative],
                                 word=x, params=p, ansatz=lhs, mlq=vals[c.representative])
    for size in (SizeTriple(2, 1, 2), SizeTriple(1, 2, 2)):
        for p in [RateParams()] + pts[:1]:
            ok, detail = check_omega_mlq(size, p)
            ch.check("Omega-MLQ projects and is stationary for wt", ok, size=size, params=p, **detail)
    return ch.done()


def check_omega_mlq(size, params):
    chain = mlq.build_mlq_chain(size, params)
    rep = markov.check_projection(chain, markov.build_ring_chain(size, params), mlq.mlq_type)
    pi = markov.stationary_exact(chain)
    w = {m: mlq.mlq_weight(m).evaluate(params) for m in chain.states}
    z = sum(w.values())
    stat = all(pi[m] == w[m] / z for m in chain.states)
    return rep.ok and stat, {"projection_violations": len(rep.violations), "stationary_match": stat}


def verify_open(max_n=6, max_r=2, seed=0, points=3):
    ch = Checker("open", seed)
    oracle = open_boundary.select_convention(min(max_n, 5), 3, points, seed)
    ch.check("ufree/lfree oracle selects the definition reading",
             oracle == {"definition": True, "proof": False}, oracle=oracle)
    pts = random_points(seed, points, names=("d", "e", "alpha", "beta"))
    tpts = random_points(seed + 1, 1, names=("t", "d", "e", "alpha", "beta"))
    for n in range(1, max_n + 1):
        for r in range(0, min(n, max_r) + 1):
            for p in pts + tpts:
                pi = markov.stationary_exact(markov.build_open_chain(n, r, p))
                z_ans = formulas.open_partition_function(n, r, p)
                for x in pi:
                    a = formulas.ansatz_open(x, p)
                    ch.check("solver = <w|X|v>/Z (sector matrices)", pi[x] == a / z_ans,
                             word=x, params=p, solver=pi[x], ansatz=a / z_ans)
                if p.t != 1:
                    continue
                w = open_boundary.amlq_stationary_weights(n, r, p)
                z = sum(w.values())
                for x in pi:
                    ch.report.instances += 1
                    ch.check("solver = sum wt_e(AMLQ)/Z", pi[x] == w.get(x, 0) / z,
                             word=x, params=p, solver=pi[x], amlq=w.get(x, 0) / z)
            p = pts[0]
            for x in markov.open_words(n, r):
                hom = open_boundary.class_amlq_weight(x, enhanced=False).evaluate(p)
                u = formulas.uchiyama_numerator(x, p.alpha, p.beta)
                ch.check("alpha^k beta^l <w|X|v> = sum wt(AMLQ) (homogeneous)", u == hom,
                         word=x, uchiyama=u, amlq=hom)
    a, b = Fraction(1, 2), Fraction(1, 3)
    num = formulas.uchiyama_numerator("20201210", a, b)
    want = a ** 3 * b ** 3 * (2 * a ** 3 * b ** 3 + 2 * a ** 2 * b ** 3 + a * b ** 3)
    ch.check("numerator of 20201210", num == want, value=num, expected=want)
    for n in range(0, max_n + 1):
        for r in range(0, n + 1):
            counts = Counter()
            for am in open_boundary.enumerate_amlqs(n, r):
                f = open_boundary.rat_from_amlq(am)
                counts[f.type_word] += 1
                ch.check("rat round trip", open_boundary.amlq_from_rat(f) == am, amlq=am)
                ch.check("rat stats = amlq stats",
                         open_boundary.rat_stats(f) == open_boundary.amlq_stats(am), amlq=am)
                ch.check("embedding round trip",
                         open_boundary.unembed_mlq(open_boundary.embed_amlq(am)) == am, amlq=am)
            for x, c in counts.items():
                ch.check("|RAT(X)| = |AMLQ(X)|", len(open_boundary.enumerate_rats(x)) == c, word=x)
    for p in [pts[0], RateParams()]:
        ok, detail = check_omega_amlq(4, 1, p)
        ch.check("Omega-AMLQ projects and is stationary for wt_e", ok, params=p, **detail)
    return ch.done()


def check_omega_amlq(n, r, params):
    chain = open_boundary.build_amlq_chain(n, r, params)
    rep = markov.check_projection(chain, markov.build_open_chain(n, r, params),
                                  open_boundary.amlq_type)
    pi = markov.stationary_exact(chain)
    w = {a: open_boundary.amlq_weight(a).evaluate(params) for a in chain.states}
    z = sum(w.values())
    stat = all(pi[a] == w[a] / z for a in chain.states)
    return rep.ok and stat, {"projection_violations": len(rep.violations), "stationary_match": stat}


def verify_bijections(max_n=7, seed=0):
    ch = Checker("bijections", seed)
    for n in range(1, max_n + 1):
        for size in ring_sizes(n):
            for m in mlq.all_mlqs(size):
                ch.report.instances += 1
                x = mlq.mlq_type(m)
                rev = mlq.type_with_order(m, range(n))
                ch.check("type independent of drop order", rev == x, mlq=m)
                if not size.r:
                    continue
                res = mlq.drop(m)
                ch.check("sum of weights = marked vacancies",
                         sum(res.weights) == len(res.marked_vacancies), mlq=m)
                ch.check("lift(drop(M)) = M", mlq.mlq_from_weights(x, res.weights) == m, mlq=m)
                f = trat.trat_from_mlq(m)
                back = trat.mlq_from_trat(f)
                ch.check("mlq(trat(M)) = M up to rotation", back == m.rotated(res.shift), mlq=m)
                ch.check("wt(trat(M)) = wt(M)", trat.trat_weight(f) == mlq.mlq_weight(m), mlq=m)
            if not size.r:
                continue
            _, classes = enumerate_states(size)
            for c in classes:
                x = canonical(c.representative)
                fs = trat.enumerate_fillings(trat.canonical_tiling(x))
                ms = mlq.enumerate_mlqs(x)
                ch.check("trat(MLQ(X)) = TRAT(X)", {trat.trat_from_mlq(m) for m in ms} == set(fs), word=x)
                for f in fs:
                    ch.check("trat(mlq(R)) = R", trat.trat_from_mlq(trat.mlq_from_trat(f)) == f, word=x)
                    ch.check("trat(paths(R)) = R",
                             trat.trat_from_paths(trat.paths_from_trat(f)) == f, word=x)
                pm = {trat.paths_from_mlq(m) for m in ms}
                pt = {trat.paths_from_trat(f) for f in fs}
                ch.check("paths(MLQ(X)) = paths(TRAT(X))", pm == pt, word=x)
                ch.check("paths compatible", all(trat.is_compatible(p) for p in pm), word=x)
    return ch.done()


def verify_flips(max_n=6, seed=0):
    ch = Checker("flips", seed)
    for n in range(1, max_n + 1):
        for size in ring_sizes(n, min_r=1):
            _, classes = enumerate_states(size)
            for c in classes:
                x = canonical(c.representative)
                T = trat.canonical_tiling(x)
                fs = trat.enumerate_fillings(T)
                total = sum((trat.trat_weight(f) for f in fs), RatePolynomial())
                for h in trat.hexagons(T):
                    ch.report.instances += 1
                    T2 = trat.flip(T, h)
                    fs2 = trat.enumerate_fillings(T2)
                    total2 = sum((trat.trat_weight(f) for f in fs2), RatePolynomial())
                    ch.check("flip preserves filling count", len(fs2) == len(fs), word=x, hexagon=str(h))
                    ch.check("flip preserves weight sum", total2 == total, word=x, hexagon=str(h))
                    ch.check("flip is an involution", trat.flip(T2, h) == T, word=x, hexagon=str(h))
                    try:
                        imgs = [trat.transport(f, h) for f in fs]
                        ok = (set(imgs) == set(fs2)
                              and all(trat.trat_weight(a) == trat.trat_weight(b) for a, b in zip(fs, imgs))
                              and all(trat.transport(g, h) == f for f, g in zip(fs, imgs)))
                    except trat.InvalidFilling:
                        ok = False
                    ch.check("transport is a weight-preserving bijection", ok, word=x, hexagon=str(h))
    return ch.done()


# ------------------------------------------------------------ commands

def _params(args):
    p = parse_params(getattr(args, "params", None))
    kw = {}
    if getattr(args, "alpha", None):
        kw["alpha"] = Fraction(args.alpha)
    if getattr(args, "beta", None):
        kw["beta"] = Fraction(args.beta)
    return p.replace(**kw) if kw else p


def _size(args):
    return SizeTriple(args.k, args.r, args.l)


def cmd_states(args):
    size = _size(args)
    words, classes = enumerate_states(size)
    return {"size": size, "words": len(words),
            "classes": [{"class": c.representative, "o": c.order} for c in classes]}


def cmd_prob(args):
    params = _params(args)
    if args.mode == "ring":
        unit = params == RateParams()
        out = ring_probability(args.word, None if unit else params)
        x = as_word(args.word)
        size = classify(x)
        pi = markov.ring_stationary(size, params)
        rep = cyclic_class(x)
        solver = rep.order * pi[rep.representative]
        out["solver"] = solver
        out["agree"] = solver == out["probability"]
        return out
    x = open_boundary._word(args.word)
    num, z = open_probability(x, params)
    prob = num / z
    ans = formulas.ansatz_open(x, params) / formulas.open_partition_function(len(x), x.count(1), params)
    out = {"word": x, "amlq_weight": num, "z": z, "probability": prob, "ansatz": ans,
           "agree": ans == prob}
    if params.t == 1 and params.d == 1 and params.e == 1:
        out["uchiyama_numerator"] = formulas.uchiyama_numerator(x, params.alpha, params.beta)
    if len(x) <= 10:
        pi = markov.stationary_exact(markov.build_open_chain(len(x), x.count(1), params))
        out["solver"] = pi[x]
        out["agree"] = out["agree"] and pi[x] == prob
    return out


def cmd_mlq(args):
    if args.action == "enumerate":
        x = as_word(args.word)
        ms = mlq.enumerate_mlqs(x)
        return {"type": x, "count": len(ms),
                "mlqs": [{"mlq": str(m), "weight": mlq.mlq_weight(m)} for m in ms]}
    if args.action == "drop":
        m = mlq.Mlq.parse(args.mlq)
        res = mlq.drop(m)
        return {"mlq": str(m), "type": res.type_word, "shift": res.shift,
                "zero_ball_sites": list(res.zero_ball_sites), "weights": list(res.weights),
                "marked_vacancies": sorted(res.marked_vacancies),
                "unrestricted": sorted(res.unrestricted), "weight": mlq.mlq_weight(m)}
    x = as_word(args.word)
    w = [int(v) for v in args.weights.split(",")] if args.weights else []
    m = mlq.mlq_from_weights(x, w)
    return {"type": x, "weights": w, "mlq": str(m)}


def cmd_trat(args):
    x = canonical(as_word(args.word))
    if 1 not in x:
        raise trat.NotRotated("tableaux need at least one 1")
    fs = trat.enumerate_fillings(trat.canonical_tiling(x))
    if args.action == "enumerate":
        return {"type": x, "count": len(fs), "fillings": [f.to_json() for f in fs]}
    if args.action == "weight":
        total = sum((trat.trat_weight(f) for f in fs), RatePolynomial())
        return {"type": x, "count": len(fs), "weight": total,
                "value": total.evaluate(_params(args))}
    return {"type": x, "paths": [str(trat.paths_from_trat(f)) for f in fs]}


def cmd_det(args):
    x = as_word(args.word)
    out = {"word": x, "weight": formulas.det_weight(x)}
    if 1 in x:
        rows = []
        for run in formulas.intervals(x):
            lam = formulas.lambda_partition(run)
            rows.append({"interval": run, "lambda": list(lam),
                         "det": formulas.det_int(formulas.binomial_matrix(lam))})
        out["intervals"] = rows
    return out


def cmd_ansatz(args):
    params = _params(args)
    x = as_word(args.word) if args.mode == "ring" else open_boundary._word(args.word)
    if args.mode == "ring":
        tr = formulas.ansatz_trace_ring(x, params)
        size = classify(x)
        return {"word": x, "trace": tr,
                "mlq_weight_sum": formulas.ring_normalizer(size, params) * tr}
    n, r = len(x), x.count(1)
    val = formulas.ansatz_open(x, params)
    z = formulas.open_partition_function(n, r, params)
    return {"word": x, "bracket": val, "z": z, "probability": val / z}


def cmd_chain(args):
    params = _params(args)
    size = _size(args)
    if args.kind == "ring":
        chain = markov.build_ring_chain(size, params)
    elif args.kind == "mlq":
        chain = mlq.build_mlq_chain(size, params)
    elif args.kind == "open":
        chain = markov.build_open_chain(size.n, size.r, params)
    else:
        chain = open_boundary.build_amlq_chain(size.n, size.r, params)
    out = {"kind": args.kind, "states": len(chain.states), "transitions": len(chain.rates())}
    if args.action == "solve":
        pi = markov.stationary_exact(chain)
        out["stationary"] = [[str(to_jsonable(s)), v] for s, v in sorted(pi.items(), key=lambda kv: str(kv[0]))]
    elif args.action == "project":
        if args.kind == "mlq":
            coarse, f = markov.build_ring_chain(size, params), mlq.mlq_type
        elif args.kind == "amlq":
            coarse, f = markov.build_open_chain(size.n, size.r, params), open_boundary.amlq_type
        else:
            raise InvalidParams("project needs --kind mlq or amlq")
        rep = markov.check_projection(chain, coarse, f)
        out.update(ok=rep.ok, violations=rep.violations[:10],
                   fine_transitions=rep.fine_transitions, coarse_transitions=rep.coarse_transitions)
        out["_exit"] = 0 if rep.ok else 1
    return out


def cmd_verify(args):
    names = ["ring", "open", "bijections", "flips"] if args.what == "all" else [args.what]
    reports = []
    for name in names:
        if name == "ring":
            reports.append(verify_ring(args.max_n or 7, args.seed, args.points,
                                       min(args.max_n or 7, 7)))
        elif name == "open":
            reports.append(verify_open(args.max_n or 6, args.max_r, args.seed, args.points))
        elif name == "bijections":
            reports.append(verify_bijections(args.max_n or 7, args.seed))
        else:
            reports.append(verify_flips(args.max_n or 6, args.seed))
    ok = all(r.ok for r in reports)
    return {"passed": ok, "reports": [r.to_json() for r in reports], "_exit": 0 if ok else 1}


def table_csv(size, params):
    table = ring_class_table(size, None if params == RateParams() else params)
    z = sum(o * w for o, w in table.values())
    buf = io.StringIO()
    wr = csv.writer(buf)
    wr.writerow(["class", "o", "weight", "class_probability"])
    for rep, (o, w) in sorted(table.items()):
        wr.writerow([word_str(rep), o, frac_str(w), frac_str(Fraction(o) * w / z)])
    return buf.getvalue()


def build_parser():
    p = argparse.ArgumentParser(prog="twotasep", description="Exact two-species TASEP toolkit.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, size=False):
        sp.add_argument("--params", default=None, help="t=p/q,d=p/q,e=p/q,alpha=p/q,beta=p/q")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        if size:
            sp.add_argument("--k", type=int, required=True, help="number of 2s")
            sp.add_argument("--r", type=int, required=True, help="number of 1s")
            sp.add_argument("--l", type=int, required=True, help="number of 0s")

    sp = sub.add_parser("states", help="words and cyclic classes of a size")
    common(sp, size=True)
    sp.add_argument("--csv", action="store_true", help="per-class probability table as CSV")

    sp = sub.add_parser("prob", help="stationary probability of a word")
    sp.add_argument("mode", choices=["ring", "open"])
    sp.add_argument("--word", required=True)
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    common(sp)

    sp = sub.add_parser("mlq", help="multiline queues")
    sp.add_argument("action", choices=["enumerate", "drop", "lift"])
    sp.add_argument("--word")
    sp.add_argument("--mlq", help='two rows, e.g. "010010|110110"')
    sp.add_argument("--weights", help="comma separated hitting weights")
    common(sp)

    sp = sub.add_parser("trat", help="toric rhombic tableaux")
    sp.add_argument("action", choices=["enumerate", "weight", "paths"])
    sp.add_argument("--word", required=True)
    common(sp)

    sp = sub.add_parser("det", help="determinant formula for the class weight")
    sp.add_argument("--word", required=True)
    common(sp)

    sp = sub.add_parser("ansatz", help="matrix product evaluation")
    sp.add_argument("mode", choices=["ring", "open"])
    sp.add_argument("--word", required=True)
    common(sp)

    sp = sub.add_parser("chain", help="Markov chains")
    sp.add_argument("action", choices=["build", "solve", "project"])
    sp.add_argument("--kind", choices=["ring", "mlq", "open", "amlq"], default="ring")
    common(sp, size=True)

    sp = sub.add_parser("verify", help="cross-verification harness")
    sp.add_argument("what", choices=["ring", "open", "bijections", "flips", "all"])
    sp.add_argument("--max-n", type=int, default=None)
    sp.add_argument("--max-r", type=int, default=2)
    sp.add_argument("--points", type=int, default=3)
    common(sp)
    return p


COMMANDS = {"states": cmd_states, "prob": cmd_prob, "mlq": cmd_mlq, "trat": cmd_trat,
            "det": cmd_det, "ansatz": cmd_ansatz, "chain": cmd_chain, "verify": cmd_verify}


def _human(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, list) and not any(isinstance(u, (dict, list)) for u in v):
                lines.append(f"{pad}{k}: " + " ".join(str(u) for u in v))
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list) and not any(isinstance(v, (dict, list)) for v in obj):
        lines.append(pad + " ".join(str(v) for v in obj))
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.extend(_human(v, indent))
                lines.append(f"{pad}-")
            else:
                lines.append(f"{pad}{v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "states" and args.csv:
            sys.stdout.write(table_csv(_size(args), _params(args)))
            return 0
        if args.command == "mlq" and ((args.action in ("enumerate", "lift") and not args.word)
                                      or (args.action == "drop" and not args.mlq)):
            parser.error(f"mlq {args.action} needs --word" if args.action != "drop" else "mlq drop needs --mlq")
        out = COMMANDS[args.command](args)
    except (InvalidWord, InvalidParams, ValueError, mlq.InvalidMlq) as exc:
        if isinstance(exc, AssertionError):
            raise
        print(f"error: {exc}", file=sys.stderr)
        return 2
    code = out.pop("_exit", 0) if isinstance(out, dict) else 0
    data = to_jsonable(out)
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print("\n".join(_human(data)))
    return code


if __name__ == "__main__":
    sys.exit(main())
