"""Compare the readings of the open-boundary AMLQ rules against the solver.

1. Validity: the prefix condition vs "no drop wraps".
2. ufree/lfree: restricted 0-balls on the left and unmarked vacancies on the
   right ("definition") vs the swapped reading ("proof").
3. A candidate explicit homogeneous representation vs the bulk relations.
"""
import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from twotasep import formulas, markov
from twotasep import open_boundary as ob
from twotasep.core import all_binary, make_rng, random_params


@dataclass
class Config:
    max_n: int = 5
    max_r: int = 3
    points: int = 3
    seed: int = 0


def candidates(n, r):
    for l in range(n - r + 1):
        for bot in all_binary(n, l + r):
            for top in all_binary(n, l):
                yield ob.Amlq(top, bot)


def validity_table(cfg):
    print("n r  candidates  no-wrap  prefix-reading  both")
    for n in range(1, cfg.max_n + 1):
        for r in range(0, min(n, cfg.max_r) + 1):
            cands = list(candidates(n, r))
            good = [ob.validate_amlq(a) for a in cands]
            pref = [ob.prefix_condition(a) for a in cands]
            both = sum(g and q for g, q in zip(good, pref))
            print(f"{n} {r}  {len(cands):10d}  {sum(good):7d}  {sum(pref):14d}  {both:4d}")


def convention_table(cfg):
    rng = make_rng(cfg.seed)
    pts = [random_params(rng, names=("d", "e", "alpha", "beta")) for _ in range(cfg.points)]
    print("n r  " + "  ".join(f"{c}-mismatch" for c in ob.CONVENTIONS))
    for n in range(1, cfg.max_n + 1):
        for r in range(0, min(n, cfg.max_r) + 1):
            bad = {c: 0 for c in ob.CONVENTIONS}
            for p in pts:
                pi = markov.stationary_exact(markov.build_open_chain(n, r, p))
                for c in ob.CONVENTIONS:
                    try:
                        w = ob.amlq_stationary_weights(n, r, p, True, c)
                    except ob.ConventionViolation:
                        bad[c] += len(pi)
                        continue
                    z = sum(w.values())
                    bad[c] += sum(1 for x in pi if pi[x] != w.get(x, 0) / z)
            print(f"{n} {r}  " + "  ".join(f"{bad[c]:>{len(c) + 9}d}" for c in ob.CONVENTIONS))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    ap.add_argument("--max-r", type=int, default=Config.max_r)
    ap.add_argument("--points", type=int, default=Config.points)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args(argv)
    cfg = Config(a.max_n, a.max_r, a.points, a.seed)
    print("# AMLQ validity")
    validity_table(cfg)
    print("\n# ufree/lfree readings (mismatching words against the solver)")
    convention_table(cfg)
    print("\n# explicit homogeneous matrices")
    D, A, E = formulas.explicit_homogeneous_matrices(Fraction(1, 2), Fraction(1, 3), 8)
    print("failing relations:", formulas.homogeneous_relation_failures(D, A, E) or "none")
    print("selected:", ob.select_convention(cfg.max_n, cfg.max_r, cfg.points, cfg.seed))
    return 0


if __name__ == "__main__":
    sys.exit(main())
