"""Write per-class stationary tables for every ring size up to max_n.

Columns: size, class, o, MLQ weight polynomial, weight at the given rates,
class probability, and the solver's value for comparison.
"""
import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from twotasep import markov, mlq
from twotasep.core import enumerate_states, frac_str, parse_params, ring_sizes, word_str


@dataclass
class Config:
    max_n: int = 6
    params: str = ""
    out: str = "-"


def rows(cfg):
    p = parse_params(cfg.params)
    for n in range(1, cfg.max_n + 1):
        for size in ring_sizes(n):
            _, classes = enumerate_states(size)
            pi = markov.ring_stationary(size, p)
            polys = {}
            for c in classes:
                w = c.representative
                x = w[w.index(1):] + w[:w.index(1)] if 1 in w else w
                polys[c] = (x, mlq.class_weight(x))
            z = sum(c.order * poly.evaluate(p) for c, (_, poly) in polys.items())
            for c, (x, poly) in polys.items():
                prob = Fraction(c.order) * poly.evaluate(p) / z
                solver = c.order * pi[c.representative]
                yield [size.k, size.r, size.l, word_str(x), c.order, str(poly),
                       frac_str(poly.evaluate(p)), frac_str(prob), frac_str(solver)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    ap.add_argument("--params", default=Config.params)
    ap.add_argument("--out", default=Config.out)
    a = ap.parse_args(argv)
    cfg = Config(a.max_n, a.params, a.out)
    fh = sys.stdout if cfg.out == "-" else open(cfg.out, "w", newline="")
    wr = csv.writer(fh)
    wr.writerow(["k", "r", "l", "class", "o", "weight", "weight_value", "probability", "solver"])
    mismatches = 0
    for row in rows(cfg):
        mismatches += row[7] != row[8]
        wr.writerow(row)
    if fh is not sys.stdout:
        fh.close()
    print(f"mismatches: {mismatches}", file=sys.stderr)
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
