"""Run the verification harness over several seeds and save the reports."""
import argparse
import json
import sys
from dataclasses import dataclass, field

from twotasep import cli


@dataclass
class Config:
    seeds: list = field(default_factory=lambda: [0, 1, 2])
    ring_max_n: int = 7
    open_max_n: int = 6
    open_max_r: int = 2
    points: int = 3
    out: str = "verify_sweep.json"


def run(cfg):
    reports = [cli.verify_bijections(cfg.ring_max_n), cli.verify_flips(min(cfg.ring_max_n, 6))]
    for seed in cfg.seeds:
        reports.append(cli.verify_ring(cfg.ring_max_n, seed, cfg.points, cfg.ring_max_n))
        reports.append(cli.verify_open(cfg.open_max_n, cfg.open_max_r, seed, cfg.points))
    return reports


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=Config().seeds)
    ap.add_argument("--ring-max-n", type=int, default=Config.ring_max_n)
    ap.add_argument("--open-max-n", type=int, default=Config.open_max_n)
    ap.add_argument("--open-max-r", type=int, default=Config.open_max_r)
    ap.add_argument("--points", type=int, default=Config.points)
    ap.add_argument("--out", default=Config.out)
    a = ap.parse_args(argv)
    cfg = Config(a.seeds, a.ring_max_n, a.open_max_n, a.open_max_r, a.points, a.out)
    reports = run(cfg)
    for r in reports:
        print(f"{'PASS' if r.ok else 'FAIL'} {r.scenario:10s} seed={r.seed} "
              f"instances={r.instances} ({r.seconds:.1f}s)")
    with open(cfg.out, "w") as fh:
        json.dump([r.to_json() for r in reports], fh, indent=2)
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
