#!/usr/bin/env python3
"""Exact period cocycle xi/24 against direct numerical integration of the q-series."""

import argparse
import random
from dataclasses import dataclass

from eisencusp.arith import divisors
from eisencusp.cusps import level_shapes
from eisencusp.dedekind import numeric_period, random_gamma0, xi


@dataclass
class Config:
    max_level: int = 15
    samples: int = 20
    max_c: int = 30
    terms: int = 4000
    seed: int = 0


def run(cfg: Config) -> float:
    rng = random.Random(cfg.seed)
    worst = 0.0
    for shape in level_shapes(cfg.max_level):
        if shape.D == 1 or shape.N > cfg.max_c:
            continue
        for M in (m for m in divisors(shape.D) if m > 1):
            errs = []
            while len(errs) < cfg.samples:
                g = random_gamma0(shape.N, cfg.max_c, rng)
                if g.c == 0:
                    continue
                exact = xi(M, shape, g) / 24
                errs.append(abs(numeric_period(M, shape, g, cfg.terms) - float(exact)))
            worst = max(worst, max(errs))
            print(f"D={shape.D:<3} C={shape.C:<3} M={M:<3} max |numeric - xi/24| = {max(errs):.2e}")
    print(f"\nworst error {worst:.2e}")
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=Config.max_level)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--terms", type=int, default=Config.terms)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    run(Config(a.max_level, a.samples, terms=a.terms, seed=a.seed))
