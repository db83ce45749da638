#!/usr/bin/env python3
"""Closed-form constant terms against the bracket-peeling recursion, per level shape.

Prints one line per shape with the number of indices, cusp values compared,
disagreements and residue-sum failures.
"""

import argparse
import time
from dataclasses import dataclass

from eisencusp.cusps import level_shapes
from eisencusp.eisenstein import constant_term_table, delta_divisor, enumerate_H


@dataclass
class Config:
    max_level: int = 450
    odd_D: bool = False


def sweep(cfg: Config):
    total_bad = 0
    t0 = time.perf_counter()
    for shape in level_shapes(cfg.max_level, cfg.odd_D):
        indices = enumerate_H(shape)
        values = bad = residue = 0
        for idx in indices:
            closed = constant_term_table(idx, "closed").entries
            oracle = constant_term_table(idx, "oracle").entries
            values += len(closed)
            bad += sum(closed[k] != oracle[k] for k in closed)
            residue += delta_divisor(idx).total() != 0
        total_bad += bad + residue
        print(f"D={shape.D:<4} C={shape.C:<4} indices={len(indices):<4} values={values:<6} "
              f"disagree={bad} residue_fail={residue}")
    print(f"\ntotal failures: {total_bad}  ({time.perf_counter() - t0:.1f}s)")
    return total_bad


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-level", type=int, default=Config.max_level)
    ap.add_argument("--odd-D", action="store_true")
    a = ap.parse_args()
    raise SystemExit(1 if sweep(Config(a.max_level, a.odd_D)) else 0)
