#!/usr/bin/env python3
"""2-adic behaviour of the period cocycle for odd D with at least two prime factors.

For every sampled matrix this records whether the 2-adic conclusion holds
(two_part_check) and whether the explicit per-case mod-8 congruence holds
(two_part_case_congruence), tallied by case label.  The even-c congruence for
M = D is known to fail when phi(D) has 2-adic valuation exactly 2; the survey
shows where.
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from eisencusp.arith import divisors, euler_phi, nu, valuation
from eisencusp.cusps import level_shapes
from eisencusp.dedekind import random_gamma0, two_part_case_congruence, two_part_check


@dataclass
class Config:
    max_level: int = 105
    samples: int = 1000
    seed: int = 1


def survey(cfg: Config):
    rng = random.Random(cfg.seed)
    conclusion_fail = 0
    for shape in level_shapes(cfg.max_level, odd_D=True):
        if nu(shape.D) < 2:
            continue
        cases: Counter = Counter()
        case_fail: Counter = Counter()
        for _ in range(cfg.samples):
            g = random_gamma0(shape.N, 100 * shape.N, rng)
            for M in (m for m in divisors(shape.D) if m > 1):
                conclusion_fail += not two_part_check(M, shape, g)
                rep = two_part_case_congruence(M, shape, g)
                cases[rep.case] += 1
                case_fail[rep.case] += not rep
        v2 = valuation(euler_phi(shape.D), 2)
        summary = " ".join(f"{c}:{case_fail[c]}/{cases[c]}" for c in sorted(cases))
        print(f"D={shape.D:<4} C={shape.C:<3} v2(phi)={v2}  per-case failures {summary}")
    print(f"\nconclusion failures: {conclusion_fail}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-level", type=int, default=Config.max_level)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    survey(Config(a.max_level, a.samples, a.seed))
