#!/usr/bin/env python3
"""Cuspidal orders at prime level next to the classical (p-1)/gcd(12, p-1)."""

import argparse
from dataclasses import dataclass
from math import gcd

from sympy import primerange

from eisencusp.arith import prime_to_part
from eisencusp.cusps import LevelShape
from eisencusp.eisenstein import EisIndex, cuspidal_order


@dataclass
class Config:
    max_prime: int = 200


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-prime", type=int, default=Config.max_prime)
    cfg = Config(ap.parse_args().max_prime)

    print(f"{'p':>5} {'lattice':>8} {'classical':>10}  odd parts agree")
    mismatches = 0
    for p in primerange(2, cfg.max_prime + 1):
        res = cuspidal_order(EisIndex(LevelShape(p, 1), p, 1))
        classical = (p - 1) // gcd(12, p - 1)
        agree = res.away_from({2}) == prime_to_part(classical, {2})
        mismatches += not agree
        print(f"{p:>5} {res.order:>8} {classical:>10}  {agree}")
    print(f"\n{mismatches} mismatches")


if __name__ == "__main__":
    main()
