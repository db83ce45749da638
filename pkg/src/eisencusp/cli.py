"""Command-line entry point.

Exit status: 0 when everything requested passed, 1 on a verification
failure, 2 on bad parameters.  Matrices are passed as ``a,b,c,d``; use
``--matrix=-1,0,0,-1`` when the first entry is negative.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from fractions import Fraction
from math import gcd

from . import sweep as sw
from ._version import __version__
from .arith import divisors, nu
from .cusps import LevelShape
from .dedekind import (
    GammaElement,
    congruence_check,
    dedekind_sum,
    rademacher_phi,
    random_gamma0,
    reciprocity_check,
    two_part_check,
    xi,
    xi_homomorphism_check,
)
from .eisenstein import EisIndex, eis_qexp, enumerate_H, h_count

log = logging.getLogger("eisencusp")

FUZZ_SUITES = ("reciprocity", "congruence", "xi-hom", "two-part")


class UsageError(ValueError):
    pass


def _frac(q: Fraction) -> list[int]:
    q = Fraction(q)
    return [q.numerator, q.denominator]


def _shape(args) -> LevelShape:
    return LevelShape(args.D, args.C)


def _doc(command: str, **body) -> dict:
    return {"schema_version": sw.SCHEMA_VERSION, "command": command, **body}


# ---------------------------------------------------------------------------
# subcommands; each returns (exit status, document, columns, rows)


def cmd_cusps(args):
    shape = _shape(args)
    cols, rows = sw.table("cusps", shape)
    return 0, _doc("cusps", shape=[shape.D, shape.C], columns=cols, rows=rows), cols, rows


def cmd_basis(args):
    shape = _shape(args)
    if args.quadratic_only:
        cols = ["M", "L", "f"]
        rows = [[i.M, i.L, i.f] for i in enumerate_H(shape, True)]
        count = len(rows)
    else:
        cols = ["M", "L", "characters"]
        slots = enumerate_H(shape, False)
        per_pair: dict[tuple[int, int], int] = {}
        for M, L, _ in slots:
            per_pair[(M, L)] = per_pair.get((M, L), 0) + 1
        rows = [[M, L, k] for (M, L), k in sorted(per_pair.items())]
        count = len(slots)
    expected = h_count(shape.N)
    status = 0 if args.quadratic_only or count == expected else 1
    doc = _doc("basis", shape=[shape.D, shape.C], columns=cols, rows=rows, count=count, expected_full_count=expected)
    return status, doc, cols, rows


def _index(args) -> EisIndex:
    return EisIndex(_shape(args), args.M, args.L, args.f)


def cmd_qexp(args):
    idx = _index(args)
    s = eis_qexp(idx, args.T)
    cols = ["n", "rat_num", "rat_den", "irr_num", "irr_den", "disc"]
    rows = [[n] + sw.quad_json(c) for n, c in enumerate(s.coeffs)]
    return 0, _doc("qexp", index=[idx.M, idx.L, idx.f], series=s.to_json()), cols, rows


def cmd_constants(args):
    shape = _shape(args)
    idx = _index(args) if args.M is not None else None
    cols, rows = sw.table("constants", shape, idx=idx)
    return 0, _doc("constants", shape=[shape.D, shape.C], columns=cols, rows=rows), cols, rows


def cmd_orders(args):
    shape = _shape(args)
    cols, rows = sw.table("orders", shape)
    return 0, _doc("orders", shape=[shape.D, shape.C], columns=cols, rows=rows), cols, rows


def cmd_dedekind(args):
    fast = dedekind_sum(args.h, args.k, "fast")
    brute = dedekind_sum(args.h, args.k, "brute")
    cols = ["h", "k", "num", "den", "agree"]
    rows = [[args.h, args.k, fast.numerator, fast.denominator, fast == brute]]
    doc = _doc("dedekind", h=args.h, k=args.k, value=_frac(fast), brute_agrees=fast == brute)
    return (0 if fast == brute else 1), doc, cols, rows


def _matrix(text: str) -> GammaElement:
    try:
        return GammaElement.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_phi(args):
    g = _matrix(args.matrix)
    v = rademacher_phi(g)
    cols = ["a", "b", "c", "d", "num", "den"]
    rows = [list(g.as_tuple()) + _frac(v)]
    return 0, _doc("phi", matrix=list(g.as_tuple()), value=_frac(v)), cols, rows


def cmd_xi(args):
    shape = _shape(args)
    g = _matrix(args.matrix)
    v = xi(args.M, shape, g)
    cols = ["a", "b", "c", "d", "num", "den"]
    rows = [list(g.as_tuple()) + _frac(v)]
    doc = _doc("xi", shape=[shape.D, shape.C], M=args.M, matrix=list(g.as_tuple()), value=_frac(v),
               period=_frac(v / 24))
    return 0, doc, cols, rows


def cmd_fuzz(args):
    rng = random.Random(args.seed)
    failures = []
    suite = args.suite
    if suite in ("reciprocity", "congruence"):
        for _ in range(args.n):
            k = rng.randint(1, args.max_k)
            if suite == "congruence" and k % 2 == 0:
                k += 1
            h = rng.randint(1, args.max_k)
            if gcd(h, k) != 1:
                continue
            ok = reciprocity_check(h, k) if suite == "reciprocity" else congruence_check(h, k)
            if not ok:
                failures.append([h, k])
    else:
        shape = _shape(args)
        Ms = [args.M] if args.M else [m for m in divisors(shape.D) if m > 1]
        if suite == "two-part" and (shape.D % 2 == 0 or nu(shape.D) < 2):
            raise UsageError("two-part needs odd D with at least two prime factors")
        for i in range(args.n):
            M = Ms[i % len(Ms)]
            g1 = random_gamma0(shape.N, 20 * shape.N, rng)
            if suite == "xi-hom":
                g2 = random_gamma0(shape.N, 20 * shape.N, rng)
                if not xi_homomorphism_check(M, shape, g1, g2):
                    failures.append([M, list(g1.as_tuple()), list(g2.as_tuple())])
            elif not two_part_check(M, shape, g1):
                failures.append([M, list(g1.as_tuple())])
    cols = ["suite", "n", "seed", "failures"]
    rows = [[suite, args.n, args.seed, len(failures)]]
    doc = _doc("fuzz", suite=suite, n=args.n, seed=args.seed, failures=failures[:20], failure_count=len(failures))
    return (1 if failures else 0), doc, cols, rows


def _run(spec: sw.SweepSpec, args, command: str):
    cache = None if args.no_cache else sw.ResultCache(args.cache_dir or sw.default_cache_dir())
    records = sw.run_sweep(spec, jobs=args.jobs, cache=cache)
    doc = sw.records_document(records, spec)
    doc["command"] = command
    if cache is not None:
        doc["cache"] = {"hits": cache.hits, "misses": cache.misses}
    cols = ["D", "C", "suite", "item", "status"]
    rows = [[r.shape[0], r.shape[1], r.suite, r.item, r.status] for r in records]
    status = 1 if any(not r.passed for r in records) else 0
    return status, doc, cols, rows


def cmd_verify(args):
    shape = _shape(args)
    spec = sw.SweepSpec(shape.N, [(shape.D, shape.C)], T=args.T, suites=(args.suite,), seed=args.seed,
                        samples=args.samples)
    return _run(spec, args, "verify")


def cmd_sweep(args):
    suites = tuple(s for s in args.suites.split(",") if s) if args.suites else ()
    spec = sw.SweepSpec.up_to(args.max_level, odd_D=args.odd_D, T=args.T, suites=suites, seed=args.seed,
                              samples=args.samples)
    return _run(spec, args, "sweep")


# ---------------------------------------------------------------------------
# parser


def _globals(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))
    p.add_argument("--out", default=d(None), help="write output here instead of stdout")
    p.add_argument("--cache-dir", default=d(None), help="cache root (default: $CACHE_DIR or ~/.cache/eisencusp)")
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--jobs", type=int, default=d(1))


def _shape_args(p, C_default=1):
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--C", type=int, default=C_default)


def _index_args(p, required=True):
    p.add_argument("--M", type=int, required=required)
    p.add_argument("--L", type=int, required=required)
    p.add_argument("--f", type=int, default=1, help="conductor of the quadratic character")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eisencusp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        _globals(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("cusps", cmd_cusps, "cusp representatives and widths")
    _shape_args(p)
    p = add("basis", cmd_basis, "Eisenstein basis indices")
    _shape_args(p)
    p.add_argument("--quadratic-only", action="store_true")
    p = add("qexp", cmd_qexp, "q-expansion of one basis element")
    _shape_args(p)
    _index_args(p)
    p.add_argument("--T", type=int, default=20)
    p = add("constants", cmd_constants, "constant terms at every cusp")
    _shape_args(p)
    _index_args(p, required=False)
    p = add("orders", cmd_orders, "cuspidal subgroup orders")
    _shape_args(p)
    p = add("dedekind", cmd_dedekind, "Dedekind sum s(h, k)")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = add("phi", cmd_phi, "Rademacher Phi of a matrix in SL_2(Z)")
    p.add_argument("--matrix", required=True)
    p = add("xi", cmd_xi, "period cocycle of E_{M, D/M}")
    _shape_args(p)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--matrix", required=True)
    p = add("fuzz", cmd_fuzz, "randomized identity checks")
    p.add_argument("--suite", choices=FUZZ_SUITES, required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--max-k", type=int, default=10_000)
    p.add_argument("--D", type=int, default=15)
    p.add_argument("--C", type=int, default=1)
    p.add_argument("--M", type=int, default=None)
    for name, func, help in (("verify", cmd_verify, "run one verification suite on one shape"),
                             ("sweep", cmd_sweep, "run suites over all shapes up to a level")):
        p = add(name, func, help)
        if name == "verify":
            p.add_argument("--suite", choices=sw.SUITES, required=True)
            _shape_args(p)
        else:
            p.add_argument("--max-level", type=int, required=True)
            p.add_argument("--suites", default="", help="comma-separated subset of: " + ",".join(sw.SUITES))
            p.add_argument("--odd-D", action="store_true")
        p.add_argument("--T", type=int, default=200)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--no-cache", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        status, doc, cols, rows = args.func(args)
        text = sw.render(doc, cols, rows, args.format)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"eisencusp {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status:
        log.warning("verification failed")
    return status


if __name__ == "__main__":
    sys.exit(main())
