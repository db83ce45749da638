"""Verification sweeps over many level shapes, with a content-addressed cache.

A sweep is a list of (suite, shape) work items.  Each item produces one
:class:`ResultRecord` per Eisenstein index (or per sampled matrix batch).
Items run in a process pool and are merged by sort key, so the output does
not depend on completion order.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import random
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from pathlib import Path

from ._version import __version__
from .arith import QuadExt, divisors, euler_phi, is_prime, nu, prime_to_part
from .characters import quad_char
from .cusps import LevelShape, enumerate_cusps, level_shapes, rep_to_cusp, width
from .dedekind import random_gamma0, two_part_check, xi, xi_homomorphism_check
from .eisenstein import (
    ConsistencyError,
    EisIndex,
    constant_term_table,
    cuspidal_order,
    edd_unit_check,
    eis_qexp_bracket,
    eis_qexp_closed,
    enumerate_H,
    lseries_factorization_check,
    order_nml,
    verify_eigenform,
)

SCHEMA_VERSION = 1
SUITES = ("eigen", "constants", "qexp", "orders", "lseries", "edd", "xi-hom", "two-part")
DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass
class SweepSpec:
    max_level: int
    shapes: list[tuple[int, int]] = field(default_factory=list)
    T: int = 200
    primes: tuple[int, ...] = DEFAULT_PRIMES
    suites: tuple[str, ...] = ()
    seed: int = 0
    samples: int = 100

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("T >= 1 required")
        for s in self.suites:
            if s not in SUITES:
                raise ValueError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
        self.shapes = [tuple(s) for s in self.shapes]
        for D, C in self.shapes:
            LevelShape(D, C)
        self.primes = tuple(self.primes)
        self.suites = tuple(self.suites)

    @classmethod
    def up_to(cls, max_level: int, odd_D: bool = False, **kw) -> "SweepSpec":
        shapes = [(s.D, s.C) for s in level_shapes(max_level, odd_D)]
        return cls(max_level, shapes, **kw)

    def key(self) -> dict:
        return asdict(self)


@dataclass
class ResultRecord:
    shape: tuple[int, int]
    suite: str
    item: str
    status: str
    payload: object = None
    timing: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def sort_key(self):
        D, C = self.shape
        return (D * C, D, C, self.suite, self.item)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "shape": list(self.shape),
            "suite": self.suite,
            "item": self.item,
            "status": self.status,
            "payload": self.payload,
            "timing": self.timing,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ResultRecord":
        return cls(tuple(doc["shape"]), doc["suite"], doc["item"], doc["status"], doc["payload"], doc["timing"])


# ---------------------------------------------------------------------------
# serialization helpers


def quad_json(v: QuadExt) -> list[int]:
    """[rat_num, rat_den, irr_num, irr_den, disc]."""
    return v.as_ints() + [v.disc]


def _status(ok) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# suites: each returns a list of (item, ok, payload)


def _suite_eigen(shape, spec_T, primes, seed, samples):
    out = []
    for idx in enumerate_H(shape):
        try:
            res = verify_eigenform(idx, spec_T, primes)
            out.append((idx.label(), res.ok, {"failure": res.failure}))
        except ConsistencyError as exc:
            out.append((idx.label(), False, {"error": str(exc)}))
    return out


def _suite_constants(shape, T, primes, seed, samples):
    out = []
    for idx in enumerate_H(shape):
        closed = constant_term_table(idx, "closed").entries
        oracle = constant_term_table(idx, "oracle").entries
        mismatch = [str(rep_to_cusp(r, shape)) for r in closed if closed[r] != oracle[r]]
        residue = sum((v * width(r, shape) for r, v in closed.items()), QuadExt(0, 0, idx.disc))
        ok = not mismatch and residue == 0
        out.append((idx.label(), ok, {"mismatch": mismatch, "residue": quad_json(residue)}))
    return out


def _suite_qexp(shape, T, primes, seed, samples):
    out = []
    for idx in enumerate_H(shape):
        n = eis_qexp_bracket(idx, T).first_difference(eis_qexp_closed(idx, T))
        out.append((idx.label(), n is None, {"first_difference": n}))
    return out


def _suite_orders(shape, T, primes, seed, samples):
    out = []
    for idx in enumerate_H(shape):
        res = cuspidal_order(idx)
        payload = {"order": res.order, "inverted": sorted(res.inverted)}
        ok = True
        if idx.f == 1 and (shape.D % 2 or is_prime(shape.N)):
            nml = order_nml(idx.M, idx.L, shape)
            payload["order_nml"] = nml
            ok = prime_to_part(res.order, [2]) == prime_to_part(nml, [2])
        out.append((idx.label(), ok, payload))
    return out


def _suite_lseries(shape, T, primes, seed, samples):
    out = []
    for idx in enumerate_H(shape):
        for fc in (1, 3, 5, 7):
            if gcd(fc, shape.D) != 1:
                continue
            res = lseries_factorization_check(idx, quad_char(fc), 500)
            out.append((f"{idx.label()}x{fc}", res.ok, {"failure": res.failure}))
    return out


def _suite_edd(shape, T, primes, seed, samples):
    if shape.C != shape.D or shape.D == 1:
        return []
    return [(f"({shape.D},{shape.D},1)", edd_unit_check(shape).ok, None)]


def _rng(seed: int, shape: LevelShape, suite: str) -> random.Random:
    return random.Random(f"{seed}:{shape.D}:{shape.C}:{suite}")


def _suite_xi_hom(shape, T, primes, seed, samples):
    rng = _rng(seed, shape, "xi-hom")
    out = []
    for M in _divisors_gt1(shape.D):
        bad = []
        for _ in range(samples):
            g1 = random_gamma0(shape.N, 20 * shape.N, rng)
            g2 = random_gamma0(shape.N, 20 * shape.N, rng)
            if not xi_homomorphism_check(M, shape, g1, g2):
                bad.append([g1.as_tuple(), g2.as_tuple()])
        out.append((f"M={M}", not bad, {"samples": samples, "failures": bad[:5]}))
    return out


def _suite_two_part(shape, T, primes, seed, samples):
    if shape.D % 2 == 0 or nu(shape.D) < 2:
        return []
    rng = _rng(seed, shape, "two-part")
    out = []
    for M in _divisors_gt1(shape.D):
        bad = []
        for _ in range(samples):
            g = random_gamma0(shape.N, 20 * shape.N, rng)
            rep = two_part_check(M, shape, g)
            if not rep:
                bad.append([g.as_tuple(), str(rep.xi), rep.case])
        out.append((f"M={M}", not bad, {"samples": samples, "failures": bad[:5]}))
    return out


def _divisors_gt1(D: int):
    return [m for m in divisors(D) if m > 1]


_SUITE_FUNCS = {
    "eigen": _suite_eigen,
    "constants": _suite_constants,
    "qexp": _suite_qexp,
    "orders": _suite_orders,
    "lseries": _suite_lseries,
    "edd": _suite_edd,
    "xi-hom": _suite_xi_hom,
    "two-part": _suite_two_part,
}


def run_item(suite: str, D: int, C: int, T: int, primes: tuple, seed: int, samples: int) -> list[dict]:
    """Run one (suite, shape) work item; returns JSON-ready records."""
    shape = LevelShape(D, C)
    t0 = time.perf_counter()
    rows = _SUITE_FUNCS[suite](shape, T, primes, seed, samples)
    dt = (time.perf_counter() - t0) / max(len(rows), 1)
    return [ResultRecord((D, C), suite, item, _status(ok), payload, dt).to_json() for item, ok, payload in rows]


# ---------------------------------------------------------------------------
# cache


class ResultCache:
    """Whole-record JSON cache under ``root``, keyed by a content hash."""

    def __init__(self, root):
        self.root = Path(root)
        self.hits = 0
        self.misses = 0

    @staticmethod
    def digest(key: dict) -> str:
        blob = json.dumps({"key": key, "version": __version__}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, digest: str) -> Path:
        return self.root / digest[:2] / f"{digest}.json"

    def get(self, key: dict):
        p = self._path(self.digest(key))
        if not p.exists():
            self.misses += 1
            return None
        self.hits += 1
        return json.loads(p.read_text())

    def put(self, key: dict, value) -> None:
        p = self._path(self.digest(key))
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(value, fh, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def default_cache_dir() -> Path:
    env = os.environ.get("CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "eisencusp"


# ---------------------------------------------------------------------------
# driver


def run_sweep(spec: SweepSpec, jobs: int = 1, cache: ResultCache | None = None) -> list[ResultRecord]:
    items = [(suite, D, C) for suite in spec.suites for D, C in spec.shapes]
    results: dict[tuple, list[dict]] = {}
    todo = []
    for suite, D, C in items:
        key = {"suite": suite, "shape": [D, C], "T": spec.T, "primes": list(spec.primes),
               "seed": spec.seed, "samples": spec.samples}
        hit = cache.get(key) if cache else None
        if hit is not None:
            results[(suite, D, C)] = hit
        else:
            todo.append(((suite, D, C), key))

    def args(item):
        suite, D, C = item
        return (suite, D, C, spec.T, spec.primes, spec.seed, spec.samples)

    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {item: pool.submit(run_item, *args(item)) for item, _ in todo}
            for (item, key) in todo:
                results[item] = futures[item].result()
                if cache:
                    cache.put(key, results[item])
    else:
        for item, key in todo:
            results[item] = run_item(*args(item))
            if cache:
                cache.put(key, results[item])

    records = [ResultRecord.from_json(doc) for docs in results.values() for doc in docs]
    return sorted(records, key=ResultRecord.sort_key)


def summarize(records: list[ResultRecord]) -> dict:
    by_suite: dict[str, dict[str, int]] = {}
    for r in records:
        d = by_suite.setdefault(r.suite, {"pass": 0, "fail": 0})
        d[r.status] += 1
    return {"total": len(records), "failed": sum(not r.passed for r in records), "suites": by_suite}


def records_document(records: list[ResultRecord], spec: SweepSpec | None = None, timing: bool = True) -> dict:
    rows = [r.to_json() for r in records]
    if not timing:
        for row in rows:
            row.pop("timing")
    doc = {"schema_version": SCHEMA_VERSION, "records": rows, "summary": summarize(records)}
    if spec is not None:
        doc["spec"] = spec.key()
    return doc


# ---------------------------------------------------------------------------
# tables


def _table_cusps(shape: LevelShape, **_):
    cols = ["r", "s", "t", "x", "numerator", "denominator", "width", "orbit_size"]
    rows = []
    for rep in enumerate_cusps(shape):
        u = rep_to_cusp(rep, shape)
        rows.append([rep.r, rep.s, rep.t, rep.x, u.a, u.c, width(rep, shape), euler_phi(rep.t)])
    return cols, rows


def _table_constants(shape: LevelShape, idx: EisIndex | None = None, **_):
    cols = ["M", "L", "f", "r", "s", "t", "x", "rat_num", "rat_den", "irr_num", "irr_den", "disc"]
    rows = []
    for e in [idx] if idx is not None else enumerate_H(shape):
        for rep, v in constant_term_table(e).entries.items():
            rows.append([e.M, e.L, e.f, rep.r, rep.s, rep.t, rep.x] + quad_json(v))
    return cols, rows


def _table_orders(shape: LevelShape, **_):
    cols = ["M", "L", "f", "order", "inverted", "order_nml"]
    rows = []
    for idx in enumerate_H(shape):
        res = cuspidal_order(idx)
        nml = None
        if idx.f == 1 and (shape.D % 2 or is_prime(shape.N)):
            nml = order_nml(idx.M, idx.L, shape)
        rows.append([idx.M, idx.L, idx.f, res.order, sorted(res.inverted), nml])
    return cols, rows


TABLES = {"cusps": _table_cusps, "constants": _table_constants, "orders": _table_orders}


def table(kind: str, shape: LevelShape, **kw) -> tuple[list[str], list[list]]:
    if kind not in TABLES:
        raise ValueError(f"unknown table kind {kind!r}")
    return TABLES[kind](shape, **kw)


def render(doc: dict, columns: list[str] | None, rows: list[list] | None, fmt: str) -> str:
    """JSON renders ``doc``; CSV flattens ``rows`` under ``columns``."""
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([";".join(map(str, v)) if isinstance(v, (list, tuple)) else v for v in row])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def emit_table(kind: str, shape: LevelShape, fmt: str = "json", **kw) -> str:
    cols, rows = table(kind, shape, **kw)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "shape": [shape.D, shape.C],
        "columns": cols,
        "rows": rows,
    }
    return render(doc, cols, rows, fmt)
