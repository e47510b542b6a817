"""Benchmark harness: timed runs, CSV records, and log-log slope fits.

Benchmark runs use float coordinates (the generators emit dyadic rationals,
so the conversion is exact); correctness claims rest on the exact path,
which the verify command exercises.
"""

import math
import time
from dataclasses import dataclass

from .generators import generate_instance, to_float_instance
from .solver import SolverConfig, solve

CSV_HEADER = "backend,n,m,ms,maxcross,totalK,faceComplexity,seed"


@dataclass
class BenchRecord:
    backend: str
    n: int
    m: int
    ms: float
    maxcross: int
    total_k: int
    face_complexity: int
    seed: int

    def csv_row(self):
        return (
            f"{self.backend},{self.n},{self.m},{self.ms:.3f},"
            f"{self.maxcross},{self.total_k},{self.face_complexity},{self.seed}"
        )


def run_one(backend, inst, seed, numeric="float", r_override=None):
    work = to_float_instance(inst) if numeric == "float" else inst
    cfg = SolverConfig(backend=backend, trusted=True, seed=seed, r_override=r_override)
    t0 = time.perf_counter()
    fs = solve(work, cfg)
    ms = (time.perf_counter() - t0) * 1000.0
    return BenchRecord(
        backend,
        len(inst.lines),
        len(inst.points),
        ms,
        fs.stats.max_crossings,
        fs.stats.total_k,
        fs.stats.face_complexity,
        seed,
    ), fs


def run_bench(sizes, backends, kind="uniform", seed=0, numeric="float",
              r_override=None, progress=None):
    records = []
    for n in sizes:
        inst = generate_instance(kind, n, n, seed)
        for backend in backends:
            rec, _ = run_one(backend, inst, seed, numeric, r_override)
            records.append(rec)
            if progress:
                progress(rec)
    return records


def loglog_slope(pairs):
    """Least-squares slope of log(t) against log(n)."""
    xs = [math.log(n) for n, _ in pairs]
    ys = [math.log(max(t, 1e-9)) for _, t in pairs]
    k = len(xs)
    mx = sum(xs) / k
    my = sum(ys) / k
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den if den else 0.0


def slopes_by_backend(records):
    by = {}
    for rec in records:
        by.setdefault(rec.backend, []).append((rec.n, rec.ms))
    return {b: loglog_slope(pairs) for b, pairs in by.items() if len(pairs) >= 2}
