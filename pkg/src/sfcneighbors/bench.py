"""Timing harness for neighbor queries.

Each measurement runs ``samples`` queries at a fixed level with the state
fixed to the root state.  The position of every query depends on the
previous answer, ``j = (random + previous) mod cells``, so consecutive
calls cannot overlap.  The time of the same loop without the query is
measured separately and subtracted; the reported figure is the median over
``reps`` repetitions divided by ``samples``.
"""

from __future__ import annotations

import csv
import io
import random
import statistics
import time
from dataclasses import dataclass

from .errors import ContractError
from .neighbor_engine import build_multilevel, neighbor, neighbor_iterative, neighbor_multilevel
from .optimized_curves import (
    hilbert2d_neighbor_fast,
    morton_neighbor,
    peano_neighbor_fast,
    sierpinski2d_neighbor_fast,
)
from .spec_model import builtin, canonical_name
from .table_gen import compile_spec
from .tree_core import AlgebraicNode

KERNELS = ("general", "iterative", "multilevel", "fast")
CSV_HEADER = ("curve", "kernel", "level", "depth", "median_ns", "samples", "reps")


@dataclass(frozen=True)
class BenchRow:
    curve: str
    kernel: str
    level: int
    depth: int
    median_ns: float
    samples: int
    reps: int


def _fast_query(name: str):
    """``query(level, j, f) -> position`` for curves with a dedicated kernel."""
    if name == "hilbert2d_global":
        def query(level, j, f):
            hit = hilbert2d_neighbor_fast(level, j, 0, f)
            return -1 if hit is None else hit[0]
        return query, 4
    if name in ("morton2", "morton3"):
        d = int(name[-1])
        return (lambda level, j, f: morton_neighbor(d, level, j, f)), 2 * d
    if name.startswith("peano") and name.endswith("_local"):
        d = int(name[5:-6])
        return (lambda level, j, f: peano_neighbor_fast(d, level, j, f)), 2 * d
    if name == "sierpinski2d_local":
        return sierpinski2d_neighbor_fast, 3
    raise ContractError(f"no fast kernel for {name}")


def _engine_query(tables, kernel: str, depth: int):
    root = tables.root_state
    if tables.parent_state is None:
        raise ContractError("benchmarks with a fixed state need invertible state maps")
    if kernel == "general":
        def query(level, j, f):
            w = neighbor(tables, AlgebraicNode(level, j, root), f)
            return -1 if w is None else w.position
    elif kernel == "iterative":
        scratch = [None] * 256

        def query(level, j, f):
            w = neighbor_iterative(tables, AlgebraicNode(level, j, root), f, scratch)
            return -1 if w is None else w.position
    elif kernel == "multilevel":
        mlt = build_multilevel(tables, depth)

        def query(level, j, f):
            w = neighbor_multilevel(mlt, AlgebraicNode(level, j, root), f)
            return -1 if w is None else w.position
    else:
        raise ContractError(f"unknown kernel {kernel!r}; expected one of {KERNELS}")
    return query, tables.facets_of(root)


def _run(query, level, cells, facets, samples, rng_seed):
    rng = random.Random(rng_seed)
    draw, pick = rng.randrange, rng.randrange
    prev = 0
    start = time.perf_counter_ns()
    for _ in range(samples):
        j = (draw(cells) + prev) % cells
        w = query(level, j, pick(facets))
        prev = w if w > 0 else 0
    return time.perf_counter_ns() - start


def _baseline(level, cells, facets, samples, rng_seed):
    def nothing(level, j, f):
        return j

    return _run(nothing, level, cells, facets, samples, rng_seed)


def bench_curve(curve: str, kernel: str, levels, samples: int = 5_000_000, reps: int = 15,
                depth: int = 1, seed: int = 0):
    """Yield one BenchRow per level."""
    if samples < 1 or reps < 1:
        raise ContractError("samples and reps must be positive")
    name = canonical_name(curve)
    if kernel == "fast":
        query, facets = _fast_query(name)
        b = builtin(name).branching
    else:
        tables = compile_spec(builtin(name))
        query, facets = _engine_query(tables, kernel, depth)
        b = tables.b
    for level in levels:
        cells = b**level
        times = []
        for r in range(reps):
            run_seed = seed * 1_000_003 + level * 101 + r
            spent = _run(query, level, cells, facets, samples, run_seed)
            base = _baseline(level, cells, facets, samples, run_seed)
            times.append(max(spent - base, 0) / samples)
        yield BenchRow(name, kernel, level, depth if kernel == "multilevel" else 1,
                       statistics.median(times), samples, reps)


def rows_to_csv(rows) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([row.curve, row.kernel, row.level, row.depth, f"{row.median_ns:.1f}",
                         row.samples, row.reps])
    return out.getvalue()


def parse_levels(text: str) -> list:
    """``"5..30"``, ``"5,10,20"`` or ``"7"``."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise ContractError(f"empty level range {text}")
        return list(range(lo, hi + 1))
    return [int(x) for x in text.split(",") if x.strip()]
