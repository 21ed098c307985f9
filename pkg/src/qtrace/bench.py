"""Wall-clock benchmark harness for the reduction methods.

Runs each method on the maximally mixed state I/d (built analytically, so
inputs are deterministic without sampling), takes the minimum wall time
over a number of repetitions as the noise-robust statistic, and annotates
every row with the analytic operation counts.  Timed sections pin the
BLAS thread pool to a single thread so scaling exponents are not distorted
by parallelism kicking in at larger sizes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from threadpoolctl import threadpool_limits

from .bipartite import (
    ptrace_b_direct,
    ptrace_b_fast,
    ptrace_b_fast_hermitian,
    ptrace_b_semi,
)
from .bloch import bloch_b_direct, bloch_b_fast, reduced_state_bloch
from .costmodel import Method, cost_estimate

__all__ = [
    "BenchRecord",
    "resolve_bench_method",
    "run_bench",
    "fit_loglog_slope",
    "BENCH_CSV_HEADER",
]

BENCH_CSV_HEADER = "method,da,db,wall_seconds,mops,sops,reps"

_ALIASES = {
    "direct": Method.DIRECT_B,
    "semi": Method.SEMI_B,
    "fast": Method.FAST_B,
    "hermitian": Method.FAST_B_HERMITIAN,
}

# Methods whose input is a (da*db)-sized bipartite operator; the inner
# three-party methods need a dc column and are not part of this table.
_BENCHABLE = (
    Method.DIRECT_B,
    Method.SEMI_B,
    Method.FAST_B,
    Method.FAST_B_HERMITIAN,
    Method.BLOCH_DIRECT,
    Method.BLOCH_SEMI,
    Method.BLOCH_GELLMANN,
)


@dataclass(frozen=True)
class BenchRecord:
    """One benchmark measurement plus its analytic annotation."""

    method: str
    dims: tuple[int, int]
    wall_seconds: float
    predicted_mops: int
    predicted_sops: int
    repetitions: int

    def __post_init__(self):
        if self.wall_seconds <= 0:
            raise ValueError("wall_seconds must be positive")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")

    def csv_row(self) -> str:
        da, db = self.dims
        return (
            f"{self.method},{da},{db},{self.wall_seconds!r},"
            f"{self.predicted_mops},{self.predicted_sops},{self.repetitions}"
        )


def resolve_bench_method(name: str) -> Method:
    """Map a CLI method name (full or alias) to a benchable Method."""
    key = name.strip().lower()
    if key in _ALIASES:
        return _ALIASES[key]
    try:
        method = Method(key)
    except ValueError:
        raise ValueError(f"unknown method {name!r}") from None
    if method not in _BENCHABLE:
        raise ValueError(f"method {name!r} cannot be benchmarked on (da, db) grids")
    return method


def _runner(method: Method, op: np.ndarray, da: int, db: int) -> Callable[[], object]:
    dims = (da, db)
    if method is Method.DIRECT_B:
        return lambda: ptrace_b_direct(op, dims)
    if method is Method.SEMI_B:
        basis = np.eye(db, dtype=np.complex128)
        return lambda: ptrace_b_semi(op, dims, basis)
    if method is Method.FAST_B:
        return lambda: ptrace_b_fast(op, dims)
    if method is Method.FAST_B_HERMITIAN:
        return lambda: ptrace_b_fast_hermitian(op, dims)
    if method is Method.BLOCH_DIRECT:
        return lambda: bloch_b_direct(op, dims)
    if method is Method.BLOCH_SEMI:
        return lambda: bloch_b_fast(op, dims)
    if method is Method.BLOCH_GELLMANN:
        return lambda: reduced_state_bloch(op, dims)
    raise ValueError(f"method {method!r} cannot be benchmarked")


def run_bench(
    methods: Sequence[Method],
    da_values: Sequence[int],
    db_values: Optional[Sequence[int]] = None,
    reps: int = 5,
) -> list[BenchRecord]:
    """Benchmark each method over the dimension grid on maximally mixed input.

    ``db_values`` defaults to ``da_values`` entrywise (equal dimensions).
    Returns one record per (method, size) pair, methods outermost.
    """
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    da_list = [int(v) for v in da_values]
    db_list = [int(v) for v in (db_values if db_values is not None else da_values)]
    if len(da_list) != len(db_list):
        raise ValueError("da and db grids must have equal length")
    for v in da_list + db_list:
        if v < 1:
            raise ValueError(f"dimensions must be >= 1, got {v}")
    records = []
    with threadpool_limits(limits=1):
        for method in methods:
            method = Method(method)
            for da, db in zip(da_list, db_list):
                d = da * db
                op = np.eye(d, dtype=np.complex128) / d
                call = _runner(method, op, da, db)
                call()  # warm up caches and lazy imports before timing
                best = min(_timed(call) for _ in range(reps))
                est = cost_estimate(method, da, db)
                records.append(
                    BenchRecord(
                        method=method.value,
                        dims=(da, db),
                        wall_seconds=best,
                        predicted_mops=est.mops,
                        predicted_sops=est.sops,
                        repetitions=reps,
                    )
                )
    return records


def _timed(call: Callable[[], object]) -> float:
    start = time.perf_counter()
    call()
    elapsed = time.perf_counter() - start
    # Guard against timers too coarse to see a microsecond-scale call.
    return max(elapsed, 1e-9)


def fit_loglog_slope(sizes: Sequence[float], times: Sequence[float]) -> float:
    """Least-squares slope of log(time) against log(size)."""
    xs = np.log(np.asarray(sizes, dtype=np.float64))
    ys = np.log(np.asarray(times, dtype=np.float64))
    if len(xs) < 2:
        raise ValueError("need at least two points to fit a slope")
    slope, _ = np.polyfit(xs, ys, deg=1)
    return float(slope)
