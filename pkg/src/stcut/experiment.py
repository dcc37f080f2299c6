"""Monte Carlo estimation of Pr[lambda >= delta] over the graph ensemble.

Samples are split into fixed-size chunks, each with its own RNG stream
spawned from the master seed.  Workers return per-chunk histograms that are
merged by addition, so the result does not depend on the worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from .bound import BoundCurve
from .cuts import global_min_cut, min_st_cut
from .ensemble import (DegreeDistribution, SIMPLE, WeightDistribution,
                       degree_sequence, sample_graph)

CHUNK_SIZE = 50
DEFAULT_SAMPLES = 10**4

ST = "st"
GLOBAL = "global"


@dataclass(frozen=True)
class TailRow:
    delta: int
    count_geq: int
    estimate: float
    stderr: float


@dataclass
class EmpiricalTail:
    num_samples: int
    mode: str
    seed: int
    kind: str = ST
    rows: List[TailRow] = field(default_factory=list)
    # lambda value -> number of samples
    histogram: Dict[int, int] = field(default_factory=dict)

    def row(self, delta: int) -> TailRow:
        for r in self.rows:
            if r.delta == delta:
                return r
        raise KeyError(delta)

    def deltas(self) -> List[int]:
        return [r.delta for r in self.rows]


def tail_from_histogram(hist: Dict[int, int], num_samples: int, delta_max: int,
                        mode: str, seed: int, kind: str) -> EmpiricalTail:
    tail = EmpiricalTail(num_samples, mode, seed, kind, histogram=dict(sorted(hist.items())))
    for delta in range(1, delta_max + 1):
        count = sum(c for lam, c in hist.items() if lam >= delta)
        est = count / num_samples
        tail.rows.append(TailRow(delta, count, est, math.sqrt(est * (1 - est) / num_samples)))
    return tail


def _run_chunk(args) -> Tuple[Dict[int, int], Dict[int, int]]:
    seq, mu, mode, entropy, chunk, size, want_st, want_global = args
    rng = np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=(chunk,)))
    n = len(seq)
    st_hist: Dict[int, int] = {}
    gl_hist: Dict[int, int] = {}
    for _ in range(size):
        g = sample_graph(seq, mu, rng, mode)
        # (s, t) is drawn even when unused so s-t and global runs see the same graphs
        s, t = (rng.choice(n, size=2, replace=False) + 1).tolist()
        if want_st:
            lam = min_st_cut(g, s, t)
            st_hist[lam] = st_hist.get(lam, 0) + 1
        if want_global:
            lam = global_min_cut(g)
            gl_hist[lam] = gl_hist.get(lam, 0) + 1
    return st_hist, gl_hist


def _merge(into: Dict[int, int], part: Dict[int, int]) -> None:
    for k, c in part.items():
        into[k] = into.get(k, 0) + c


def _histograms(dd: DegreeDistribution, mu: WeightDistribution, num_samples: int,
                seed: int, mode: str, want_st: bool, want_global: bool,
                workers: int = 1):
    if num_samples < 1:
        raise ValueError(f"num_samples must be at least 1, got {num_samples}")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    seq = degree_sequence(dd)
    jobs = []
    for chunk, start in enumerate(range(0, num_samples, CHUNK_SIZE)):
        size = min(CHUNK_SIZE, num_samples - start)
        jobs.append((seq, mu, mode, seed, chunk, size, want_st, want_global))
    st_hist: Dict[int, int] = {}
    gl_hist: Dict[int, int] = {}
    if workers <= 1 or len(jobs) == 1:
        parts = map(_run_chunk, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        parts = pool.map(_run_chunk, jobs)
    for st, gl in parts:
        _merge(st_hist, st)
        _merge(gl_hist, gl)
    if workers > 1 and len(jobs) > 1:
        pool.shutdown()
    return st_hist, gl_hist


def run_st_experiment(dd, mu, num_samples=DEFAULT_SAMPLES, seed=0, mode=SIMPLE,
                      delta_max=12, workers=1) -> EmpiricalTail:
    st, _ = _histograms(dd, mu, num_samples, seed, mode, True, False, workers)
    return tail_from_histogram(st, num_samples, delta_max, mode, seed, ST)


def run_global_experiment(dd, mu, num_samples=DEFAULT_SAMPLES, seed=0, mode=SIMPLE,
                          delta_max=12, workers=1) -> EmpiricalTail:
    _, gl = _histograms(dd, mu, num_samples, seed, mode, False, True, workers)
    return tail_from_histogram(gl, num_samples, delta_max, mode, seed, GLOBAL)


def run_paired_experiment(dd, mu, num_samples=DEFAULT_SAMPLES, seed=0, mode=SIMPLE,
                          delta_max=12, workers=1) -> Tuple[EmpiricalTail, EmpiricalTail]:
    """s-t and global tails computed on one shared stream of graphs."""
    st, gl = _histograms(dd, mu, num_samples, seed, mode, True, True, workers)
    return (tail_from_histogram(st, num_samples, delta_max, mode, seed, ST),
            tail_from_histogram(gl, num_samples, delta_max, mode, seed, GLOBAL))


@dataclass(frozen=True)
class ComparisonRow:
    delta: int
    raw_bound: Fraction
    clamped_bound: Fraction
    estimate: float
    stderr: float
    bound_minus_estimate: float
    violation: bool


def _exceeds(bound: Fraction, count: int, num_samples: int) -> bool:
    """bound > p + 3*sqrt(p(1-p)/N) with p = count/N, decided exactly."""
    p = Fraction(count, num_samples)
    gap = bound - p
    if gap <= 0:
        return False
    return gap * gap > 9 * p * (1 - p) / num_samples


def compare(bound_curve: BoundCurve, tail: EmpiricalTail) -> List[ComparisonRow]:
    bound_deltas = set(bound_curve.deltas())
    common = [d for d in tail.deltas() if d in bound_deltas]
    if not common:
        raise ValueError("bound curve and empirical tail share no delta values")
    if set(common) != bound_deltas or set(common) != set(tail.deltas()):
        raise ValueError(
            f"delta ranges differ: bound {min(bound_deltas)}..{max(bound_deltas)}, "
            f"tail {min(tail.deltas())}..{max(tail.deltas())}")
    rows = []
    for d in common:
        r = tail.row(d)
        raw, clamped = bound_curve.raw(d), bound_curve.clamped(d)
        rows.append(ComparisonRow(
            d, raw, clamped, r.estimate, r.stderr, float(clamped) - r.estimate,
            _exceeds(clamped, r.count_geq, tail.num_samples)))
    return rows


@dataclass(frozen=True)
class TailPairRow:
    delta: int
    st_estimate: float
    global_estimate: float
    violation: bool


def compare_tails(st_tail: EmpiricalTail, global_tail: EmpiricalTail) -> List[TailPairRow]:
    """Pointwise check that the global-cut tail never exceeds the s-t tail."""
    if st_tail.deltas() != global_tail.deltas():
        raise ValueError("s-t and global tails cover different delta ranges")
    if (st_tail.num_samples, st_tail.seed, st_tail.mode) != (
            global_tail.num_samples, global_tail.seed, global_tail.mode):
        raise ValueError("tails were not computed on the same sample stream")
    return [TailPairRow(a.delta, a.estimate, b.estimate, b.count_geq > a.count_geq)
            for a, b in zip(st_tail.rows, global_tail.rows)]
