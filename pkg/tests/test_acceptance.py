"""Exit criteria, one test per criterion, at full size.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""
import time

import pytest

from conftest import ACCEPTANCE_LINES
from stcut.bound import CutBound
from stcut.cli import main
from stcut.config import DENSE, SPARSE, WIDE
from stcut.ensemble import MULTIGRAPH, SIMPLE, WeightDistribution, num_edges
from stcut.experiment import compare, compare_tails, run_paired_experiment, run_st_experiment
from stcut.genpoly import binomial, binomial_half, degree_product_table
from stcut import oracle

SAMPLES = 10**4
UNIT = WeightDistribution.unit()


def record(number, title, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}  {detail}".rstrip())
    assert ok, detail


def test_1_combinatorial_identities():
    start = time.perf_counter()
    ok = all(
        sum(binomial(m, v) * 2**v * binomial_half(m - v, h - v) for v in range(m + 1))
        == binomial(2 * m, h)
        for m in range(21) for h in range(2 * m + 1))
    for spec in (SPARSE, DENSE, WIDE):
        dd = spec.degree_distribution()
        t = degree_product_table(dd)
        n, m = dd.n, dd.num_edges()
        ok &= t.total() == 2**n
        ok &= all(t[h, u] == t[2 * m - h, n - u] for h in range(2 * m + 1) for u in range(n + 1))
    elapsed = time.perf_counter() - start
    record(1, "combinatorial identities", ok and elapsed < 10, f"{elapsed:.1f}s (< 10s)")


def test_2_constraint_map_oracle():
    start = time.perf_counter()
    res = oracle.check_constraint_map(num_graphs=50, max_n=8)
    elapsed = time.perf_counter() - start
    record(2, "constraint map = direct cut-sets", res.passed and elapsed < 10,
           f"{res.detail}; {elapsed:.1f}s (< 10s)")


def test_3_lemma3_exact():
    start = time.perf_counter()
    res = oracle.check_lemma3()
    elapsed = time.perf_counter() - start
    record(3, "expected_A = exhaustive matching average", res.passed and elapsed < 60,
           f"{res.detail}; {elapsed:.1f}s (< 60s)")


def test_4_theorem_directions():
    res = oracle.check_theorems(delta_max=10)
    record(4, "E[B(w)] <= bound, Pr[lambda >= delta] >= bound", res.passed, res.detail)


def test_5_maxflow_exact():
    start = time.perf_counter()
    res = oracle.check_maxflow(num_graphs=100, max_n=10, q=5)
    elapsed = time.perf_counter() - start
    record(5, "min_st_cut / global_min_cut = exhaustive", res.passed and elapsed < 30,
           f"{res.detail}; {elapsed:.1f}s (< 30s)")


def _dominance(number, title, spec, mode, delta_max, expected_m):
    dd = spec.degree_distribution()
    start = time.perf_counter()
    curve = CutBound(dd, UNIT).tail_lower_bound(delta_max)
    t_bound = time.perf_counter() - start
    start = time.perf_counter()
    tail = run_st_experiment(dd, UNIT, SAMPLES, spec.seed, mode, delta_max)
    t_sim = time.perf_counter() - start
    rows = compare(curve, tail)
    raw = [e.raw_bound for e in curve.entries]
    monotone = all(b <= a for a, b in zip(raw, raw[1:]))
    bad = [r.delta for r in rows if r.violation]
    ok = (num_edges(dd) == expected_m and monotone and not bad
          and t_bound < 300 and t_sim < 300)
    record(number, title, ok,
           f"m={num_edges(dd)} mode={mode} delta 1..{delta_max} violations={bad} "
           f"bound {t_bound:.1f}s sim {t_sim:.1f}s")


@pytest.mark.slow
@pytest.mark.parametrize("mode", [SIMPLE, MULTIGRAPH])
def test_6_sparse_reproduction(mode):
    _dominance("6", "sparse ensemble: bound <= empirical tail + 3 stderr", SPARSE, mode, 12, 248)


@pytest.mark.slow
def test_7_dense_reproduction():
    _dominance("7", "dense ensemble: bound <= empirical tail + 3 stderr", DENSE, MULTIGRAPH,
               DENSE.delta_max, 488)


@pytest.mark.slow
def test_8_global_vs_st_paired():
    dd = WIDE.degree_distribution()
    st, gl = run_paired_experiment(dd, UNIT, SAMPLES, WIDE.seed, WIDE.mode, WIDE.delta_max)
    rows = compare_tails(st, gl)
    bad = [r.delta for r in rows if r.violation]
    record(8, "global-cut tail <= s-t tail on shared samples",
           num_edges(dd) == 600 and not bad,
           f"m={num_edges(dd)} {SAMPLES} paired samples, violations={bad}")


def test_9_reproducible_csv(tmp_path):
    spec = tmp_path / "sparse.json"
    spec.write_text(SPARSE.dumps())
    outs = []
    for k, workers in enumerate(["1", "3"]):
        out = tmp_path / f"run{k}.csv"
        assert main(["simulate", "--config", str(spec), "--out", str(out), "--samples", "1000",
                     "--seed", "77", "--workers", workers]) == 0
        outs.append(out.read_bytes())
    record(9, "identical CSV bytes across --workers", outs[0] == outs[1],
           f"{len(outs[0])} bytes, workers 1 vs 3")
