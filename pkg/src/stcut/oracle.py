"""Exhaustive small-instance checks of the cut-space machinery and the bound.

Each ``check_*`` function returns a :class:`CheckResult`; ``run_suite`` runs
a selection of them.  The exhaustive ensemble averages here enumerate every
stub matching, every capacity assignment and every ordered (s, t) pair, and
never call into :mod:`stcut.bound`.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from . import cuts
from .bound import CutBound, expected_A_regular
from .ensemble import (DegreeDistribution, WeightDistribution, WeightedMultigraph,
                       all_matchings, degree_sequence)
from .genpoly import binomial, binomial_half

MAX_ORACLE_N = 20


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  {self.detail}".rstrip()


def random_graph(rng: np.random.Generator, n: int, m: int, q: int = 1,
                 loops: bool = True) -> WeightedMultigraph:
    edges = []
    for _ in range(m):
        a, b = (int(x) for x in rng.integers(1, n + 1, size=2))
        if not loops:
            while a == b:
                b = int(rng.integers(1, n + 1))
        edges.append((a, b, int(rng.integers(1, q + 1))))
    return WeightedMultigraph(n, tuple(edges))


def components(g: WeightedMultigraph) -> List[int]:
    """Component label of each vertex 1..n (index 0 unused)."""
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in g.edges:
        parent[find(a)] = find(b)
    return [find(x) for x in range(g.n + 1)]


def is_connected(g: WeightedMultigraph) -> bool:
    return len(set(components(g)[1:])) == 1


def cutsets_unique(g: WeightedMultigraph, s: int, t: int) -> bool:
    """Whether each s-t cut-set comes from a single bipartition.

    True for connected graphs, and also for two components that split s from t.
    """
    comp = components(g)
    k = len(set(comp[1:]))
    return k == 1 or (k == 2 and comp[s] != comp[t])


def direct_cut_indicator(g: WeightedMultigraph, X: set) -> Tuple[int, ...]:
    return tuple(int((a in X) != (b in X)) for a, b, _ in g.edges)


# -- individual checks -------------------------------------------------------

def check_binomial_identity(m_max: int = 20) -> CheckResult:
    for m in range(m_max + 1):
        for h in range(2 * m + 1):
            lhs = sum(binomial(m, v) * 2**v * binomial_half(m - v, h - v) for v in range(m + 1))
            if lhs != binomial(2 * m, h):
                return CheckResult("binomial_identity", False, f"m={m} h={h}: {lhs}")
    return CheckResult("binomial_identity", True, f"m <= {m_max}")


def check_constraint_map(num_graphs: int = 50, max_n: int = 8, seed: int = 1) -> CheckResult:
    rng = np.random.default_rng(seed)
    for k in range(num_graphs):
        n = int(rng.integers(2, max_n + 1))
        g = random_graph(rng, n, int(rng.integers(1, 3 * n)), q=5)
        for bits in itertools.product((0, 1), repeat=n):
            X = {i + 1 for i, b in enumerate(bits) if b}
            if cuts.constraint_map(g, bits) != direct_cut_indicator(g, X):
                return CheckResult("constraint_map", False, f"graph {k} X={sorted(X)}")
    return CheckResult("constraint_map", True, f"{num_graphs} graphs, n <= {max_n}, all subsets")


def check_lemma2(num_graphs: int = 60, max_n: int = 7, seed: int = 2) -> CheckResult:
    """B(w) <= (1/2) sum_{u,v} A(u,v,w); equality exactly when cut-sets are unique."""
    rng = np.random.default_rng(seed)
    seen = Counter()
    for k in range(num_graphs):
        n = int(rng.integers(2, max_n + 1))
        g = random_graph(rng, n, int(rng.integers(0, 2 * n)), q=3)
        s, t = (int(x) + 1 for x in rng.choice(n, 2, replace=False))
        dist = cuts.brute_force_cut_distribution(g, s, t)
        half = Counter()
        for (u, v, w), c in dist.A.items():
            half[w] += Fraction(c, 2)
        ws = set(half) | set(dist.B)
        if any(dist.B.get(w, 0) > half[w] for w in ws):
            return CheckResult("lemma2", False, f"inequality fails on graph {k}")
        equal = all(dist.B.get(w, 0) == half[w] for w in ws)
        unique = cutsets_unique(g, s, t)
        seen[is_connected(g)] += 1
        if equal != unique:
            return CheckResult("lemma2", False, f"graph {k}: equality={equal} unique={unique}")
        if is_connected(g) and not equal:
            return CheckResult("lemma2", False, f"graph {k}: connected but strict")
    return CheckResult("lemma2", True,
                       f"{seen[True]} connected, {seen[False]} disconnected graphs")


def check_maxflow(num_graphs: int = 100, max_n: int = 10, q: int = 5, seed: int = 3) -> CheckResult:
    rng = np.random.default_rng(seed)
    for k in range(num_graphs):
        n = int(rng.integers(2, max_n + 1))
        g = random_graph(rng, n, int(rng.integers(0, 3 * n)), q=q)
        s, t = (int(x) + 1 for x in rng.choice(n, 2, replace=False))
        if cuts.min_st_cut(g, s, t) != cuts.brute_min_st_cut(g, s, t):
            return CheckResult("maxflow", False, f"min_st_cut wrong on graph {k}")
        if cuts.global_min_cut(g) != cuts.brute_global_min_cut(g):
            return CheckResult("maxflow", False, f"global_min_cut wrong on graph {k}")
    return CheckResult("maxflow", True, f"{num_graphs} graphs, n <= {max_n}, q <= {q}")


# -- exhaustive ensemble -----------------------------------------------------

@dataclass
class EnsembleAverages:
    """Exact averages over matchings, capacities and ordered (s, t) pairs."""

    A: Dict[Tuple[int, int, int], Fraction]
    B: Dict[int, Fraction]
    # delta -> Pr[lambda >= delta]
    tail: Dict[int, Fraction]
    num_matchings: int


def _canonical_multigraphs(seq: Sequence[int]) -> Counter:
    stubs = [v for v, d in enumerate(seq, start=1) for _ in range(d)]
    graphs: Counter = Counter()
    for matching in all_matchings(stubs):
        graphs[tuple(sorted(tuple(sorted(p)) for p in matching))] += 1
    return graphs


def exhaustive_ensemble(seq: Sequence[int], mu: WeightDistribution,
                        delta_max: int = 8) -> EnsembleAverages:
    n = len(seq)
    if n > MAX_ORACLE_N:
        raise ValueError(f"exhaustive ensemble limited to n <= {MAX_ORACLE_N}")
    graphs = _canonical_multigraphs(seq)
    total = sum(graphs.values())
    m = sum(seq) // 2
    support = list(mu.mass)
    assignments = list(itertools.product(support, repeat=m))
    probs = [math.prod((mu.mass[c] for c in caps), start=Fraction(1)) for caps in assignments]
    pairs = [(s, t) for s in range(n) for t in range(n) if s != t]
    subsets = range(1, 2**n - 1)

    # integer accumulators per capacity assignment; probabilities applied at the end
    A_counts = [Counter() for _ in assignments]
    B_counts = [Counter() for _ in assignments]
    tail_counts = [Counter() for _ in assignments]
    for edges, mult in graphs.items():
        cutset = {}
        for X in subsets:
            cs = 0
            for i, (a, b) in enumerate(edges):
                if ((X >> (a - 1)) ^ (X >> (b - 1))) & 1:
                    cs |= 1 << i
            cutset[X] = cs
        # distinct cut-sets per ordered pair
        per_pair = []
        for s, t in pairs:
            per_pair.append({cs for X, cs in cutset.items() if ((X >> s) ^ (X >> t)) & 1})
        for k, caps in enumerate(assignments):
            weight = [sum(caps[i] for i in range(m) if cs >> i & 1) for cs in range(2**m)]
            for X, cs in cutset.items():
                u = bin(X).count("1")
                # X is an s-t cut vector for 2u(n-u) ordered pairs
                A_counts[k][(u, bin(cs).count("1"), weight[cs])] += mult * 2 * u * (n - u)
            for sets in per_pair:
                ws = [weight[cs] for cs in sets]
                for w in ws:
                    B_counts[k][w] += mult
                lam = min(ws)
                for delta in range(1, min(lam, delta_max) + 1):
                    tail_counts[k][delta] += mult

    denom = total * len(pairs)

    def combine(counters) -> Dict:
        out: Dict = {}
        for p, ctr in zip(probs, counters):
            for key, c in ctr.items():
                out[key] = out.get(key, Fraction(0)) + p * Fraction(c, denom)
        return out

    tail = combine(tail_counts)
    return EnsembleAverages(
        A=combine(A_counts), B=combine(B_counts),
        tail={d: tail.get(d, Fraction(0)) for d in range(1, delta_max + 1)},
        num_matchings=total)


# -- bound versus exhaustive ensemble ----------------------------------------

def small_configs() -> List[Tuple[str, DegreeDistribution, WeightDistribution]]:
    """Tiny ensembles that are cheap to enumerate exhaustively."""
    unit = WeightDistribution.unit()
    two = WeightDistribution(2, {1: Fraction(1, 3), 2: Fraction(2, 3)})
    cubic4 = DegreeDistribution(4, {3: 1})
    mixed5 = DegreeDistribution(5, {1: Fraction(2, 5), 2: Fraction(1, 5), 3: Fraction(2, 5)})
    mixed5b = DegreeDistribution(5, {1: Fraction(1, 5), 2: Fraction(3, 5), 3: Fraction(1, 5)})
    mixed5c = DegreeDistribution(5, {1: Fraction(3, 5), 2: Fraction(1, 5), 3: Fraction(1, 5)})
    out = []
    for name, dd in [("n4_cubic", cubic4), ("n5_11233", mixed5),
                     ("n5_12223", mixed5b), ("n5_11123", mixed5c)]:
        out.append((f"{name}_q1", dd, unit))
        out.append((f"{name}_q2", dd, two))
    return out


def check_lemma3(configs=None) -> CheckResult:
    """expected_A equals the exhaustive average for every (u, v, w)."""
    configs = configs if configs is not None else small_configs()
    for name, dd, mu in configs:
        cb = CutBound(dd, mu)
        ens = exhaustive_ensemble(degree_sequence(dd), mu)
        keys = set(ens.A)
        keys |= {(u, v, w) for u in range(1, dd.n) for v in range(cb.m + 1)
                 for w in range(mu.q * cb.m + 2)}
        for u, v, w in sorted(keys):
            got = cb.expected_A(u, v, w)
            want = ens.A.get((u, v, w), Fraction(0))
            if got != want:
                return CheckResult("lemma3", False, f"{name} (u,v,w)=({u},{v},{w}): {got} != {want}")
    return CheckResult("lemma3", True, f"{len(configs)} ensembles, exact")


def check_theorems(configs=None, delta_max: int = 8) -> CheckResult:
    """E[B(w)] <= expected_B_upper(w) and Pr[lambda >= delta] >= clamped bound."""
    configs = configs if configs is not None else small_configs()
    for name, dd, mu in configs:
        cb = CutBound(dd, mu)
        ens = exhaustive_ensemble(degree_sequence(dd), mu, delta_max)
        for w in range(mu.q * cb.m + 1):
            if ens.B.get(w, Fraction(0)) > cb.expected_B_upper(w):
                return CheckResult("theorems", False, f"{name}: E[B({w})] above its bound")
        curve = cb.tail_lower_bound(delta_max)
        for e in curve.entries:
            if ens.tail[e.delta] < e.clamped_bound:
                return CheckResult("theorems", False, f"{name}: tail below bound at delta={e.delta}")
    return CheckResult("theorems", True, f"{len(configs)} ensembles, exact")


def check_regular_identity(max_n: int = 12, degrees=(3, 4)) -> CheckResult:
    unit = WeightDistribution.unit()
    two = WeightDistribution(2, {1: Fraction(1, 2), 2: Fraction(1, 2)})
    count = 0
    for c in degrees:
        for n in range(c + 1, max_n + 1):
            if (n * c) % 2:
                continue
            dd = DegreeDistribution(n, {c: 1})
            for mu in (unit, two):
                cb = CutBound(dd, mu)
                for u in range(1, n):
                    for v in range(cb.m + 1):
                        for w in range(v, mu.q * v + 1):
                            if cb.expected_A(u, v, w) != expected_A_regular(n, c, mu, u, v, w):
                                return CheckResult("regular_identity", False,
                                                   f"c={c} n={n} (u,v,w)=({u},{v},{w})")
                            count += 1
    return CheckResult("regular_identity", True, f"{count} index triples")


SUITES: Dict[str, Callable[..., CheckResult]] = {
    "binomial": check_binomial_identity,
    "constraint_map": check_constraint_map,
    "lemma2": check_lemma2,
    "lemma3": check_lemma3,
    "theorems": check_theorems,
    "maxflow": check_maxflow,
    "regular": check_regular_identity,
}


def run_suite(names: Sequence[str] = tuple(SUITES), max_n: int = 10) -> List[CheckResult]:
    """Run the named checks; ``max_n`` caps the graph size of the random-graph checks."""
    if not names:
        raise ValueError("no oracle checks selected")
    if max_n > MAX_ORACLE_N:
        raise ValueError(f"max-n {max_n} exceeds the exhaustive guard of {MAX_ORACLE_N}")
    if max_n < 2:
        raise ValueError("max-n must be at least 2")
    unknown = [x for x in names if x not in SUITES]
    if unknown:
        raise ValueError(f"unknown oracle checks: {', '.join(unknown)}")
    sized = {"constraint_map": 8, "lemma2": 7, "maxflow": 10}
    results = []
    for name in names:
        if name in sized:
            results.append(SUITES[name](max_n=min(sized[name], max_n)))
        else:
            results.append(SUITES[name]())
    return results
