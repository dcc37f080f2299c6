"""Cut vectors, cut-set vectors and exact minimum cut algorithms."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np
from numba import njit

from .ensemble import WeightedMultigraph

BRUTE_FORCE_MAX_N = 20


def _check_vertex(g: WeightedMultigraph, x: int, name: str) -> None:
    if not 1 <= x <= g.n:
        raise ValueError(f"{name}={x} is not a vertex of a graph with n={g.n}")


def constraint_map(g: WeightedMultigraph, a: Sequence[int]) -> Tuple[int, ...]:
    """Cut-set vector of the cut with incidence vector ``a``.

    Bit i is a[u] XOR a[v] for edge e_i = (u, v); self-loops give 0.
    ``a[k]`` refers to vertex k+1.
    """
    if len(a) != g.n:
        raise ValueError(f"cut vector has length {len(a)}, graph has {g.n} vertices")
    return tuple((a[x - 1] ^ a[y - 1]) & 1 for x, y, _ in g.edges)


def cut_weight(g: WeightedMultigraph, a: Sequence[int]) -> int:
    b = constraint_map(g, a)
    return sum(c for bit, (_, _, c) in zip(b, g.edges) if bit)


def _arcs(g: WeightedMultigraph):
    # residual network: each undirected edge -> arc pair, each the other's reverse
    head: List[int] = []
    cap: List[int] = []
    adj: List[List[int]] = [[] for _ in range(g.n + 1)]
    for x, y, c in g.edges:
        if x == y:
            continue
        adj[x].append(len(head))
        head.append(y)
        cap.append(c)
        adj[y].append(len(head))
        head.append(x)
        cap.append(c)
    return head, cap, adj


def min_st_cut(g: WeightedMultigraph, s: int, t: int) -> int:
    """Minimum s-t cut weight via Dinic's blocking-flow max-flow."""
    _check_vertex(g, s, "s")
    _check_vertex(g, t, "t")
    if s == t:
        raise ValueError("s and t must differ")
    head, cap, adj = _arcs(g)
    n = g.n
    flow = 0
    while True:
        level = [-1] * (n + 1)
        level[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e in adj[x]:
                y = head[e]
                if cap[e] > 0 and level[y] < 0:
                    level[y] = level[x] + 1
                    queue.append(y)
        if level[t] < 0:
            return flow
        it = [0] * (n + 1)

        def push(x: int, limit: int) -> int:
            if x == t:
                return limit
            arcs = adj[x]
            while it[x] < len(arcs):
                e = arcs[it[x]]
                y = head[e]
                if cap[e] > 0 and level[y] == level[x] + 1:
                    d = push(y, min(limit, cap[e]))
                    if d:
                        cap[e] -= d
                        cap[e ^ 1] += d
                        return d
                it[x] += 1
            return 0

        while True:
            f = push(s, 1 << 62)
            if not f:
                break
            flow += f


@njit(cache=True)
def _stoer_wagner(w):
    n = w.shape[0]
    w = w.copy()
    active = np.arange(n)
    k = n
    best = -1
    conn = np.empty(n, dtype=np.int64)
    added = np.empty(n, dtype=np.bool_)
    while k > 1:
        for i in range(k):
            conn[i] = w[active[0], active[i]]
            added[i] = False
        added[0] = True
        prev = 0
        last = 0
        phase_cut = 0
        for _ in range(k - 1):
            nxt = -1
            top = -1
            for i in range(k):
                if not added[i] and conn[i] > top:
                    top = conn[i]
                    nxt = i
            prev = last
            last = nxt
            phase_cut = conn[nxt]
            added[nxt] = True
            row = active[nxt]
            for i in range(k):
                conn[i] += w[row, active[i]]
        if best < 0 or phase_cut < best:
            best = phase_cut
            if best == 0:
                return 0
        vp = active[prev]
        vl = active[last]
        for j in range(n):
            w[vp, j] += w[vl, j]
            w[j, vp] += w[j, vl]
        w[vp, vp] = 0
        for i in range(last, k - 1):
            active[i] = active[i + 1]
        k -= 1
    return best


def global_min_cut(g: WeightedMultigraph) -> int:
    """Global minimum cut weight by Stoer-Wagner on a dense weight matrix."""
    n = g.n
    if n < 2:
        raise ValueError("global minimum cut needs at least two vertices")
    w = np.zeros((n, n), dtype=np.int64)
    for x, y, c in g.edges:
        if x != y:
            w[x - 1, y - 1] += c
            w[y - 1, x - 1] += c
    return int(_stoer_wagner(w))


def all_cut_vectors(n: int):
    """Every non-empty proper subset of the n vertices, as 0/1 tuples."""
    for bits in product((0, 1), repeat=n):
        if 0 < sum(bits) < n:
            yield bits


def brute_min_st_cut(g: WeightedMultigraph, s: int, t: int) -> int:
    _check_vertex(g, s, "s")
    _check_vertex(g, t, "t")
    return min(cut_weight(g, a) for a in all_cut_vectors(g.n) if a[s - 1] != a[t - 1])


def brute_global_min_cut(g: WeightedMultigraph) -> int:
    return min(cut_weight(g, a) for a in all_cut_vectors(g.n))


@dataclass
class CutDistribution:
    # (u, v, w) -> number of s-t cut vectors, both orientations
    A: Dict[Tuple[int, int, int], int]
    # w -> number of distinct s-t cut-sets of that weight
    B: Dict[int, int]


def brute_force_cut_distribution(g: WeightedMultigraph, s: int, t: int) -> CutDistribution:
    """Enumerate every s-t cut vector of ``g``.

    Vectors with a_s = 1, a_t = 0 are enumerated and each also counts for its
    complement, which has the same cut-set.
    """
    _check_vertex(g, s, "s")
    _check_vertex(g, t, "t")
    if s == t:
        raise ValueError("s and t must differ")
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"exhaustive enumeration limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    others = [x for x in range(1, n + 1) if x not in (s, t)]
    A: Counter = Counter()
    cutsets: Dict[int, set] = {}
    a = [0] * n
    a[s - 1] = 1
    for bits in product((0, 1), repeat=len(others)):
        for x, bit in zip(others, bits):
            a[x - 1] = bit
        b = constraint_map(g, a)
        u = sum(a)
        v = sum(b)
        w = sum(c for bit, (_, _, c) in zip(b, g.edges) if bit)
        A[(u, v, w)] += 1
        A[(n - u, v, w)] += 1
        cutsets.setdefault(w, set()).add(b)
    return CutDistribution(A=dict(A), B={w: len(sets) for w, sets in sorted(cutsets.items())})
