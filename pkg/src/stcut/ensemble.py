"""Random graph ensemble with a prescribed degree distribution.

Graphs are drawn by uniform stub matching (the configuration model).  In
``simple`` mode whole matchings are rejected until the graph has neither
self-loops nor parallel edges; ``multigraph`` mode keeps every matching.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

SIMPLE = "simple"
MULTIGRAPH = "multigraph"
MODES = (SIMPLE, MULTIGRAPH)

DEFAULT_REJECTION_CAP = 10**6


class EnsembleError(ValueError):
    """An ensemble parameter violates one of its invariants."""


class RejectionCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DegreeDistribution:
    n: int
    fractions: Mapping[int, Fraction]

    def __post_init__(self):
        fr = {int(i): Fraction(d) for i, d in self.fractions.items()}
        object.__setattr__(self, "fractions", fr)
        self.validate()

    def validate(self) -> None:
        if self.n < 1:
            raise EnsembleError(f"vertex count must be positive, got n={self.n}")
        for i, d in self.fractions.items():
            if i < 1:
                raise EnsembleError(f"degree {i} is not a positive integer")
            if d < 0:
                raise EnsembleError(f"fraction d_{i}={d} is negative")
        total = sum(self.fractions.values(), Fraction(0))
        if total != 1:
            raise EnsembleError(f"degree fractions sum to {total}, not 1")
        for i, d in self.fractions.items():
            if (self.n * d).denominator != 1:
                raise EnsembleError(
                    f"n*d_{i} = {self.n * d} is not an integer (n={self.n})")
        stubs = sum(i * self.n * d for i, d in self.fractions.items())
        if stubs % 2:
            raise EnsembleError(
                f"sum of degrees {stubs} is odd; no graph has this degree sequence")

    def counts(self) -> Dict[int, int]:
        """Number of vertices of each degree, n*d_i."""
        return {i: int(self.n * d) for i, d in sorted(self.fractions.items())}

    def num_edges(self) -> int:
        return num_edges(self)

    def max_degree(self) -> int:
        return max(i for i, c in self.counts().items() if c)

    def min_degree(self) -> int:
        return min(i for i, c in self.counts().items() if c)


@dataclass(frozen=True)
class WeightDistribution:
    q: int
    mass: Mapping[int, Fraction]

    def __post_init__(self):
        mass = {int(w): Fraction(p) for w, p in self.mass.items()}
        object.__setattr__(self, "mass", {w: p for w, p in sorted(mass.items()) if p})
        if self.q < 1:
            raise EnsembleError(f"max weight q must be positive, got {self.q}")
        for w, p in mass.items():
            if not 1 <= w <= self.q:
                raise EnsembleError(f"weight {w} outside [1, {self.q}]")
            if p < 0:
                raise EnsembleError(f"mu({w})={p} is negative")
        total = sum(mass.values(), Fraction(0))
        if total != 1:
            raise EnsembleError(f"weight masses sum to {total}, not 1")

    @classmethod
    def unit(cls) -> "WeightDistribution":
        return cls(q=1, mass={1: Fraction(1)})

    def key(self) -> Tuple[Tuple[int, Fraction], ...]:
        return tuple(self.mass.items())

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        support = np.fromiter(self.mass, dtype=np.int64)
        if len(support) == 1:
            return np.full(size, support[0], dtype=np.int64)
        p = np.array([float(x) for x in self.mass.values()])
        return rng.choice(support, size=size, p=p / p.sum())


@dataclass(frozen=True)
class WeightedMultigraph:
    """Undirected multigraph on vertices 1..n with integer capacities."""

    n: int
    edges: Tuple[Tuple[int, int, int], ...] = field(default=())

    def __post_init__(self):
        edges = tuple((int(a), int(b), int(c)) for a, b, c in self.edges)
        object.__setattr__(self, "edges", edges)
        for a, b, c in edges:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"edge ({a}, {b}) has endpoint outside [1, {self.n}]")
            if c < 1:
                raise ValueError(f"edge ({a}, {b}) has non-positive capacity {c}")

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> List[int]:
        deg = [0] * (self.n + 1)
        for a, b, _ in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg[1:]

    def is_simple(self) -> bool:
        seen = set()
        for a, b, _ in self.edges:
            if a == b:
                return False
            key = (a, b) if a < b else (b, a)
            if key in seen:
                return False
            seen.add(key)
        return True


def num_edges(dd: DegreeDistribution) -> int:
    stubs = sum(i * c for i, c in dd.counts().items())
    return stubs // 2


def degree_sequence(dd: DegreeDistribution) -> List[int]:
    dd.validate()
    seq: List[int] = []
    for i, c in sorted(dd.counts().items()):
        seq.extend([i] * c)
    return seq


def _stubs(seq: Sequence[int]) -> np.ndarray:
    if any(d < 0 for d in seq):
        raise EnsembleError("degrees must be non-negative")
    if sum(seq) % 2:
        raise EnsembleError(f"degree sum {sum(seq)} is odd")
    return np.repeat(np.arange(1, len(seq) + 1, dtype=np.int64), seq)


def _has_loop_or_multi(a: np.ndarray, b: np.ndarray, n: int) -> bool:
    if np.any(a == b):
        return True
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    keys = np.sort(lo * (n + 1) + hi)
    return bool(np.any(keys[1:] == keys[:-1]))


def random_stub_matching(num_stubs: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform perfect matching of stubs 0..num_stubs-1, as a (2, m) index array.

    Pairing consecutive entries of a uniform shuffle gives every matching
    the same probability.
    """
    perm = rng.permutation(num_stubs)
    return np.stack([perm[0::2], perm[1::2]])


def sample_graph(seq: Sequence[int], mu: WeightDistribution, rng: np.random.Generator,
                 mode: str = SIMPLE, rejection_cap: int = DEFAULT_REJECTION_CAP
                 ) -> WeightedMultigraph:
    """Draw one graph by uniform stub matching, then i.i.d. capacities from ``mu``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    stubs = _stubs(seq)
    n = len(seq)
    for _ in range(rejection_cap if mode == SIMPLE else 1):
        pairs = random_stub_matching(len(stubs), rng)
        a, b = stubs[pairs[0]], stubs[pairs[1]]
        if mode == MULTIGRAPH or not _has_loop_or_multi(a, b, n):
            break
    else:
        raise RejectionCapExceeded(
            f"no simple graph after {rejection_cap} stub matchings for a degree "
            f"sequence with {n} vertices and {len(stubs) // 2} edges; "
            f"use multigraph mode or a sparser ensemble")
    caps = mu.sample(rng, len(a))
    return WeightedMultigraph(n, tuple(zip(a.tolist(), b.tolist(), caps.tolist())))


def simple_graph_probability_estimate(seq: Sequence[int]) -> float:
    """Asymptotic chance that a stub matching is simple, exp(-nu/2 - nu^2/4)."""
    d = np.asarray(seq, dtype=float)
    if d.sum() == 0:
        return 1.0
    nu = float((d * (d - 1)).sum() / d.sum())
    return math.exp(-nu / 2 - nu * nu / 4)


def all_matchings(stubs: Sequence[int]):
    """Yield every perfect matching of ``stubs`` as a list of pairs.

    There are (2m-1)!! of them; meant for tiny exhaustive checks.
    """
    stubs = list(stubs)
    if not stubs:
        yield []
        return
    first, rest = stubs[0], stubs[1:]
    for i in range(len(rest)):
        pair = (first, rest[i])
        for tail in all_matchings(rest[:i] + rest[i + 1:]):
            yield [pair] + tail
