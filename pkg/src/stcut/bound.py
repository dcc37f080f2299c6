"""Exact evaluation of the ensemble-average cut counts and the tail bound.

For a random graph G from the stub-matching ensemble and a random s-t pair:

* ``expected_A(u, v, w)`` is the average number of s-t cut vectors with u
  ones whose cut-set has v edges of total capacity w;
* ``expected_B_upper(w)`` bounds the average number of distinct s-t cut-sets
  of capacity w (half the sum of expected_A over u and v);
* ``tail_lower_bound`` turns these into a lower bound on Pr[lambda >= delta]
  via Markov's inequality on the number of cut-sets lighter than delta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import List, Optional

from .ensemble import DegreeDistribution, WeightDistribution
from .genpoly import (BivariateCoeffTable, binomial, binomial_half,
                      degree_product_table, weight_coef)


def format_rational(x: Fraction, digits: int = 15) -> str:
    """Decimal rendering of an exact rational with ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits + 10
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return f"{d:.{digits}g}" if x else "0"


@dataclass(frozen=True)
class BoundEntry:
    delta: int
    raw_bound: Fraction
    clamped_bound: Fraction


@dataclass
class BoundCurve:
    entries: List[BoundEntry] = field(default_factory=list)

    def deltas(self) -> List[int]:
        return [e.delta for e in self.entries]

    def raw(self, delta: int) -> Fraction:
        return self.entries[delta - self.entries[0].delta].raw_bound

    def clamped(self, delta: int) -> Fraction:
        return self.entries[delta - self.entries[0].delta].clamped_bound


def _clamp(x: Fraction) -> Fraction:
    return max(Fraction(0), min(Fraction(1), x))


class CutBound:
    """Per-ensemble precomputation shared across all (u, v, w, delta)."""

    def __init__(self, dd: DegreeDistribution, mu: WeightDistribution,
                 table: Optional[BivariateCoeffTable] = None):
        self.dd = dd
        self.mu = mu
        self.n = dd.n
        self.m = dd.num_edges()
        self.table = table if table is not None else degree_product_table(dd)
        if (self.table.n, self.table.m) != (self.n, self.m):
            raise ValueError("coefficient table does not belong to this degree distribution")
        n, m = self.n, self.m
        self.central = [math.comb(2 * m, h) for h in range(2 * m + 1)]
        t = self.table.table
        # u(n-u)-weighted column sums: the u-sum of expected_B_upper collapses onto h
        self.pair_weighted = [
            sum(u * (n - u) * int(t[h, u]) for u in range(1, n)) for h in range(2 * m + 1)
        ]
        self._h_sums: dict = {}

    def _h_sum(self, v: int, column, reverse: bool = False) -> Fraction:
        m = self.m
        hs = range(v, 2 * m - v + 1, 2)
        if reverse:
            hs = reversed(hs)
        total = Fraction(0)
        for h in hs:
            c = column[h]
            if c:
                total += Fraction(binomial_half(m - v, h - v) * c, self.central[h])
        return total

    def _check(self, u: int, v: int, w: int) -> None:
        if not 1 <= u <= self.n - 1:
            raise IndexError(f"u={u} outside [1, {self.n - 1}]")
        if not 0 <= v <= self.m:
            raise IndexError(f"v={v} outside [0, {self.m}]")
        if w < 0:
            raise IndexError(f"w={w} is negative")

    def expected_A(self, u: int, v: int, w: int, reverse: bool = False) -> Fraction:
        self._check(u, v, w)
        coef = weight_coef(self.mu, v, w)
        if not coef:
            return Fraction(0)
        n, m = self.n, self.m
        pref = Fraction(2 ** (v + 1) * u * (n - u) * binomial(m, v), n * (n - 1)) * coef
        column = [int(x) for x in self.table.table[:, u]]
        return pref * self._h_sum(v, column, reverse)

    def v_window(self, w: int) -> range:
        """Cut-set sizes v for which [x^w] f(x)^v can be non-zero."""
        if w == 0:
            return range(0, 1)
        lo = -(-w // self.mu.q)
        hi = min(w // min(self.mu.mass), self.m)
        return range(max(lo, 1), hi + 1)

    def expected_B_upper(self, w: int) -> Fraction:
        if w < 0:
            raise IndexError(f"w={w} is negative")
        n, m = self.n, self.m
        total = Fraction(0)
        for v in self.v_window(w):
            coef = weight_coef(self.mu, v, w)
            if not coef:
                continue
            if v not in self._h_sums:
                self._h_sums[v] = self._h_sum(v, self.pair_weighted)
            total += Fraction(2 ** v * binomial(m, v), n * (n - 1)) * coef * self._h_sums[v]
        return total

    def tail_lower_bound(self, delta_max: int) -> BoundCurve:
        if delta_max < 1:
            raise ValueError("delta_max must be at least 1")
        curve = BoundCurve()
        raw = Fraction(1)
        for delta in range(1, delta_max + 1):
            raw -= self.expected_B_upper(delta - 1)
            curve.entries.append(BoundEntry(delta, raw, _clamp(raw)))
        return curve


def expected_A(dd, mu, table, u, v, w) -> Fraction:
    return CutBound(dd, mu, table).expected_A(u, v, w)


def expected_B_upper(dd, mu, table, w) -> Fraction:
    return CutBound(dd, mu, table).expected_B_upper(w)


def tail_lower_bound(dd, mu, delta_max) -> BoundCurve:
    return CutBound(dd, mu).tail_lower_bound(delta_max)


def expected_A_regular(n: int, c: int, mu: WeightDistribution, u: int, v: int, w: int) -> Fraction:
    """expected_A specialised to c-regular graphs, in closed form."""
    if (n * c) % 2:
        raise ValueError(f"n*c = {n * c} is odd; no {c}-regular graph on {n} vertices")
    m = n * c // 2
    if not 1 <= u <= n - 1:
        raise IndexError(f"u={u} outside [1, {n - 1}]")
    if not 0 <= v <= m:
        raise IndexError(f"v={v} outside [0, {m}]")
    if w < 0:
        raise IndexError(f"w={w} is negative")
    num = (2 ** (v + 1) * binomial(n - 2, u - 1) * binomial(m, v)
           * binomial_half(m - v, c * u - v))
    if not num:
        return Fraction(0)
    return Fraction(num, binomial(c * n, c * u)) * weight_coef(mu, v, w)
