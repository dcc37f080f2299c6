"""Exact combinatorial arithmetic.

Everything here works on Python ints and :class:`fractions.Fraction`, so
results are exact no matter how large the graph is.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping

import numpy as np


def binomial(a: int, b: int) -> int:
    """C(a, b), with 0 outside 0 <= b <= a."""
    if a < 0:
        raise ValueError(f"binomial: a must be non-negative, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def binomial_half(a: int, numer: int) -> int:
    """C(a, numer/2); zero when ``numer`` is odd or out of range."""
    if numer % 2:
        return 0
    return binomial(a, numer // 2)


class BigRationalPoly:
    """Sparse univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Fraction | int] | None = None):
        self.coeffs: Dict[int, Fraction] = {}
        for e, c in (coeffs or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            c = Fraction(c)
            if c:
                self.coeffs[int(e)] = c

    @classmethod
    def one(cls) -> "BigRationalPoly":
        return cls({0: 1})

    def __getitem__(self, e: int) -> Fraction:
        return self.coeffs.get(e, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BigRationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})x^{e}" for e, c in sorted(self.coeffs.items()))
        return f"BigRationalPoly({terms or '0'})"

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def low_degree(self) -> int:
        return min(self.coeffs, default=-1)

    def __mul__(self, other: "BigRationalPoly") -> "BigRationalPoly":
        out: Dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
        return BigRationalPoly(out)

    def __pow__(self, k: int) -> "BigRationalPoly":
        if k < 0:
            raise ValueError("negative power")
        result = BigRationalPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def total(self) -> Fraction:
        return sum(self.coeffs.values(), Fraction(0))


@lru_cache(maxsize=4096)
def _weight_power(mass: tuple, v: int) -> BigRationalPoly:
    f = BigRationalPoly(dict(mass))
    if v == 0:
        return BigRationalPoly.one()
    if v == 1:
        return f
    # grow incrementally so neighbouring v share the cache
    return _weight_power(mass, v - 1) * f


def weight_coef(mu, v: int, w: int) -> Fraction:
    """[x^w] f(x)^v where f is the weight generator of ``mu``."""
    if v < 0 or w < 0:
        raise ValueError("v and w must be non-negative")
    if v == 0:
        return Fraction(int(w == 0))
    lo = min(mu.mass)
    if w < v * lo or w > v * mu.q:
        return Fraction(0)
    return _weight_power(mu.key(), v)[w]


@dataclass(frozen=True)
class BivariateCoeffTable:
    """Dense table ``table[h, u]`` = [x^h y^u] prod_i (1 + x^i y)^(n d_i).

    ``table`` is a numpy object array of Python ints, shape (2m+1, n+1).
    """

    n: int
    m: int
    table: np.ndarray

    def __getitem__(self, hu) -> int:
        return self.table[hu]

    def total(self) -> int:
        return int(sum(int(x) for x in self.table.flat))


def degree_product_table(dd) -> BivariateCoeffTable:
    n, m = dd.n, dd.num_edges()
    table = np.zeros((2 * m + 1, n + 1), dtype=object)
    table[0, 0] = 1
    for deg, count in sorted(dd.counts().items()):
        if count == 0:
            continue
        # factor (1 + x^deg y)^count expanded binomially, then one
        # truncated shifted-add per term
        new = np.zeros_like(table)
        for j in range(count + 1):
            dh = deg * j
            if dh > 2 * m or j > n:
                break
            c = math.comb(count, j)
            if dh == 0:
                new[:, j:] += c * table[:, : n + 1 - j]
            else:
                new[dh:, j:] += c * table[: 2 * m + 1 - dh, : n + 1 - j]
        table = new
    table.setflags(write=False)
    return BivariateCoeffTable(n=n, m=m, table=table)
