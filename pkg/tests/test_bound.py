from fractions import Fraction
from math import comb

import pytest

from stcut.bound import (CutBound, expected_A, expected_A_regular, format_rational,
                         tail_lower_bound)
from stcut.ensemble import DegreeDistribution, degree_sequence
from stcut.genpoly import degree_product_table
from stcut.oracle import exhaustive_ensemble, small_configs

CUBIC4 = DegreeDistribution(4, {3: 1})


def test_vanishing_weight_factor(unit):
    cb = CutBound(CUBIC4, unit)
    assert cb.expected_A(1, 2, 3) == 0
    assert cb.expected_B_upper(7) == 0  # more weight than edges


def test_single_edge_regular(unit):
    # graph 1-2, pair (1,2): X={1} and X={2} both give u=1, v=1, w=1
    assert expected_A_regular(2, 1, unit, 1, 1, 1) == 2
    assert CutBound(DegreeDistribution(2, {1: 1}), unit).expected_A(1, 1, 1) == 2


def test_regular_odd_half_index(unit):
    # n=4, c=3, u=1: cu - v = 3 - 2 is odd
    assert expected_A_regular(4, 3, unit, 1, 2, 2) == 0
    with pytest.raises(ValueError):
        expected_A_regular(3, 3, unit, 1, 1, 1)


@pytest.mark.parametrize("c", [3, 4])
def test_regular_identity(c, unit, half_half):
    for n in range(c + 1, 13):
        if n * c % 2:
            continue
        dd = DegreeDistribution(n, {c: 1})
        for mu in (unit, half_half):
            cb = CutBound(dd, mu)
            for u in range(1, n):
                for v in range(cb.m + 1):
                    for w in range(v, 2 * v + 1):
                        assert cb.expected_A(u, v, w) == expected_A_regular(n, c, mu, u, v, w)


def test_sum_order_independent(paper_dds, unit):
    cb = CutBound(paper_dds["sparse"], unit)
    for u, v in [(1, 3), (60, 5), (119, 6), (37, 0)]:
        assert cb.expected_A(u, v, v) == cb.expected_A(u, v, v, reverse=True)


def test_index_errors(unit):
    cb = CutBound(CUBIC4, unit)
    for args in [(0, 1, 1), (4, 1, 1), (1, 7, 1), (1, 1, -1)]:
        with pytest.raises(IndexError):
            cb.expected_A(*args)


@pytest.mark.parametrize("name, dd, mu", small_configs(), ids=lambda x: x if isinstance(x, str) else "")
def test_expected_A_equals_enumeration(name, dd, mu):
    cb = CutBound(dd, mu)
    ens = exhaustive_ensemble(degree_sequence(dd), mu)
    for u in range(1, dd.n):
        for v in range(cb.m + 1):
            for w in range(mu.q * cb.m + 1):
                assert cb.expected_A(u, v, w) == ens.A.get((u, v, w), 0), (u, v, w)


@pytest.mark.parametrize("name, dd, mu", small_configs(), ids=lambda x: x if isinstance(x, str) else "")
def test_theorem_directions(name, dd, mu):
    cb = CutBound(dd, mu)
    ens = exhaustive_ensemble(degree_sequence(dd), mu, delta_max=10)
    for w in range(mu.q * cb.m + 1):
        assert ens.B.get(w, 0) <= cb.expected_B_upper(w)
    for e in cb.tail_lower_bound(10).entries:
        assert ens.tail[e.delta] >= e.clamped_bound
        assert ens.tail[e.delta] >= e.raw_bound


def test_B_upper_is_half_sum_of_A(half_half):
    dd = DegreeDistribution(6, {2: Fraction(1, 3), 3: Fraction(2, 3)})
    cb = CutBound(dd, half_half)
    for w in range(0, 2 * cb.m + 1):
        total = sum(cb.expected_A(u, v, w) for u in range(1, dd.n) for v in range(cb.m + 1))
        assert cb.expected_B_upper(w) == total / 2


def test_B_upper_zero_weight(paper_dds, unit):
    dd = paper_dds["sparse"]
    n, m = dd.n, dd.num_edges()
    t = degree_product_table(dd)
    direct = sum(Fraction(u * (n - u) * comb(m, h // 2) * int(t[h, u]), n * (n - 1) * comb(2 * m, h))
                 for u in range(1, n) for h in range(0, 2 * m + 1, 2))
    assert CutBound(dd, unit, t).expected_B_upper(0) == direct


def test_unit_weights_only_v_equals_w(unit):
    dd = DegreeDistribution(6, {3: 1})
    cb = CutBound(dd, unit)
    for w in range(cb.m + 1):
        assert list(cb.v_window(w)) == [w]
        for v in range(cb.m + 1):
            if v != w:
                assert cb.expected_A(2, v, w) == 0


def test_curve_shape(paper_dds, unit):
    curve = tail_lower_bound(paper_dds["sparse"], unit, 12)
    raw = [e.raw_bound for e in curve.entries]
    assert curve.deltas() == list(range(1, 13))
    assert raw[0] <= 1
    assert all(b <= a for a, b in zip(raw, raw[1:]))
    assert raw[-1] < 0  # vacuous region is reported, not hidden
    for e in curve.entries:
        assert e.clamped_bound == max(0, min(1, e.raw_bound))


def test_curve_rejects_zero_delta(unit):
    with pytest.raises(ValueError):
        tail_lower_bound(CUBIC4, unit, 0)


def test_module_functions_agree(unit):
    t = degree_product_table(CUBIC4)
    assert expected_A(CUBIC4, unit, t, 2, 4, 4) == CutBound(CUBIC4, unit).expected_A(2, 4, 4)


def test_format_rational():
    assert format_rational(Fraction(1, 3)) == "0.333333333333333"
    assert format_rational(Fraction(-5, 2)) == "-2.5"
    assert format_rational(Fraction(0)) == "0"
    assert len(format_rational(Fraction(2, 7)).replace("0.", "")) >= 12
