from fractions import Fraction

import pytest

from segmarket import PriceWindow, market, opt_prices
from segmarket.errors import BadRange, HypothesisViolated
from segmarket.lp import oracle_feasible
from segmarket.passive import is_feasible, min_consumer_surplus
from segmarket.regulator import (
    design_prefix_window,
    feasibility_sweep,
    sufficient_condition,
    uniform_market,
)

F = Fraction


def test_sufficient_condition_holds(v152):
    w = PriceWindow(0, 1)
    assert sufficient_condition(v152, w)
    assert is_feasible(v152, w)


def test_sufficient_condition_is_not_necessary(m1, w23):
    # the screening inequality fails (1.46 < 1.56) yet the window is feasible
    assert not sufficient_condition(m1, w23)
    assert is_feasible(m1, w23)


def test_sufficient_condition_hypothesis_gate(m1):
    with pytest.raises(HypothesisViolated):
        sufficient_condition(m1, PriceWindow(2, 3))  # optimal price inside
    tied = uniform_market(1, 4)
    assert len(opt_prices(tied)) == 2
    with pytest.raises(HypothesisViolated):
        sufficient_condition(tied, PriceWindow(0, 0))


def test_design_prefix_window_reference_market(m1):
    w = design_prefix_window(m1)
    assert (w.lo, w.hi) == (0, 1)
    # minimality and feasibility, both also confirmed by the LP
    assert is_feasible(m1, w) and oracle_feasible(m1, w, "passive")
    assert not is_feasible(m1, PriceWindow(0, 0))
    assert not oracle_feasible(m1, PriceWindow(0, 0), "passive")


def test_design_prefix_window_maximizes_protection(m1):
    """Among all contiguous feasible windows, the designed prefix gives
    buyers the largest guaranteed consumer surplus."""
    w = design_prefix_window(m1)
    best = min_consumer_surplus(m1, w)
    assert best == F("1.29")
    n = len(m1.grid)
    for lo in range(n):
        for hi in range(lo, n):
            cand = PriceWindow(lo, hi)
            if is_feasible(m1, cand):
                assert min_consumer_surplus(m1, cand) <= best


def test_design_prefix_window_trivial_cases():
    bottom_heavy = market([1, 2], [1, 0])
    assert design_prefix_window(bottom_heavy) == PriceWindow(0, 0)
    u9 = uniform_market(1, 9)
    assert design_prefix_window(u9) == PriceWindow(0, 3)  # values 1..4


def test_uniform_market_shapes():
    m = uniform_market(1, 4)
    assert m.grid.values == (1, 2, 3, 4)
    assert m.masses == (F("1/4"),) * 4
    point = uniform_market(5, 5)
    assert point.masses == (F(1),)
    assert opt_prices(uniform_market(1, 99)) == (49,)  # value 50


def test_uniform_market_rejects_bad_ranges():
    with pytest.raises(BadRange):
        uniform_market(0, 5)
    with pytest.raises(BadRange):
        uniform_market(3, 2)


SWEEP9 = [
    (1, 20, 6, 3),
    (2, 16, 5, 3),
    (3, 13, 4, 3),
    (4, 11, 3, 3),
    (5, 10, 3, 3),
    (6, 6, 1, 1),
    (7, 3, 0, 0),
    (8, 1, 0, 0),
    (9, 0, 0, 0),
]


def test_sweep_reference_counts():
    rows = feasibility_sweep(9)
    got = [(r.lo, r.n_sets, r.n_feasible, r.n_sufficient) for r in rows]
    assert got == SWEEP9
    assert all(r.hi == 9 for r in rows)
    assert not any(r.optprice_ties for r in rows)  # 5 is the unique optimum


def test_sweep_flags_ties():
    rows = feasibility_sweep(4, lows=[1])
    assert rows[0].optprice_ties
    assert rows[0].n_sufficient == 0  # screening test skipped under ties


def test_sweep_counts_are_consistent():
    for rows in (feasibility_sweep(9), feasibility_sweep(12)):
        for r in rows:
            assert 0 <= r.n_sufficient <= r.n_feasible <= r.n_sets
            assert r.prop_sufficient <= r.prop_feasible


def test_sweep_pruned_equals_exhaustive():
    assert feasibility_sweep(9) == feasibility_sweep(9, exhaustive=True)
    assert feasibility_sweep(12) == feasibility_sweep(12, exhaustive=True)


def test_sweep_respects_lows_selection():
    full = feasibility_sweep(9)
    chosen = feasibility_sweep(9, lows=[2, 5])
    assert chosen == (full[1], full[4])


def test_sweep_empty_census_row():
    row = feasibility_sweep(9, lows=[9])[0]
    assert row.n_sets == 0
    assert row.prop_feasible == 0 and row.prop_sufficient == 0


def test_sweep_rejects_bad_ranges():
    with pytest.raises(BadRange):
        feasibility_sweep(0)
    with pytest.raises(BadRange):
        feasibility_sweep(9, lows=[10])
    with pytest.raises(BadRange):
        feasibility_sweep(9, lows=[0])


def test_screening_soundness_on_small_uniforms():
    """Whenever the screening inequality fires, the window is feasible."""
    fired = 0
    for top in range(2, 11):
        m = uniform_market(1, top).scaled(F(top))
        optimal = set(opt_prices(m))
        if len(optimal) != 1:
            continue
        n = len(m.grid)
        for lo in range(n):
            for hi in range(lo, n):
                w = PriceWindow(lo, hi)
                if optimal & set(w.indices()):
                    continue
                if sufficient_condition(m, w):
                    fired += 1
                    assert is_feasible(m, w)
    assert fired > 0
