"""Tools for a regulator choosing which prices to allow.

A regulator wants a window that still lets an intermediary segment the whole
market passively (so nobody is shut out) while pulling prices down. This
module offers a cheap sufficient screening test for feasibility, a designer
that finds the shortest feasible prefix window (cheapest prices only), and a
sweep that measures how common feasible windows are across uniform markets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    Market,
    PriceWindow,
    ZERO,
    grid,
    opt_prices,
    uniform_revenue,
)
from .errors import BadRange, HypothesisViolated
from .passive import is_feasible


def sufficient_condition(m: Market, w: PriceWindow) -> bool:
    """Cheap screening test implying the window is feasible.

    Compares the value actually carried by window buyers (plus floor-price
    revenue on everyone above the window) against the unregulated
    single-price revenue. Only proved when the unregulated optimal price is
    unique and lies outside the window; other callers get
    :class:`HypothesisViolated` rather than an unreliable verdict. The test
    is one-sided: failing it decides nothing.
    """
    optimal = opt_prices(m)
    if len(optimal) != 1:
        raise HypothesisViolated("screening test needs a unique unregulated price")
    if optimal[0] in w:
        raise HypothesisViolated("screening test needs the optimal price outside the window")
    g = m.grid
    lhs = sum((m.masses[j] * g[j] for j in w.indices()), ZERO)
    lhs += g[w.lo] * sum(m.masses[w.hi + 1 :], ZERO)
    return lhs >= uniform_revenue(m)


def design_prefix_window(m: Market) -> PriceWindow:
    """Shortest feasible window that starts at the cheapest grid value.

    Scans the prefix length upward; feasibility is monotone in the window,
    and the full grid is always feasible, so the scan terminates. The result
    is the most consumer-protective interval window anchored at the bottom.
    """
    for hi in range(len(m.grid)):
        w = PriceWindow(0, hi)
        if is_feasible(m, w):
            return w
    raise AssertionError("the full grid window is always feasible")


def uniform_market(lo: int, hi: int) -> Market:
    """Unit-mass market spread evenly over the integer values lo..hi."""
    if lo < 1 or lo > hi:
        raise BadRange("need 1 <= lo <= hi")
    n = hi - lo + 1
    share = Fraction(1, n)
    return Market(grid(range(lo, hi + 1)), (share,) * n)


@dataclass(frozen=True)
class SweepRow:
    """Feasibility census for one uniform market: all contiguous windows
    disjoint from the unregulated optimal prices."""

    lo: int
    hi: int
    n_sets: int
    n_feasible: int
    n_sufficient: int
    optprice_ties: bool

    @property
    def prop_feasible(self) -> Fraction:
        return Fraction(self.n_feasible, self.n_sets) if self.n_sets else ZERO

    @property
    def prop_sufficient(self) -> Fraction:
        return Fraction(self.n_sufficient, self.n_sets) if self.n_sets else ZERO


def _census(m: Market, exhaustive: bool) -> tuple[int, int, int, bool]:
    """Count windows disjoint from the optimal prices, and how many are
    feasible / pass the screening test."""
    n = len(m.grid)
    optimal = set(opt_prices(m))
    ties = len(optimal) > 1
    # maximal index runs that avoid every optimal price
    runs: list[tuple[int, int]] = []
    start = None
    for i in range(n + 1):
        if i < n and i not in optimal:
            if start is None:
                start = i
        else:
            if start is not None:
                runs.append((start, i - 1))
                start = None
    n_sets = n_feasible = n_sufficient = 0
    g = m.grid
    # prefix sums for the screening inequality
    value_prefix = [ZERO]
    mass_suffix = [ZERO] * (n + 1)
    for i in range(n):
        value_prefix.append(value_prefix[-1] + m.masses[i] * g[i])
    for i in range(n - 1, -1, -1):
        mass_suffix[i] = mass_suffix[i + 1] + m.masses[i]
    benchmark = uniform_revenue(m)
    for a, b in runs:
        size = b - a + 1
        n_sets += size * (size + 1) // 2
        if not ties:
            for lo in range(a, b + 1):
                for hi in range(lo, b + 1):
                    lhs = value_prefix[hi + 1] - value_prefix[lo]
                    lhs += g[lo] * mass_suffix[hi + 1]
                    if lhs >= benchmark:
                        n_sufficient += 1
        if exhaustive:
            for lo in range(a, b + 1):
                for hi in range(lo, b + 1):
                    if is_feasible(m, PriceWindow(lo, hi)):
                        n_feasible += 1
        else:
            # feasibility is superset-monotone, so for each right endpoint
            # the feasible left endpoints form a prefix of the run and the
            # boundary moves one way; two pointers cover the run in a linear
            # number of feasibility checks
            best_lo = a - 1
            for hi in range(a, b + 1):
                while best_lo + 1 <= hi and is_feasible(m, PriceWindow(best_lo + 1, hi)):
                    best_lo += 1
                n_feasible += best_lo - a + 1
    return n_sets, n_feasible, n_sufficient, ties


def feasibility_sweep(
    top: int,
    lows: Iterable[int] | None = None,
    exhaustive: bool = False,
) -> tuple[SweepRow, ...]:
    """Census over uniform markets on {lo..top} for each lo.

    Masses are rescaled to integers before counting; feasibility and the
    screening test are both invariant under scaling, and small integers keep
    the exact arithmetic quick.
    """
    if top < 1:
        raise BadRange("need top >= 1")
    low_list: Sequence[int] = tuple(lows) if lows is not None else tuple(range(1, top + 1))
    rows = []
    for lo in low_list:
        if lo < 1 or lo > top:
            raise BadRange("each low must satisfy 1 <= low <= top")
        scaled = uniform_market(lo, top).scaled(Fraction(top - lo + 1))
        n_sets, n_feasible, n_sufficient, ties = _census(scaled, exhaustive)
        rows.append(SweepRow(lo, top, n_sets, n_feasible, n_sufficient, ties))
    return tuple(rows)
