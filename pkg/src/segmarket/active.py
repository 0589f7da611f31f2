"""Segmentations for the active intermediary model.

Active means the intermediary also runs the storefront: sellers can only
charge window prices, so an instructed price merely has to beat every rival
price INSIDE the window on its segment. Any window with buyer mass at or
above its floor can then price everybody, and the achievable surplus range
widens relative to the passive model.

The consumer-optimal and welfare-minimal constructions share one device:
collapse the market onto the window (drop everyone below the floor, park all
demand at or above the cap on the cap itself), run the unregulated split on
the collapsed market, then lift each piece back by spreading its cap-value
mass over the true upper tail proportionally. Revenues at window prices are
unchanged by the lift, so instructed prices stay optimal within the window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Market,
    MarketScheme,
    PriceWindow,
    Segment,
    ZERO,
    demand,
    tail_value,
    window_uniform_revenue,
)
from .errors import EmptyAboveFloor
from .passive import unregulated_consumer_optimal


def _check_served(m: Market, w: PriceWindow) -> None:
    if w.hi >= len(m.grid):
        raise ValueError("window exceeds the grid")
    if demand(m, w.lo) == 0:
        raise EmptyAboveFloor("no buyer mass at or above the window floor")


@dataclass(frozen=True)
class ActiveBenchmarks:
    """Closed-form bounds every active segmentation is squeezed between."""

    window_revenue: Fraction  # best single window price on the whole market
    min_consumer_surplus: Fraction  # rents of buyers strictly above the cap
    max_welfare: Fraction  # total value of buyers at or above the floor


def benchmarks(m: Market, w: PriceWindow) -> ActiveBenchmarks:
    _check_served(m, w)
    cap_value = m.grid[w.hi]
    min_cs = sum(
        (m.masses[i] * (m.grid[i] - cap_value) for i in range(w.hi + 1, len(m.grid))),
        ZERO,
    )
    return ActiveBenchmarks(
        window_revenue=window_uniform_revenue(m, w),
        min_consumer_surplus=min_cs,
        max_welfare=tail_value(m, w.lo),
    )


def producer_optimal(m: Market, w: PriceWindow) -> MarketScheme:
    """Producer-optimal active segmentation: isolate each window value.

    The floor segment holds everyone at or below the floor, the cap segment
    everyone at or above the cap, and each interior window value sits alone;
    every segment is priced at its own window value, extracting each served
    buyer's value up to the cap. One segment per window price, zeros kept.
    """
    _check_served(m, w)
    g = m.grid
    n = len(g)
    segments: list[Segment] = []
    if len(w) == 1:
        return MarketScheme(m, (Segment(m, w.lo),))
    for q in w.indices():
        masses = [ZERO] * n
        if q == w.lo:
            for i in range(0, q + 1):
                masses[i] = m.masses[i]
        elif q == w.hi:
            for i in range(q, n):
                masses[i] = m.masses[i]
        else:
            masses[q] = m.masses[q]
        segments.append(Segment(Market(g, tuple(masses)), q))
    return MarketScheme(m, tuple(segments))


def collapse_to_window(m: Market, w: PriceWindow) -> Market:
    """Project the market onto the window: zero below the floor, window
    interior kept as is, all demand at the cap parked on the cap value."""
    _check_served(m, w)
    masses = [ZERO] * len(m.grid)
    for i in range(w.lo, w.hi):
        masses[i] = m.masses[i]
    masses[w.hi] = demand(m, w.hi)
    return Market(m.grid, tuple(masses))


def _lifted_split(m: Market, w: PriceWindow, favor: str) -> MarketScheme:
    collapsed = collapse_to_window(m, w)
    run = unregulated_consumer_optimal(collapsed)
    cap_demand = demand(m, w.hi)
    g = m.grid
    n = len(g)
    segments: list[Segment] = []
    for k, step in enumerate(run.steps):
        piece = step.segment.market
        masses = [ZERO] * n
        for i in range(w.lo, w.hi):
            masses[i] = piece.masses[i]
        parked = piece.masses[w.hi]
        if parked > 0:
            # spread the parked mass over the true tail, pro rata
            for i in range(w.hi, n):
                masses[i] = parked * m.masses[i] / cap_demand
        if k == 0:
            for i in range(0, w.lo):
                masses[i] = m.masses[i]
        support = piece.support()
        price = support[0] if favor == "consumer" else support[-1]
        segments.append(Segment(Market(g, tuple(masses)), price))
    return MarketScheme(m, tuple(segments))


def consumer_optimal(m: Market, w: PriceWindow) -> MarketScheme:
    """Consumer-optimal active segmentation.

    Lifted unregulated split priced at the cheapest supported window value of
    each piece: every buyer at or above the floor trades and producer surplus
    stays at the single-window-price benchmark, so consumer surplus is
    maximal.
    """
    return _lifted_split(m, w, "consumer")


def welfare_minimal(m: Market, w: PriceWindow) -> MarketScheme:
    """Least-total-surplus active segmentation.

    The same lifted pieces priced at the DEAREST supported window value:
    within the window the pieces are equal-revenue, so producer surplus is
    unchanged, but every buyer below a piece's top value is priced out and
    consumer surplus drops to the rents of buyers strictly above the cap.
    """
    return _lifted_split(m, w, "seller")
