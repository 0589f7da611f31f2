"""JSON and CSV codecs for the on-disk formats.

Numbers travel as exact strings ("p/q" or finite decimals); indices visible
in files are 1-based. Decoding validates shape and exactness but leaves
semantic checks (does a scheme sum to its aggregate?) to ``validate_scheme``
so that defective inputs can be loaded and examined.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

from .core import (
    Market,
    MarketScheme,
    PriceWindow,
    Segment,
    ValueGrid,
    grid,
)
from .passive import ExtractionStep
from .rationals import as_rational, decimal_str, rational_str
from .region import SurplusRegion
from .regulator import SweepRow


def market_to_obj(m: Market) -> dict[str, Any]:
    return {
        "values": [rational_str(v) for v in m.grid.values],
        "masses": [rational_str(v) for v in m.masses],
    }


def market_from_obj(obj: Any) -> Market:
    if not isinstance(obj, dict) or set(obj) != {"values", "masses"}:
        raise ValueError("market object needs exactly 'values' and 'masses'")
    values = [as_rational(v) for v in obj["values"]]
    masses = [as_rational(v) for v in obj["masses"]]
    return Market(ValueGrid(tuple(values)), tuple(masses))


def scheme_to_obj(scheme: MarketScheme) -> dict[str, Any]:
    return {
        "aggregate": market_to_obj(scheme.aggregate),
        "segments": [
            {
                "masses": [rational_str(v) for v in seg.market.masses],
                "price_index": seg.price_index + 1,
            }
            for seg in scheme.segments
        ],
    }


def scheme_from_obj(obj: Any) -> MarketScheme:
    if not isinstance(obj, dict) or "aggregate" not in obj or "segments" not in obj:
        raise ValueError("scheme object needs 'aggregate' and 'segments'")
    aggregate = market_from_obj(obj["aggregate"])
    g = aggregate.grid
    segments = []
    for entry in obj["segments"]:
        masses = tuple(as_rational(v) for v in entry["masses"])
        price_index = int(entry["price_index"]) - 1
        if not 0 <= price_index < len(g):
            raise ValueError("segment price_index outside the grid")
        segments.append(Segment(Market(g, masses), price_index))
    return MarketScheme(aggregate, tuple(segments))


def region_to_obj(region: SurplusRegion) -> dict[str, Any]:
    def point(p: tuple) -> list[str]:
        return [rational_str(p[0]), rational_str(p[1])]

    return {
        "model": region.model,
        "vertices": {
            "min": point(region.v_min),
            "seller": point(region.v_seller),
            "buyer": point(region.v_buyer),
        },
    }


def trace_to_obj(steps: Iterable[ExtractionStep]) -> list[dict[str, Any]]:
    out = []
    for step in steps:
        out.append(
            {
                "support": [i + 1 for i in step.support],
                "gamma": rational_str(step.gamma),
                "segment": [rational_str(v) for v in step.segment.market.masses],
                "price_index": step.segment.price_index + 1,
                "residual": [rational_str(v) for v in step.residual.masses],
            }
        )
    return out


def window_to_str(g: ValueGrid, w: PriceWindow) -> str:
    """Human-facing "lo..hi" rendering in grid values."""
    return f"{rational_str(g[w.lo])}..{rational_str(g[w.hi])}"


SWEEP_HEADER = (
    "L,R,n_sets,n_feasible,n_sufficient,prop_feasible,prop_sufficient,"
    "prop_feasible_dec,prop_sufficient_dec,optprice_ties"
)


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    lines = [SWEEP_HEADER]
    for row in rows:
        pf, ps = row.prop_feasible, row.prop_sufficient
        lines.append(
            ",".join(
                [
                    str(row.lo),
                    str(row.hi),
                    str(row.n_sets),
                    str(row.n_feasible),
                    str(row.n_sufficient),
                    rational_str(pf),
                    rational_str(ps),
                    decimal_str(pf),
                    decimal_str(ps),
                    str(int(row.optprice_ties)),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def loads(text: str) -> Any:
    return json.loads(text)
