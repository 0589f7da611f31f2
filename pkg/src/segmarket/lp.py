"""Exact linear-programming oracle for segmentation problems.

This module is deliberately independent of the constructive algorithms in
``passive.py`` and ``active.py``. It writes segmentation down as a linear
program over per-segment mass variables ``x[p, v]`` (mass of value-``v``
buyers placed in the segment priced ``p``) and solves it with a dense
two-phase simplex over ``Fraction`` using Bland's rule, so every verdict and
optimum is exact. The constructive route and this oracle must agree; the test
suite leans on that redundancy.

The LP for a market ``x*`` and price window ``F``:

* variables ``x[q, i] >= 0`` for every window price index ``q`` and grid
  index ``i``;
* segmentation rows: for each ``i``, ``sum_q x[q, i] = x*_i``;
* instruction rows: pricing segment ``q`` at ``v_q`` must earn at least as
  much as any rival price ``v_j`` on that segment, where rivals range over
  the whole grid in the passive model but only over the window in the active
  model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping, Sequence

from .core import Market, Model, PriceWindow, MarketScheme, Segment, ZERO
from .errors import InfeasibleWindow

Relation = Literal["==", "<=", ">="]
Status = Literal["optimal", "infeasible"]


@dataclass(frozen=True)
class LPRow:
    name: str
    coeffs: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction


@dataclass(frozen=True)
class LPResult:
    status: Status
    value: Fraction | None
    assignment: tuple[Fraction, ...] | None


def solve(
    num_vars: int,
    rows: Sequence[LPRow],
    objective: Sequence[Fraction],
    sense: Literal["min", "max"] = "min",
) -> LPResult:
    """Solve min/max of ``objective . x`` subject to *rows* and ``x >= 0``.

    Two-phase dense simplex with Bland's rule, so it terminates on every
    input. Unboundedness raises RuntimeError: the segmentation polytopes this
    module builds are bounded, so hitting it means a malformed program.
    """
    if len(objective) != num_vars:
        raise ValueError("objective length must equal the variable count")
    c = [Fraction(v) for v in objective]
    if sense == "max":
        c = [-v for v in c]

    # Normalize to equalities with nonnegative right-hand sides. Slack
    # columns come after the structural variables, artificials after slacks.
    # A row whose slack survives normalization with coefficient +1 starts
    # basic on its own slack; only the other rows need an artificial.
    n_slack = sum(1 for r in rows if r.relation != "==")
    core_width = num_vars + n_slack
    cores: list[list[Fraction]] = []
    rhss: list[Fraction] = []
    basis_plan: list[int | None] = []
    slack_pos = num_vars
    for row in rows:
        if len(row.coeffs) != num_vars:
            raise ValueError(f"row {row.name} has the wrong width")
        core = [Fraction(v) for v in row.coeffs] + [ZERO] * n_slack
        slack = None
        if row.relation == "<=":
            core[slack_pos] = Fraction(1)
            slack = slack_pos
            slack_pos += 1
        elif row.relation == ">=":
            core[slack_pos] = Fraction(-1)
            slack = slack_pos
            slack_pos += 1
        rhs = row.rhs
        if rhs < 0:
            core = [-v for v in core]
            rhs = -rhs
        cores.append(core)
        rhss.append(rhs)
        basis_plan.append(slack if slack is not None and core[slack] > 0 else None)
    n_art = sum(1 for b in basis_plan if b is None)
    width = core_width + n_art + 1  # trailing column is the rhs
    art_start = core_width
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    next_art = art_start
    for core, rhs, planned in zip(cores, rhss, basis_plan):
        line = core + [ZERO] * n_art + [rhs]
        if planned is None:
            line[next_art] = Fraction(1)
            basis.append(next_art)
            next_art += 1
        else:
            basis.append(planned)
        tableau.append(line)

    if n_art:
        # Phase 1: minimize the sum of artificials.
        cost = [ZERO] * width
        for j in range(art_start, art_start + n_art):
            cost[j] = Fraction(1)
        for i, b in enumerate(basis):
            if cost[b] != 0:
                f = cost[b]
                cost = [cv - f * tv for cv, tv in zip(cost, tableau[i])]
        _iterate(tableau, basis, cost, width, allowed=width - 1)
        if -cost[-1] > 0:
            return LPResult("infeasible", None, None)

        # Drive leftover artificials out of the basis; drop redundant rows.
        keep: list[int] = []
        for i in range(len(tableau)):
            if basis[i] >= art_start:
                for j in range(art_start):
                    if tableau[i][j] != 0:
                        _pivot(tableau, basis, i, j)
                        break
                else:
                    continue  # all-zero row: redundant constraint
            keep.append(i)
        tableau = [tableau[i] for i in keep]
        basis = [basis[i] for i in keep]

    # Phase 2 over the original objective; artificial columns stay blocked.
    cost = c + [ZERO] * (width - num_vars)
    for i, b in enumerate(basis):
        if cost[b] != 0:
            f = cost[b]
            cost = [cv - f * tv for cv, tv in zip(cost, tableau[i])]
    _iterate(tableau, basis, cost, width, allowed=art_start)

    value = -cost[-1]
    if sense == "max":
        value = -value
    x = [ZERO] * num_vars
    for i, b in enumerate(basis):
        if b < num_vars:
            x[b] = tableau[i][-1]
    return LPResult("optimal", value, tuple(x))


def _iterate(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    width: int,
    allowed: int,
) -> None:
    """Pivot until no reduced cost among columns < *allowed* is negative."""
    while True:
        col = -1
        for j in range(allowed):
            if cost[j] < 0:
                col = j
                break
        if col < 0:
            return
        row = -1
        best: Fraction | None = None
        for i, line in enumerate(tableau):
            if line[col] > 0:
                ratio = line[-1] / line[col]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[row]
                ):
                    best = ratio
                    row = i
        if row < 0:
            raise RuntimeError("LP is unbounded; segmentation LPs never are")
        _pivot(tableau, basis, row, col)
        f = cost[col]
        if f != 0:
            for j in range(width):
                cost[j] -= f * tableau[row][j]


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    for i, line in enumerate(tableau):
        if i != row and line[col] != 0:
            f = line[col]
            tableau[i] = [a - f * b for a, b in zip(line, tableau[row])]
    basis[row] = col


@dataclass(frozen=True)
class SegmentationLP:
    """A segmentation LP instance with a variable index for readers/tests."""

    market: Market
    window: PriceWindow
    model: Model
    price_indices: tuple[int, ...]
    columns: tuple[tuple[int, int], ...]  # column -> (price index q, grid index i)
    rows: tuple[LPRow, ...]

    def column_of(self, q: int, i: int) -> int:
        return self.columns.index((q, i))


def build_lp(
    m: Market,
    w: PriceWindow,
    model: Model,
    price_indices: Sequence[int] | None = None,
    upper_bounds: Mapping[tuple[int, int], Fraction] | None = None,
) -> SegmentationLP:
    """Assemble the segmentation LP.

    *price_indices* restricts which window prices get a segment (defaults to
    all of them); instruction rows still compare against the full rival set
    of the model. *upper_bounds* adds rows ``x[q, i] <= bound``, used by
    tests probing the boundary of the feasible region.
    """
    if w.hi >= len(m.grid):
        raise ValueError("window exceeds the grid")
    prices = tuple(price_indices) if price_indices is not None else tuple(w.indices())
    if any(q not in w for q in prices):
        raise ValueError("segment prices must lie inside the window")
    n = len(m.grid)
    columns = tuple((q, i) for q in prices for i in range(n))
    col = {qi: k for k, qi in enumerate(columns)}
    g = m.grid
    rows: list[LPRow] = []
    for i in range(n):
        coeffs = [ZERO] * len(columns)
        for q in prices:
            coeffs[col[(q, i)]] = Fraction(1)
        rows.append(LPRow(f"mass[v={g[i]}]", tuple(coeffs), "==", m.masses[i]))
    rivals = range(n) if model == "passive" else w.indices()
    for q in prices:
        for j in rivals:
            if j == q:
                continue
            coeffs = [ZERO] * len(columns)
            for i in range(q, n):
                coeffs[col[(q, i)]] += g[q]
            for i in range(j, n):
                coeffs[col[(q, i)]] -= g[j]
            rows.append(LPRow(f"opt[p={g[q]},rival={g[j]}]", tuple(coeffs), ">=", ZERO))
    if upper_bounds:
        for (q, i), bound in sorted(upper_bounds.items()):
            coeffs = [ZERO] * len(columns)
            coeffs[col[(q, i)]] = Fraction(1)
            rows.append(LPRow(f"cap[p={g[q]},v={g[i]}]", tuple(coeffs), "<=", bound))
    return SegmentationLP(m, w, model, prices, columns, tuple(rows))


def dump_lp(lp: SegmentationLP, objective: Sequence[Fraction] | None = None) -> str:
    """Plain-text equational rendering for debugging and auditing."""
    g = lp.market.grid
    names = [f"x[p={g[q]},v={g[i]}]" for q, i in lp.columns]

    def term_list(coeffs: Sequence[Fraction]) -> str:
        parts = []
        for c, name in zip(coeffs, names):
            if c == 0:
                continue
            parts.append(f"{'+ ' if c > 0 and parts else ''}{c}*{name}")
        return " ".join(parts) if parts else "0"

    lines = []
    if objective is not None:
        lines.append(f"objective: {term_list(objective)}")
    lines.append(f"model: {lp.model}")
    lines.append("subject to:")
    for row in lp.rows:
        lines.append(f"  {row.name}: {term_list(row.coeffs)} {row.relation} {row.rhs}")
    lines.append("  all variables >= 0")
    return "\n".join(lines)


def _surplus_objective(lp: SegmentationLP, kind: Literal["cs", "ps"]) -> list[Fraction]:
    g = lp.market.grid
    out = []
    for q, i in lp.columns:
        if i < q:
            out.append(ZERO)
        elif kind == "cs":
            out.append(g[i] - g[q])
        else:
            out.append(g[q])
    return out


def solve_segmentation(
    lp: SegmentationLP,
    objective: Sequence[Fraction],
    sense: Literal["min", "max"],
) -> LPResult:
    return solve(len(lp.columns), lp.rows, objective, sense)


def solution_scheme(lp: SegmentationLP, assignment: Sequence[Fraction]) -> MarketScheme:
    """Reassemble an LP solution into a scheme (one segment per LP price)."""
    g = lp.market.grid
    segments = []
    n = len(g)
    for q in lp.price_indices:
        masses = [ZERO] * n
        for i in range(n):
            masses[i] = assignment[lp.column_of(q, i)]
        segments.append(Segment(Market(g, tuple(masses)), q))
    return MarketScheme(lp.market, tuple(segments))


def oracle_feasible(m: Market, w: PriceWindow, model: Model) -> bool:
    """Whether any model-consistent segmentation prices everything in the window."""
    lp = build_lp(m, w, model)
    result = solve_segmentation(lp, [ZERO] * len(lp.columns), "min")
    return result.status == "optimal"


def _solve_or_raise(
    m: Market, w: PriceWindow, model: Model, kind: Literal["cs", "ps"],
    sense: Literal["min", "max"],
) -> Fraction:
    lp = build_lp(m, w, model)
    result = solve_segmentation(lp, _surplus_objective(lp, kind), sense)
    if result.status != "optimal":
        raise InfeasibleWindow("no valid segmentation prices everything in the window")
    assert result.value is not None
    return result.value


def oracle_min_cs(m: Market, w: PriceWindow, model: Model) -> Fraction:
    return _solve_or_raise(m, w, model, "cs", "min")


def oracle_max_ps(m: Market, w: PriceWindow, model: Model) -> Fraction:
    return _solve_or_raise(m, w, model, "ps", "max")


def oracle_min_ps(m: Market, w: PriceWindow, model: Model) -> Fraction:
    return _solve_or_raise(m, w, model, "ps", "min")


def oracle_min_floor_mass(
    m: Market,
    w: PriceWindow,
    floor: int,
    upper_bounds: Mapping[tuple[int, int], Fraction] | None = None,
) -> Fraction:
    """Least mass of value-``floor`` buyers that any passive segmentation
    restricted to prices ``{floor..hi}`` must place in the segment priced at
    the floor value.

    *upper_bounds* lets tests re-solve with an extra cap to certify minimality
    (capping below the optimum must be infeasible).
    """
    if floor not in w:
        raise ValueError("floor must lie inside the window")
    lp = build_lp(
        m,
        w,
        "passive",
        price_indices=range(floor, w.hi + 1),
        upper_bounds=upper_bounds,
    )
    objective = [ZERO] * len(lp.columns)
    objective[lp.column_of(floor, floor)] = Fraction(1)
    result = solve_segmentation(lp, objective, "min")
    if result.status != "optimal":
        raise InfeasibleWindow(
            "no passive segmentation prices everything in the reduced window"
        )
    assert result.value is not None
    return result.value
