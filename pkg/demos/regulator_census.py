"""Census of regulated windows over uniform value grids.

For each low endpoint L of a uniform market on 1..R, enumerate the
contiguous price windows that exclude every optimal price, and count
how many remain feasible for a passive intermediary. The quick
sufficient test is a sound under-approximation: it never fires on an
infeasible window, so its column stays below the feasible column.

Run:  python3 demos/regulator_census.py [--top R]
"""

import argparse

from segmarket.regulator import design_prefix_window, feasibility_sweep, uniform_market
from segmarket.serialize import window_to_str


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--top", type=int, default=9, help="largest value R")
    args = parser.parse_args()

    rows = feasibility_sweep(args.top)
    print(f"uniform markets on 1..{args.top}")
    print(f"{'L':>3} {'windows':>8} {'feasible':>9} {'screened':>9}")
    for r in rows:
        print(f"{r.lo:>3} {r.n_sets:>8} {r.n_feasible:>9} {r.n_sufficient:>9}")

    m = uniform_market(1, args.top)
    w = design_prefix_window(m)
    print(f"\nbest protective prefix window for 1..{args.top}: "
          f"values {window_to_str(m.grid, w)}")


if __name__ == "__main__":
    main()
