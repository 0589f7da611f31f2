"""Walk the running four-value example through every construction.

The market puts masses 0.36, 0.20, 0.18, 0.26 on values 1, 2, 3, 6.
A single posted price earns at most 1.56 (charging 3). We then regulate
prices to the window 2..3, which excludes nothing the seller cares about
losing: the window still contains an optimal price of the aggregate, yet
the seller can no longer use 1 or 6 inside any segment.

Run:  python3 demos/reference_walkthrough.py
"""

from fractions import Fraction

from segmarket import (
    PriceWindow,
    demand,
    market,
    opt_prices,
    revenue,
    scheme_surplus,
    tail_value,
    uniform_revenue,
)
from segmarket.passive import (
    consumer_optimal,
    minimal_reduction,
    producer_optimal,
    unregulated_consumer_optimal,
    welfare_minimal,
)


def show_run(title, run):
    print(f"\n{title}")
    for step in run.steps:
        seg = step.segment
        masses = ", ".join(str(x) for x in seg.market.masses)
        price = seg.market.grid[seg.price_index]
        print(f"  support {step.support}  gamma {step.gamma}  "
              f"masses ({masses})  price {price}")
    s = scheme_surplus(run.scheme)
    print(f"  -> CS = {s.cs} ({float(s.cs):.4f})   PS = {s.ps} ({float(s.ps):.4f})")


def main():
    m = market([1, 2, 3, 6], ["0.36", "0.20", "0.18", "0.26"])
    w = PriceWindow(1, 2)  # values 2..3

    print("aggregate market on values", [str(v) for v in m.grid])
    print("masses", [str(x) for x in m.masses])
    for i in range(len(m.grid)):
        print(f"  price {m.grid[i]}: demand {demand(m, i)}, revenue {revenue(m, i)}")
    best = opt_prices(m)
    print("optimal uniform price:", m.grid[best[0]], "earning", uniform_revenue(m))
    print("total value at stake:", tail_value(m, 0))

    show_run("no regulation, consumer-optimal split:", unregulated_consumer_optimal(m))

    print("\nnow regulate to window", f"{m.grid[w.lo]}..{m.grid[w.hi]}")
    show_run("producer-optimal split:", producer_optimal(m, w))
    show_run("consumer-optimal split:", consumer_optimal(m, w))

    red = minimal_reduction(m, w)
    print(f"\nwelfare-minimal pass first shrinks the window: floor value "
          f"{m.grid[red.floor]}, floor mass {red.floor_mass}")
    show_run("welfare-minimal split:", welfare_minimal(m, w))


if __name__ == "__main__":
    main()
