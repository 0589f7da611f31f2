"""Compare what passive and active intermediaries can achieve.

Both regions are right triangles in the (consumer surplus, producer
surplus) plane. The passive intermediary must leave the seller willing
to follow instructions against every price on the grid; the active one
only competes against prices inside the window, so its triangle is
larger and sits further down-left.

Any point in a region is hit exactly by mixing the three corner schemes.

Run:  python3 demos/surplus_regions.py
"""

from fractions import Fraction

from segmarket import PriceWindow, market, scheme_surplus, validate_scheme
from segmarket.region import active_region, mix_for_point, passive_region


def describe(name, region):
    print(f"{name} region:")
    print(f"  worst corner   CS={region.v_min[0]}  PS={region.v_min[1]}")
    print(f"  seller corner  CS={region.v_seller[0]}  PS={region.v_seller[1]}")
    print(f"  buyer corner   CS={region.v_buyer[0]}  PS={region.v_buyer[1]}")
    print(f"  welfare cap    {region.welfare_cap}")


def main():
    m = market([1, 2, 3, 6], ["0.36", "0.20", "0.18", "0.26"])
    w = PriceWindow(1, 2)

    inner = passive_region(m, w)
    outer = active_region(m, w)
    describe("passive", inner)
    describe("active", outer)

    for corner in (inner.v_min, inner.v_seller, inner.v_buyer):
        assert outer.contains(corner)
    print("every passive corner lies inside the active region")

    target = (Fraction("0.90"), Fraction("1.60"))
    mixed = mix_for_point(m, w, target, "passive")
    print(f"\ntarget point CS={target[0]} PS={target[1]}")
    print("corner weights:", [str(x) for x in mixed.weights])
    s = scheme_surplus(mixed.scheme)
    print(f"mixed scheme lands on CS={s.cs} PS={s.ps}")
    report = validate_scheme(mixed.scheme, w, "passive")
    print("passes validation:", report.ok)


if __name__ == "__main__":
    main()
