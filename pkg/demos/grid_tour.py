"""Causal structure on cone grids: ladder classification, Seifert proxy, hulls.

Run with ``python3 demos/grid_tour.py``.
"""
import time

from preorderlab.grid import causal_hull, causality_ladder, cylinder, diamond, j_plus, minkowski, seifert_approx


def main():
    grids = {
        "MINK(16)": minkowski(16),
        "MINK(16) minus (8,8)": minkowski(16).without((8, 8)),
        "CYL(8)": cylinder(8),
        "MINK(12) slope 1/2": minkowski(12, slope="1/2"),
    }
    for name, g in grids.items():
        t0 = time.perf_counter()
        rep = causality_ladder(g)
        dt = time.perf_counter() - t0
        print(f"{name:24s} {rep.rung:22s} checks={rep.checks} ({dt:.2f}s)")

    g = minkowski(16).without((8, 8))
    s, stable = seifert_approx(g)
    extra = s.difference_pairs(j_plus(g))
    print(f"\nSeifert proxy adds {len(extra)} pairs around the hole (stabilized={stable}), e.g. {extra[:3]}")

    m = minkowski(16)
    window = (4, 4, 4, 8)
    print("hull of a horizontal segment equals its diamond:", bool((causal_hull(m, window) == diamond(m, window)).all()))


if __name__ == "__main__":
    main()
