"""Counterexample search, the theorem suite and the hull blow-up diagnostic.

Run with ``python3 demos/search_tour.py``.
"""
import json

from preorderlab.io import space_to_dict
from preorderlab.lab import PREDICATES, SearchConfig, counterexample_search, example_1_1, random_space, theorem_suite


def main():
    for pred in PREDICATES:
        res = counterexample_search(SearchConfig(pred, 1, 3))
        if res.found:
            print(f"{pred}: witness at n={res.n} after {res.scanned} spaces")
            print("  " + json.dumps(space_to_dict(res.witness)))
        else:
            print(f"{pred}: none among {res.scanned} spaces")

    space = random_space(42, 5)
    print("\ntheorem suite on a seeded random space:")
    for line in theorem_suite(space).lines():
        print("  " + line)

    for eps in ("0.1", "0.01", "0.001"):
        d = example_1_1(10_000, eps)
        print(f"hull of the {eps}-ball around 1: [{d.hull_min}, {d.hull_max}], diameter {d.diameter}")


if __name__ == "__main__":
    main()
