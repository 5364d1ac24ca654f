"""Small spaces: the property battery, monotone separation and quasi-pseudo-metrics.

Run with ``python3 demos/spaces_tour.py``.
"""
from preorderlab import NotCompletelyRegular, Relation, make_space, property_battery
from preorderlab.closure import is_generated_by, smallest_closed_preorder
from preorderlab.qpmetric import check_admissible, check_strict, synthesize_qpm
from preorderlab.separation import separate_monotone


def show_battery(label, space):
    print(f"{label}:")
    for rep in property_battery(space):
        mark = "yes" if rep else "no "
        extra = f"  {rep.witness}" if rep.witness else ""
        print(f"  {mark} {rep.name}{extra}")


def main():
    # a three-point chain with the discrete topology
    ch3 = make_space([[0], [1], [2]], [(0, 1), (1, 2)])
    # two points, Sierpinski topology, both points equivalent in the preorder
    p2 = make_space([[0, 1], [1]], [(0, 1), (1, 0)], names=["a", "b"])

    show_battery("chain", ch3)
    show_battery("P2", p2)

    f = separate_monotone(ch3, 0b001, 0b100)
    print("\nseparating {0} from {2} on the chain:", [str(v) for v in f.values])

    p = synthesize_qpm(ch3)
    print("synthesized metric on the chain:", [[str(v) for v in row] for row in p.table])
    print("admissible:", bool(check_admissible(ch3, p)), " strict:", bool(check_strict(ch3, p)))

    try:
        synthesize_qpm(p2)
    except NotCompletelyRegular as exc:
        print("P2 has no admissible metric:", exc)

    # the diagonal of the Sierpinski space generates the full relation
    s2 = make_space([[0, 1], [1]])
    closed = smallest_closed_preorder(s2.top, Relation.identity(2))
    print("\nsmallest closed preorder of the Sierpinski diagonal:", sorted(closed.pairs()))
    print("chain generated by its diagonal:", bool(is_generated_by(ch3, Relation.identity(3))))


if __name__ == "__main__":
    main()
