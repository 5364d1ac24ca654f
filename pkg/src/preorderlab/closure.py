"""Smallest closed preorders and compactly generated orders on finite spaces."""
from __future__ import annotations

from .core import (
    FiniteTopology,
    Preorder,
    PreorderedSpace,
    Relation,
    bits,
    product_closure,
)
from .errors import InstanceTooLarge, NotASubrelation, SizeMismatch
from .props import PropertyReport

__all__ = [
    "smallest_closed_preorder",
    "is_generated_by",
    "clopen_down_sets",
    "isotone_functions_to_chain",
    "isotone_sets_coincide",
    "check_intermediate_points",
]

DEFAULT_CAP = 1 << 20


def _reflexive(rel: Relation) -> Relation:
    return Relation(rel.n, tuple(r | (1 << x) for x, r in enumerate(rel.rows)))


def smallest_closed_preorder(top: FiniteTopology, rel: Relation, closure_first: bool = False) -> Preorder:
    """Least preorder containing ``rel`` whose graph is closed in ``E x E``.

    Alternates reflexive-transitive closure and product closure until both
    leave the relation unchanged.  ``closure_first`` starts with the product
    closure instead; the fixpoint is the same.
    """
    if isinstance(top, PreorderedSpace):
        top = top.top
    if top.n != rel.n:
        raise SizeMismatch(f"topology has {top.n} points, relation {rel.n}")
    cur = _reflexive(rel)
    if closure_first:
        cur = product_closure(top, cur)
    while True:
        cur = cur.reflexive_transitive_closure()
        nxt = product_closure(top, cur)
        if nxt == cur:
            return cur
        cur = nxt


def is_generated_by(space: PreorderedSpace, rel: Relation) -> bool:
    """Whether ``rel`` generates the order of ``space`` as its smallest closed preorder.

    The compactness requirement on images of compact sets holds trivially in
    a finite space, so only the generation condition is tested.
    """
    if not rel.issubset(space.order):
        raise NotASubrelation("relation is not contained in the order")
    return smallest_closed_preorder(space.top, rel) == space.order


def clopen_down_sets(space: PreorderedSpace, rel: Relation | None = None, cap: int = 1 << 16) -> list[int]:
    """Clopen subsets ``S`` with ``(x, y) in rel, y in S => x in S``."""
    rel = space.order if rel is None else rel
    if rel.n != space.n:
        raise SizeMismatch("relation and space differ in size")
    if 1 << space.n > cap:
        raise InstanceTooLarge(f"2^{space.n} candidate subsets exceed cap {cap}")
    top = space.top
    # candidates: clopen sets only
    out = []
    for s in range(1 << space.n):
        if top.closure(s) == s and top.open_hull(s) == s and rel.preimage(s) & ~s == 0:
            out.append(s)
    return out


def isotone_functions_to_chain(
    space: PreorderedSpace, rel: Relation | None = None, levels: int = 2, cap: int = DEFAULT_CAP
) -> set[tuple[int, ...]]:
    """All continuous isotone maps ``E -> {0, ..., levels-1}``.

    The chain carries the subspace topology of the reals, so a map is
    continuous iff every sublevel set ``{f <= k}`` is clopen; it is isotone
    for ``rel`` iff those sets are ``rel``-decreasing.  Maps are therefore in
    bijection with multichains ``C_0 <= ... <= C_{levels-2}`` of clopen
    decreasing sets, which is how they are enumerated.
    """
    if levels < 1:
        raise ValueError("levels must be positive")
    n = space.n
    if levels == 1:
        return {(0,) * n}
    downs = sorted(clopen_down_sets(space, rel), key=lambda s: (bin(s).count("1"), s))
    out: set[tuple[int, ...]] = set()
    chain = [0] * (levels - 1)

    def extend(depth: int, lower: int) -> None:
        if depth == levels - 1:
            vals = [levels - 1] * n
            for k in range(levels - 2, -1, -1):
                for x in bits(chain[k]):
                    vals[x] = k
            out.add(tuple(vals))
            if len(out) > cap:
                raise InstanceTooLarge(f"more than {cap} isotone functions")
            return
        for s in downs:
            if s & lower == lower:
                chain[depth] = s
                extend(depth + 1, s)

    extend(0, 0)
    return out


def isotone_sets_coincide(space: PreorderedSpace, rel: Relation, levels: int | None = None) -> bool:
    levels = space.n + 1 if levels is None else levels
    return isotone_functions_to_chain(space, rel, levels) == isotone_functions_to_chain(space, space.order, levels)


def check_intermediate_points(space: PreorderedSpace, rel: Relation) -> PropertyReport:
    """Intermediate-point property of compactly generated orders.

    For every ``K``, ``x <= z`` with ``x`` in the interior of ``K`` and ``z``
    outside the closure of ``rel(K)`` must pass through some ``y`` in
    ``cl(rel(K)) - int(K)``.  Only meaningful when ``rel`` generates the order.
    """
    name = "intermediate-points"
    top, up, down = space.top, space.up, space.down
    rel = _reflexive(rel)
    for k in range(1 << space.n):
        o = top.interior(k)
        c = top.closure(rel.image(k))
        between = c & ~o
        for x in bits(o):
            for z in bits(up[x] & ~c):
                if not up[x] & down[z] & between:
                    return PropertyReport(name, False, {"K": k, "x": x, "z": z})
    return PropertyReport(name, True)
