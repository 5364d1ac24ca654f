"""Decision procedures for separation and convexity properties.

Every checker returns a :class:`PropertyReport`.  Quantifiers over open
monotone sets are reduced to the smallest open increasing/decreasing
neighbourhoods of single points, which exist because open monotone sets of a
finite space are closed under arbitrary unions and intersections.  Failing
reports carry the lexicographically first violation as witness.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .core import (
    DEC,
    INC,
    PreorderedSpace,
    closed_hull,
    convex_hull,
    product_closure,
    union_of,
)

__all__ = [
    "PropertyReport",
    "is_T1_preordered",
    "is_T2_preordered",
    "is_normally_preordered",
    "is_regularly_preordered",
    "is_normal_topology",
    "convexity_at",
    "is_convex",
    "is_weakly_convex",
    "is_locally_convex",
    "is_I_space",
    "is_C_space",
    "is_k_preserving",
    "is_antisymmetric",
    "class_indistinguishable",
    "property_battery",
]

KINDS = ("convex", "weak", "local")


@dataclass(frozen=True)
class PropertyReport:
    name: str
    verdict: bool
    witness: dict[str, Any] | None = None

    def __post_init__(self):
        if self.verdict == (self.witness is not None):
            raise ValueError("witness must be present exactly when the verdict is false")

    def __bool__(self) -> bool:
        return self.verdict


def _ok(name: str) -> PropertyReport:
    return PropertyReport(name, True)


def _fail(name: str, **witness) -> PropertyReport:
    return PropertyReport(name, False, witness)


def is_T1_preordered(space: PreorderedSpace) -> PropertyReport:
    top = space.top
    for x in range(space.n):
        for which, h in (("i", space.up[x]), ("d", space.down[x])):
            if top.closure(h) != h:
                return _fail("T1-preordered", point=x, hull=which, set=h, closure=top.closure(h))
    return _ok("T1-preordered")


def is_T2_preordered(space: PreorderedSpace) -> PropertyReport:
    g = space.order
    cl = product_closure(space, g)
    for x in range(space.n):
        extra = cl.rows[x] & ~g.rows[x]
        if extra:
            y = (extra & -extra).bit_length() - 1
            return _fail("T2-preordered", pair=(x, y))
    return _ok("T2-preordered")


def _separation_failure(space: PreorderedSpace, pairs):
    """First (a, b) with D(a), I(b) disjoint but L(a), U(b) meeting.

    The smallest open decreasing superset of a closed decreasing ``A`` is the
    union of ``L(a)`` over ``a`` in ``A`` (dually for ``B``), so a separable
    pair is unseparable iff some pair of points inside it already is.
    """
    low, upp = space.lower_minopen, space.upper_minopen
    D = [closed_hull(space, 1 << a, DEC) for a in range(space.n)]
    I = [closed_hull(space, 1 << b, INC) for b in range(space.n)]
    for a, b, A, B in pairs(D, I):
        if A & B == 0 and low[a] & upp[b]:
            return a, b, A, B
    return None


def _all_pairs(space):
    def gen(D, I):
        for a in range(space.n):
            for b in range(space.n):
                yield a, b, D[a], I[b]

    return gen


def is_normally_preordered(space: PreorderedSpace) -> PropertyReport:
    name = "normally-preordered"
    t1 = is_T1_preordered(space)
    if not t1:
        return _fail(name, reason="not T1-preordered", t1=t1.witness)
    hit = _separation_failure(space, _all_pairs(space))
    if hit:
        a, b, A, B = hit
        return _fail(name, A=A, B=B, points=(a, b),
                     U=space.lower_minopen[a], V=space.upper_minopen[b])
    return _ok(name)


def is_regularly_preordered(space: PreorderedSpace) -> PropertyReport:
    """Point-versus-closed-set variant: ``B = i(x)`` or ``A = d(x)``."""
    name = "regularly-preordered"
    t1 = is_T1_preordered(space)
    if not t1:
        return _fail(name, reason="not T1-preordered", t1=t1.witness)
    n = space.n

    def gen(D, I):
        for x in range(n):
            for a in range(n):
                yield a, x, D[a], space.up[x]
            for b in range(n):
                yield x, b, space.down[x], I[b]

    hit = _separation_failure(space, gen)
    if hit:
        a, b, A, B = hit
        return _fail(name, A=A, B=B, points=(a, b))
    return _ok(name)


def is_normal_topology(space: PreorderedSpace) -> PropertyReport:
    """Plain topological normality of ``(E, T)``, ignoring the order."""
    top = space.top
    for a in range(space.n):
        for b in range(space.n):
            if top.point_closure(a) & top.point_closure(b) == 0 and top.minopen[a] & top.minopen[b]:
                return _fail("normal-topology", points=(a, b))
    return _ok("normal-topology")


def convexity_at(space: PreorderedSpace, x: int, kind: str = "convex") -> PropertyReport:
    """Convexity of the given kind at ``x``, tested against ``O = M(x)``.

    The defining condition only gets easier as ``O`` grows, and every open
    neighbourhood of ``x`` contains ``M(x)``.  For the weak and local kinds
    the candidate neighbourhood is squeezed to ``M(x)`` itself.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    space.point(x)
    name = f"{kind}-at-point"
    mx = space.top.minopen[x]
    if kind == "convex":
        u, v = space.lower_minopen[x], space.upper_minopen[x]
        if u & v & ~mx:
            return _fail(name, point=x, O=mx, U=u, V=v, escape=u & v & ~mx)
        return _ok(name)
    hullx = convex_hull(space, mx)
    if hullx != mx:
        return _fail(name, point=x, O=mx, hull=hullx)
    return _ok(name)


def _global(space: PreorderedSpace, kind: str, name: str) -> PropertyReport:
    for x in range(space.n):
        r = convexity_at(space, x, kind)
        if not r:
            return _fail(name, **r.witness)
    return _ok(name)


def is_convex(space: PreorderedSpace) -> PropertyReport:
    return _global(space, "convex", "convex")


def is_weakly_convex(space: PreorderedSpace) -> PropertyReport:
    return _global(space, "weak", "weakly-convex")


def is_locally_convex(space: PreorderedSpace) -> PropertyReport:
    return _global(space, "local", "locally-convex")


def is_I_space(space: PreorderedSpace) -> PropertyReport:
    # hulls distribute over unions and opens are unions of minimal opens
    top = space.top
    for x, m in enumerate(top.minopen):
        for which, table in (("i", space.up), ("d", space.down)):
            h = union_of(table, m)
            if not top.is_open(h):
                return _fail("I-space", point=x, hull=which, set=h)
    return _ok("I-space")


def is_C_space(space: PreorderedSpace) -> PropertyReport:
    top = space.top
    for x in range(space.n):
        c = top.point_closure(x)
        for which, table in (("i", space.up), ("d", space.down)):
            h = union_of(table, c)
            if not top.is_closed(h):
                return _fail("C-space", point=x, hull=which, set=h)
    return _ok("C-space")


def is_k_preserving(space: PreorderedSpace) -> PropertyReport:
    # every subset of a finite space is compact
    return _ok("k-preserving")


def is_antisymmetric(space: PreorderedSpace) -> PropertyReport:
    for x in range(space.n):
        cls = space.up[x] & space.down[x] & ~(1 << x)
        if cls:
            return _fail("antisymmetric", pair=(x, (cls & -cls).bit_length() - 1))
    return _ok("antisymmetric")


def class_indistinguishable(space: PreorderedSpace, x: int) -> bool:
    """True iff all points of ``[x]`` share the same minimal open set."""
    space.point(x)
    cls = space.up[x] & space.down[x]
    m = space.top.minopen
    return all(m[y] == m[x] for y in range(space.n) if (cls >> y) & 1)


def property_battery(space: PreorderedSpace) -> list[PropertyReport]:
    """Every space-level property, in a fixed order."""
    return [
        is_T1_preordered(space),
        is_T2_preordered(space),
        is_normally_preordered(space),
        is_regularly_preordered(space),
        is_convex(space),
        is_weakly_convex(space),
        is_locally_convex(space),
        is_I_space(space),
        is_C_space(space),
        is_k_preserving(space),
        is_antisymmetric(space),
    ]
