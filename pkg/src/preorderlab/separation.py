"""Constructive Urysohn-type separation by continuous isotone functions.

A continuous map from a finite space into ``[0, 1]`` takes finitely many
values, so each sublevel set ``{f <= v}`` is clopen.  The dyadic Urysohn
construction, run with the largest admissible open decreasing set at every
stage, therefore stabilises at a single set: the largest clopen decreasing set
avoiding ``B``.  It is reached by iterating

    W -> largest open decreasing U with D(U) inside W

from ``W = E - B``; each step is one stage of the construction and there are
at most ``n`` of them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import DEC, PreorderedSpace, closed_hull, union_of
from .errors import BadArguments, InvariantBreach, NotConvex, NotNormal
from .props import is_convex, is_normally_preordered, is_T2_preordered

__all__ = [
    "IsotoneFunction",
    "CompleteRegularityReport",
    "separate_monotone",
    "check_isotone",
    "check_continuous",
    "separating_family",
    "check_completely_regular",
    "conditions_from_functions",
]


@dataclass(frozen=True)
class IsotoneFunction:
    """Exact dyadic-valued function on the points of a space."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        for v in vals:
            if not 0 <= v <= 1:
                raise ValueError(f"value {v} outside [0, 1]")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    def __len__(self) -> int:
        return len(self.values)

    def level(self, pred) -> int:
        return sum(1 << x for x, v in enumerate(self.values) if pred(v))


def _as_function(f) -> IsotoneFunction:
    return f if isinstance(f, IsotoneFunction) else IsotoneFunction(tuple(f))


def check_isotone(space: PreorderedSpace, f: IsotoneFunction | Sequence) -> bool:
    vals = _as_function(f).values
    return all(vals[x] <= vals[y] for x in range(space.n) for y in range(space.n) if (space.up[x] >> y) & 1)


def check_continuous(space: PreorderedSpace, f: IsotoneFunction | Sequence) -> bool:
    """Topological continuity: ``{f > t}`` and ``{f < t}`` open for every ``t``.

    Only thresholds equal to attained values need testing; between two
    consecutive values the super- and sublevel sets do not change.
    """
    f = _as_function(f)
    top = space.top
    for t in set(f.values):
        if not (top.is_open(f.level(lambda v: v > t)) and top.is_open(f.level(lambda v: v < t))):
            return False
    return True


def _largest_stage(space: PreorderedSpace, w: int) -> int:
    """Largest open decreasing ``U`` with ``D(U)`` contained in ``w``."""
    dcl = [closed_hull(space, 1 << u, DEC) for u in range(space.n)]
    z = sum(1 << u for u in range(space.n) if dcl[u] & ~w == 0)
    return sum(1 << u for u, low in enumerate(space.lower_minopen) if low & ~z == 0)


def _validate_pair(space: PreorderedSpace, a: int, b: int) -> None:
    space.subset(a)
    space.subset(b)
    top = space.top
    if not (top.is_closed(a) and union_of(space.down, a) == a):
        raise BadArguments("A must be closed and decreasing")
    if not (top.is_closed(b) and union_of(space.up, b) == b):
        raise BadArguments("B must be closed and increasing")
    if a & b:
        raise BadArguments("A and B must be disjoint")


def separate_monotone(space: PreorderedSpace, a: int, b: int, check_normal: bool = True) -> IsotoneFunction:
    """Continuous isotone ``f`` with ``f = 0`` on ``a`` and ``f = 1`` on ``b``."""
    if check_normal:
        rep = is_normally_preordered(space)
        if not rep:
            raise NotNormal(f"space is not normally preordered: {rep.witness}")
    _validate_pair(space, a, b)
    w = space.full & ~b
    while True:
        nxt = _largest_stage(space, w)
        if nxt == w:
            break
        w = nxt
    if a & ~w:
        raise NotNormal("no clopen decreasing set separates A from B")
    return IsotoneFunction(tuple(Fraction(0) if (w >> x) & 1 else Fraction(1) for x in range(space.n)))


def separating_family(space: PreorderedSpace) -> list[IsotoneFunction]:
    """Finite family recovering both topology and order.

    For each point ``x`` it separates ``x`` from the complement of its
    smallest open increasing (and decreasing) neighbourhood, and for each
    ``x`` not below ``y`` it separates ``d(y)`` from ``i(x)``.
    """
    rep = is_convex(space)
    if not rep:
        raise NotConvex(f"space is not convex: {rep.witness}")
    rep = is_normally_preordered(space)
    if not rep:
        raise NotNormal(f"space is not normally preordered: {rep.witness}")
    full = space.full
    pairs = []
    for x in range(space.n):
        pairs.append((full & ~space.upper_minopen[x], space.up[x]))
        pairs.append((space.down[x], full & ~space.lower_minopen[x]))
    for x in range(space.n):
        for y in range(space.n):
            if not (space.up[x] >> y) & 1:
                pairs.append((space.down[y], space.up[x]))
    family: list[IsotoneFunction] = []
    seen = set()
    for a, b in pairs:
        f = separate_monotone(space, a, b, check_normal=False)
        if f.values not in seen and len(set(f.values)) > 1:
            seen.add(f.values)
            family.append(f)
    return family


@dataclass(frozen=True)
class CompleteRegularityReport:
    verdict: bool
    family: tuple[IsotoneFunction, ...] | None = None
    witness: dict | None = field(default=None)

    def __bool__(self) -> bool:
        return self.verdict


def conditions_from_functions(space: PreorderedSpace, functions) -> dict | None:
    """Evaluate both complete-regularity conditions against a function set.

    Returns ``None`` when the functions recover the topology (initial topology
    of ``{f > t}``, ``{f < t}``) and the order, else a witness dict.
    """
    funcs = [tuple(f.values) if isinstance(f, IsotoneFunction) else tuple(f) for f in functions]
    n, full = space.n, space.full
    for x in range(n):
        for y in range(n):
            le = (space.up[x] >> y) & 1
            if bool(le) != all(f[x] <= f[y] for f in funcs):
                return {"condition": "(ii)", "pair": (x, y)}
    for x in range(n):
        # smallest initial-topology neighbourhood: intersecting {f > t}, t < f(x),
        # with {f < t}, t > f(x), leaves the level set {f = f(x)}
        nb = full
        for f in funcs:
            nb &= sum(1 << y for y in range(n) if f[y] == f[x])
        if nb != space.top.minopen[x]:
            return {"condition": "(i)", "point": x, "initial": nb, "M": space.top.minopen[x]}
    return None


def check_completely_regular(space: PreorderedSpace, cross_check: bool | None = None) -> CompleteRegularityReport:
    """Complete regularity of a finite space: convex and normally preordered.

    With ``cross_check`` (default: on for ``n <= 4``) the verdict is compared
    against a direct evaluation over every chain-valued continuous isotone
    function with ``n + 1`` levels.
    """
    conv = is_convex(space)
    norm = is_normally_preordered(space)
    if conv and norm:
        report = CompleteRegularityReport(True, tuple(separating_family(space)))
    elif not norm:
        t2 = is_T2_preordered(space)
        wit = {"condition": "(ii)", "pair": t2.witness["pair"]} if not t2 else {"condition": "(ii)", "normality": norm.witness}
        report = CompleteRegularityReport(False, witness=wit)
    else:
        report = CompleteRegularityReport(False, witness={"condition": "(i)", **conv.witness})
    if cross_check is None:
        cross_check = space.n <= 4
    if cross_check:
        from .closure import isotone_functions_to_chain

        funcs = isotone_functions_to_chain(space, None, space.n + 1)
        direct = conditions_from_functions(space, funcs) is None
        if direct != report.verdict:
            raise InvariantBreach(f"complete regularity shortcut {report.verdict} != enumeration {direct}")
        if report.verdict and conditions_from_functions(space, report.family) is not None:
            raise InvariantBreach("separating family does not certify complete regularity")
    return report
