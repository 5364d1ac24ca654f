"""Quasi-pseudo-metrics on finite preordered spaces."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import FiniteTopology, PreorderedSpace
from .errors import NotAQPM, NotCompletelyRegular, NotDiscrete, SizeMismatch
from .props import PropertyReport, is_convex, is_T1_preordered
from .separation import check_completely_regular

__all__ = [
    "QuasiPseudoMetric",
    "topology_from_metric",
    "monotone_topology",
    "synthesize_qpm",
    "qpm_from_order_discrete",
    "check_admissible",
    "check_strict",
    "is_albert",
]


@dataclass(frozen=True)
class QuasiPseudoMetric:
    table: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        table = tuple(tuple(Fraction(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        if any(len(row) != len(table) for row in table):
            raise NotAQPM("distance table must be square")

    @property
    def n(self) -> int:
        return len(self.table)

    def __call__(self, x: int, y: int) -> Fraction:
        return self.table[x][y]

    def conjugate(self) -> QuasiPseudoMetric:
        n = self.n
        return QuasiPseudoMetric(tuple(tuple(self.table[y][x] for y in range(n)) for x in range(n)))

    def symmetrized(self, how: str = "max") -> QuasiPseudoMetric:
        """``p v p^-1`` (``how="max"``) or ``p + p^-1`` (``how="sum"``)."""
        op = max if how == "max" else (lambda a, b: a + b)
        n = self.n
        return QuasiPseudoMetric(tuple(tuple(op(self.table[x][y], self.table[y][x]) for y in range(n)) for x in range(n)))

    def violation(self) -> dict | None:
        """First failed axiom, or ``None`` for a valid quasi-pseudo-metric."""
        t, n = self.table, self.n
        for x in range(n):
            if t[x][x] != 0:
                return {"axiom": "zero self-distance", "point": x}
            for y in range(n):
                if t[x][y] < 0:
                    return {"axiom": "nonnegative", "pair": (x, y)}
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if t[x][z] > t[x][y] + t[y][z]:
                        return {"axiom": "triangle", "triple": (x, y, z)}
        return None

    def validate(self) -> QuasiPseudoMetric:
        bad = self.violation()
        if bad:
            raise NotAQPM(f"not a quasi-pseudo-metric: {bad}")
        return self

    def zero_set(self) -> tuple[int, ...]:
        """Row masks of ``{(x, y) : p(x, y) = 0}``."""
        return tuple(sum(1 << y for y, v in enumerate(row) if v == 0) for row in self.table)


def topology_from_metric(p: QuasiPseudoMetric) -> FiniteTopology:
    """Topology whose base is the open balls ``{y : p(x, y) < eps}``.

    The smallest ball around ``x`` (radius = least positive distance from
    ``x``) is its minimal open set; the Alexandrov invariant is re-validated.
    """
    minopen = []
    for row in p.table:
        positive = [v for v in row if v > 0]
        eps = min(positive) if positive else Fraction(1)
        minopen.append(sum(1 << y for y, v in enumerate(row) if v < eps))
    return FiniteTopology(p.n, tuple(minopen))


def monotone_topology(space: PreorderedSpace, direction: str = "upper") -> FiniteTopology:
    """Topology of the open increasing (``upper``) or decreasing (``lower``) sets."""
    if direction == "upper":
        return FiniteTopology(space.n, space.upper_minopen)
    if direction == "lower":
        return FiniteTopology(space.n, space.lower_minopen)
    raise ValueError("direction must be 'upper' or 'lower'")


def synthesize_qpm(space: PreorderedSpace) -> QuasiPseudoMetric:
    """``p(x, y) = max over the separating family of max(0, f(x) - f(y))``."""
    rep = check_completely_regular(space, cross_check=False)
    if not rep:
        raise NotCompletelyRegular(f"space is not completely regularly preordered: {rep.witness}")
    fam = rep.family
    n = space.n
    zero = Fraction(0)
    table = tuple(
        tuple(max([zero] + [f[x] - f[y] for f in fam]) for y in range(n)) for x in range(n)
    )
    return QuasiPseudoMetric(table)


def qpm_from_order_discrete(space: PreorderedSpace) -> QuasiPseudoMetric:
    if not space.top.is_discrete:
        raise NotDiscrete("topology is not discrete")
    n = space.n
    return QuasiPseudoMetric(
        tuple(tuple(Fraction(0) if (space.up[x] >> y) & 1 else Fraction(1) for y in range(n)) for x in range(n))
    )


def _checked(space: PreorderedSpace, p: QuasiPseudoMetric) -> QuasiPseudoMetric:
    if not isinstance(p, QuasiPseudoMetric):
        p = QuasiPseudoMetric(p)
    if p.n != space.n:
        raise SizeMismatch(f"metric on {p.n} points, space has {space.n}")
    return p.validate()


def _first_diff(a: Sequence[int], b: Sequence[int]) -> int | None:
    return next((x for x, (u, v) in enumerate(zip(a, b)) if u != v), None)


def check_admissible(space: PreorderedSpace, p: QuasiPseudoMetric) -> PropertyReport:
    """``p v p^-1`` generates the topology and ``p`` vanishes exactly on the order."""
    name = "admissible"
    p = _checked(space, p)
    x = _first_diff(topology_from_metric(p.symmetrized()).minopen, space.top.minopen)
    if x is not None:
        return PropertyReport(name, False, {"reason": "symmetric topology differs", "point": x})
    x = _first_diff(p.zero_set(), space.up)
    if x is not None:
        return PropertyReport(name, False, {"reason": "zero set differs from order", "point": x})
    return PropertyReport(name, True)


def check_strict(space: PreorderedSpace, p: QuasiPseudoMetric) -> PropertyReport:
    """Convex, T1-preordered, ``p`` generates the upper and ``p^-1`` the lower topology."""
    name = "strict"
    p = _checked(space, p)
    conv = is_convex(space)
    if not conv:
        return PropertyReport(name, False, {"reason": "not convex", **conv.witness})
    t1 = is_T1_preordered(space)
    if not t1:
        return PropertyReport(name, False, {"reason": "not T1-preordered", **t1.witness})
    x = _first_diff(topology_from_metric(p).minopen, space.upper_minopen)
    if x is not None:
        return PropertyReport(name, False, {"reason": "p does not generate the upper topology", "point": x})
    x = _first_diff(topology_from_metric(p.conjugate()).minopen, space.lower_minopen)
    if x is not None:
        return PropertyReport(name, False, {"reason": "conjugate does not generate the lower topology", "point": x})
    return PropertyReport(name, True)


def is_albert(p: QuasiPseudoMetric) -> bool:
    """``p(x, y) = p(y, x) = 0`` only when ``x = y``."""
    s = p.symmetrized()
    return all(s(x, y) != 0 for x in range(p.n) for y in range(p.n) if x != y)
