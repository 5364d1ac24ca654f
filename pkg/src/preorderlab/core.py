"""Finite topological preordered spaces and their hull/closure operators.

Subsets of the ground set ``{0, ..., n-1}`` are plain ``int`` bit masks
(bit ``x`` set means ``x`` is a member).  A finite topology is stored as its
table of minimal open neighbourhoods ``M(x)``; relations are stored row-wise,
``rows[x]`` being the mask of points related to ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidTopology, PointOutOfRange, SizeMismatch

__all__ = [
    "FiniteTopology",
    "Relation",
    "Preorder",
    "PreorderedSpace",
    "bits",
    "mask",
    "union_of",
    "make_space",
    "closure",
    "interior",
    "hull",
    "closed_hull",
    "convex_hull",
    "open_monotone_hull",
    "is_convex_set",
    "is_c_set",
    "product_closure",
]

INC = "inc"
DEC = "dec"


def bits(m: int):
    """Yield the indices of the set bits of ``m`` in increasing order."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def mask(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def union_of(table: Sequence[int], m: int) -> int:
    out = 0
    while m:
        low = m & -m
        out |= table[low.bit_length() - 1]
        m ^= low
    return out


def _transpose(rows: Sequence[int], n: int) -> tuple[int, ...]:
    cols = [0] * n
    for x, r in enumerate(rows):
        bit = 1 << x
        for y in bits(r):
            cols[y] |= bit
    return tuple(cols)


def _check_mask(n: int, m: int) -> int:
    if m < 0 or m >> n:
        raise SizeMismatch(f"subset {m:#b} does not fit a {n}-point space")
    return m


@dataclass(frozen=True)
class FiniteTopology:
    """Alexandrov topology given by minimal open sets ``minopen[x] = M(x)``."""

    n: int
    minopen: tuple[int, ...]
    _ptclosure: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        minopen = tuple(int(m) for m in self.minopen)
        object.__setattr__(self, "minopen", minopen)
        if len(minopen) != self.n:
            raise SizeMismatch(f"expected {self.n} minimal opens, got {len(minopen)}")
        full = (1 << self.n) - 1
        for x, mx in enumerate(minopen):
            if mx & ~full:
                raise InvalidTopology(f"M({x}) is not a subset of the ground set")
            if not (mx >> x) & 1:
                raise InvalidTopology(f"point {x} is not in M({x})")
            for y in bits(mx):
                if minopen[y] & ~mx:
                    raise InvalidTopology(f"{y} in M({x}) but M({y}) not inside M({x})")
        # cl{x} = {y : x in M(y)}
        object.__setattr__(self, "_ptclosure", _transpose(minopen, self.n))

    @classmethod
    def discrete(cls, n: int) -> FiniteTopology:
        return cls(n, tuple(1 << x for x in range(n)))

    @classmethod
    def indiscrete(cls, n: int) -> FiniteTopology:
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def from_open_sets(cls, n: int, opens: Iterable[int]) -> FiniteTopology:
        """Normalise an open-set family (a subbase suffices) to minimal opens."""
        full = (1 << n) - 1
        minopen = [full] * n
        for o in opens:
            _check_mask(n, o)
            for x in bits(o):
                minopen[x] &= o
        return cls(n, tuple(minopen))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def is_discrete(self) -> bool:
        return all(m == 1 << x for x, m in enumerate(self.minopen))

    def closure(self, s: int) -> int:
        return union_of(self._ptclosure, s)

    def interior(self, s: int) -> int:
        return self.full & ~self.closure(self.full & ~s)

    def open_hull(self, s: int) -> int:
        """Smallest open superset of ``s``."""
        return union_of(self.minopen, s)

    def point_closure(self, x: int) -> int:
        return self._ptclosure[x]

    def is_open(self, s: int) -> bool:
        return self.open_hull(s) == s

    def is_closed(self, s: int) -> bool:
        return self.closure(s) == s

    def open_sets(self) -> list[int]:
        return [s for s in range(1 << self.n) if self.open_hull(s) == s]


@dataclass(frozen=True, eq=False)
class Relation:
    """Binary relation on ``n`` points; ``rows[x] = {y : (x, y) in R}``."""

    n: int
    rows: tuple[int, ...]

    # Preorder and Relation with equal rows compare equal.
    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n:
            raise SizeMismatch(f"expected {self.n} rows, got {len(rows)}")
        full = (1 << self.n) - 1
        if any(r & ~full for r in rows):
            raise SizeMismatch("relation row exceeds the ground set")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Relation:
        rows = [0] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise PointOutOfRange(f"pair ({a}, {b}) outside a {n}-point set")
            rows[a] |= 1 << b
        return cls(n, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> Relation:
        return cls(n, tuple(1 << x for x in range(n)))

    @classmethod
    def full_relation(cls, n: int) -> Relation:
        return cls(n, ((1 << n) - 1,) * n)

    @cached_property
    def cols(self) -> tuple[int, ...]:
        return _transpose(self.rows, self.n)

    def transpose(self) -> Relation:
        return Relation(self.n, self.cols)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x, r in enumerate(self.rows) for y in bits(r)]

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool((self.rows[x] >> y) & 1)

    def issubset(self, other: Relation) -> bool:
        _same_size(self.n, other.n)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def union(self, other: Relation) -> Relation:
        _same_size(self.n, other.n)
        return Relation(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def image(self, s: int) -> int:
        return union_of(self.rows, s)

    def preimage(self, s: int) -> int:
        return union_of(self.cols, s)

    def is_reflexive(self) -> bool:
        return all((r >> x) & 1 for x, r in enumerate(self.rows))

    def is_transitive(self) -> bool:
        return all(union_of(self.rows, r) & ~r == 0 for r in self.rows)

    def is_antisymmetric(self) -> bool:
        return all(r & self.cols[x] == 1 << x or r & self.cols[x] == 0 for x, r in enumerate(self.rows))

    def reflexive_transitive_closure(self) -> Preorder:
        rows = [r | (1 << x) for x, r in enumerate(self.rows)]
        # Warshall over bit rows
        for k in range(self.n):
            kb, rk = 1 << k, rows[k]
            for i in range(self.n):
                if rows[i] & kb:
                    rows[i] |= rk
        return Preorder(self.n, tuple(rows))


class Preorder(Relation):
    """A reflexive transitive relation (validated)."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_reflexive():
            raise ValueError("preorder must be reflexive")
        if not self.is_transitive():
            raise ValueError("preorder must be transitive")

    def transpose(self) -> Preorder:
        return Preorder(self.n, self.cols)


def _same_size(a: int, b: int) -> None:
    if a != b:
        raise SizeMismatch(f"size mismatch: {a} vs {b}")


@dataclass(frozen=True)
class PreorderedSpace:
    top: FiniteTopology
    order: Preorder
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        _same_size(self.top.n, self.order.n)
        if not isinstance(self.order, Preorder):
            object.__setattr__(self, "order", Preorder(self.order.n, self.order.rows))
        if self.names is None:
            object.__setattr__(self, "names", tuple(str(i) for i in range(self.n)))
        elif len(self.names) != self.n or len(set(self.names)) != self.n:
            raise SizeMismatch("point names must be distinct, one per point")

    @property
    def n(self) -> int:
        return self.top.n

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def up(self) -> tuple[int, ...]:
        """``up[x] = i(x)``."""
        return self.order.rows

    @property
    def down(self) -> tuple[int, ...]:
        """``down[x] = d(x)``."""
        return self.order.cols

    def point(self, x: int) -> int:
        if not 0 <= x < self.n:
            raise PointOutOfRange(f"point {x} outside 0..{self.n - 1}")
        return x

    def subset(self, s: int) -> int:
        return _check_mask(self.n, s)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PointOutOfRange(f"unknown point {name!r}") from None

    @cached_property
    def lower_minopen(self) -> tuple[int, ...]:
        """Smallest open decreasing set containing each point."""
        return tuple(open_monotone_hull(self, 1 << x, DEC) for x in range(self.n))

    @cached_property
    def upper_minopen(self) -> tuple[int, ...]:
        """Smallest open increasing set containing each point."""
        return tuple(open_monotone_hull(self, 1 << x, INC) for x in range(self.n))

    @cached_property
    def t1(self) -> bool:
        from .props import is_T1_preordered

        return is_T1_preordered(self).verdict

    @cached_property
    def t2(self) -> bool:
        from .props import is_T2_preordered

        return is_T2_preordered(self).verdict


def make_space(
    minopen: Sequence[Iterable[int]] | Sequence[int],
    generators: Iterable[tuple[int, int]] = (),
    n: int | None = None,
    names: Sequence[str] | None = None,
) -> PreorderedSpace:
    """Build a space from a minimal-open table and order generators.

    ``minopen`` entries may be masks or iterables of point indices.  The order
    is the reflexive-transitive closure of ``generators``.
    """
    table = [m if isinstance(m, int) else mask(m) for m in minopen]
    if n is None:
        n = len(table)
    elif len(table) != n:
        raise SizeMismatch(f"minimal-open table has {len(table)} rows for n={n}")
    top = FiniteTopology(n, tuple(table))
    order = Relation.from_pairs(n, generators).reflexive_transitive_closure()
    return PreorderedSpace(top, order, tuple(names) if names is not None else None)


def closure(space: PreorderedSpace, s: int) -> int:
    return space.top.closure(space.subset(s))


def interior(space: PreorderedSpace, s: int) -> int:
    return space.top.interior(space.subset(s))


def hull(space: PreorderedSpace, s: int, direction: str = INC) -> int:
    """Increasing hull ``i(S)`` or decreasing hull ``d(S)``."""
    return union_of(_dir(space, direction), space.subset(s))


def _dir(space: PreorderedSpace, direction: str) -> tuple[int, ...]:
    if direction == INC:
        return space.up
    if direction == DEC:
        return space.down
    raise ValueError(f"direction must be 'inc' or 'dec', not {direction!r}")


def closed_hull(space: PreorderedSpace, s: int, direction: str = INC) -> int:
    """``I(S)`` / ``D(S)``: smallest closed monotone superset."""
    table = _dir(space, direction)
    cur = space.subset(s)
    while True:
        nxt = space.top.closure(union_of(table, cur))
        if nxt == cur:
            return cur
        cur = nxt


def open_monotone_hull(space: PreorderedSpace, s: int, direction: str = INC) -> int:
    """Smallest open increasing (decreasing) superset of ``s``."""
    table = _dir(space, direction)
    cur = space.subset(s)
    while True:
        nxt = space.top.open_hull(union_of(table, cur))
        if nxt == cur:
            return cur
        cur = nxt


def convex_hull(space: PreorderedSpace, s: int) -> int:
    s = space.subset(s)
    return union_of(space.down, s) & union_of(space.up, s)


def is_convex_set(space: PreorderedSpace, s: int) -> bool:
    return convex_hull(space, s) == s


def is_c_set(space: PreorderedSpace, s: int) -> bool:
    s = space.subset(s)
    return closed_hull(space, s, DEC) & closed_hull(space, s, INC) == s


def product_closure(space: PreorderedSpace | FiniteTopology, rel: Relation) -> Relation:
    """Closure of ``rel`` in the product topology on ``E x E``.

    ``(x, y)`` is in the closure iff ``M(x) x M(y)`` meets ``rel``, so row
    ``x`` of the result is the closure of ``rel(M(x))``.
    """
    top = space.top if isinstance(space, PreorderedSpace) else space
    _same_size(top.n, rel.n)
    rows = rel.rows
    return Relation(top.n, tuple(top.closure(union_of(rows, m)) for m in top.minopen))
