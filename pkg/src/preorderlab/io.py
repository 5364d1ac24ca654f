"""JSON instance, relation, metric and grid formats."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .core import FiniteTopology, PreorderedSpace, Relation
from .errors import InvalidTopology, ParseError, PreorderLabError, SizeMismatch
from .grid import ConeGrid
from .qpmetric import QuasiPseudoMetric

__all__ = [
    "space_from_dict",
    "space_to_dict",
    "load_space",
    "dump_space",
    "relation_from_dict",
    "load_relation",
    "qpm_to_dict",
    "qpm_from_dict",
    "grid_from_dict",
    "grid_to_dict",
    "load_grid",
    "parse_fraction",
    "parse_subset",
]


def _read_json(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _names(data: dict) -> list[str]:
    pts = data.get("points")
    if not isinstance(pts, list) or not pts:
        raise ParseError("'points' must be a non-empty list")
    names = [str(p) for p in pts]
    if len(set(names)) != len(names):
        raise ParseError("duplicate point names")
    return names


def _lookup(index: dict[str, int], name) -> int:
    try:
        return index[str(name)]
    except KeyError:
        raise ParseError(f"unknown point {name!r}") from None


def _pairs(index: dict[str, int], raw, key: str) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise ParseError(f"'{key}' must be a list of pairs")
    out = []
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"bad pair {pair!r} in '{key}'")
        out.append((_lookup(index, pair[0]), _lookup(index, pair[1])))
    return out


def space_from_dict(data: dict) -> PreorderedSpace:
    """``{"points": [...], "minopen": {name: [...]}, "order": [[a, b], ...]}``.

    The order is the reflexive-transitive closure of the listed pairs.
    """
    if not isinstance(data, dict):
        raise ParseError("instance must be an object")
    names = _names(data)
    index = {p: i for i, p in enumerate(names)}
    mo = data.get("minopen")
    if not isinstance(mo, dict) or set(map(str, mo)) != set(names):
        raise ParseError("'minopen' must map every point to a list of points")
    minopen = []
    for p in names:
        members = mo[p]
        if not isinstance(members, list):
            raise ParseError(f"minopen of {p!r} must be a list")
        minopen.append(sum(1 << _lookup(index, q) for q in set(map(str, members))))
    n = len(names)
    try:
        top = FiniteTopology(n, tuple(minopen))
    except InvalidTopology as exc:
        raise ParseError(str(exc)) from exc
    order = Relation.from_pairs(n, _pairs(index, data.get("order", []), "order")).reflexive_transitive_closure()
    return PreorderedSpace(top, order, tuple(names))


def space_to_dict(space: PreorderedSpace) -> dict:
    names = space.names
    return {
        "points": list(names),
        "minopen": {names[x]: [names[y] for y in range(space.n) if (space.top.minopen[x] >> y) & 1] for x in range(space.n)},
        "order": [[names[x], names[y]] for x, y in space.order.pairs() if x != y],
    }


def load_space(path) -> PreorderedSpace:
    return space_from_dict(_read_json(path))


def dump_space(space: PreorderedSpace, path=None, qpm: QuasiPseudoMetric | None = None) -> str:
    data = space_to_dict(space)
    if qpm is not None:
        data["qpm"] = qpm_to_dict(qpm)
    text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def relation_from_dict(space: PreorderedSpace, data) -> Relation:
    """``{"relation": [[a, b], ...]}`` or a bare list of pairs, by point name."""
    raw = data.get("relation") if isinstance(data, dict) else data
    index = {p: i for i, p in enumerate(space.names)}
    if isinstance(data, dict) and "points" in data and _names(data) != list(space.names):
        raise SizeMismatch(f"relation is over {len(data['points'])} points, space has {space.n}")
    return Relation.from_pairs(space.n, _pairs(index, raw, "relation"))


def load_relation(space: PreorderedSpace, path) -> Relation:
    return relation_from_dict(space, _read_json(path))


def parse_fraction(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc


def qpm_to_dict(p: QuasiPseudoMetric) -> list[list[str]]:
    return [[f"{v.numerator}/{v.denominator}" for v in row] for row in p.table]


def qpm_from_dict(raw) -> QuasiPseudoMetric:
    if not isinstance(raw, list) or any(not isinstance(r, list) for r in raw):
        raise ParseError("'qpm' must be a matrix")
    try:
        return QuasiPseudoMetric(tuple(tuple(parse_fraction(v) for v in row) for row in raw))
    except PreorderLabError as exc:
        raise ParseError(str(exc)) from exc


def parse_subset(space: PreorderedSpace, text: str) -> int:
    """Comma-separated point names (or ``{}`` for the empty set) to a mask."""
    text = text.strip().strip("{}").strip()
    if not text:
        return 0
    index = {p: i for i, p in enumerate(space.names)}
    return sum(1 << _lookup(index, tok.strip()) for tok in text.split(","))


def grid_from_dict(data: dict) -> ConeGrid:
    """``{"T":.., "X":.., "slope": "p/q", "removed": [[t, x], ...], "time_periodic": bool}``."""
    if not isinstance(data, dict):
        raise ParseError("grid file must hold an object")
    try:
        T, X = int(data["T"]), int(data["X"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("grid file needs integer 'T' and 'X'") from exc
    removed = data.get("removed", [])
    if not isinstance(removed, list) or any(not isinstance(r, list) or len(r) != 2 for r in removed):
        raise ParseError("'removed' must be a list of [t, x] pairs")
    try:
        return ConeGrid(
            T,
            X,
            parse_fraction(data.get("slope", "1/1")),
            frozenset((int(t), int(x)) for t, x in removed),
            bool(data.get("time_periodic", False)),
        )
    except PreorderLabError as exc:
        raise ParseError(str(exc)) from exc


def grid_to_dict(grid: ConeGrid) -> dict:
    s = grid.slope
    return {
        "T": grid.T,
        "X": grid.X,
        "slope": f"{s.numerator}/{s.denominator}",
        "removed": [list(r) for r in sorted(grid.removed)],
        "time_periodic": grid.time_periodic,
    }


def load_grid(path) -> ConeGrid:
    return grid_from_dict(_read_json(path))
