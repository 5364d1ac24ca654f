"""Causal structure of (1+1)-dimensional cone grids.

Sites are ``(t, x)`` with ``0 <= t < T`` and ``0 <= x < X``; the flat index
is ``t * X + x``.  One time step from a site with cone slope ``p/q`` may move
at most ``floor(p (t+1) / q) - floor(p t / q)`` lateral units, so a
homogeneous slope ``p/q`` allows ``p`` units per ``q`` steps.

All relations are computed by layered frontier propagation over batches of
sources: a boolean array ``(sources, X)`` is pushed one time layer at a time.
Widened cones add a counter automaton (one extra lateral unit, then ``k``
steps of cool-down) on top of the same sweep.

Closedness of a relation has no literal meaning on a lattice.  The Seifert
proxy used here keeps the widened-cone pairs that stay inside the causal
envelope of the grid with its deletions healed: wider cones may step around
a deleted site but never reach beyond the unwidened light cone.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import Preorder, PreorderedSpace, FiniteTopology, Relation
from .errors import BadParameters, InstanceTooLarge, WindowOutOfRange
from .props import PropertyReport

__all__ = [
    "ConeGrid",
    "GridRelation",
    "LadderReport",
    "minkowski",
    "cylinder",
    "one_step_relation",
    "successors",
    "j_plus",
    "j_plus_of_set",
    "j_minus_of_set",
    "i_plus",
    "widened_reach",
    "enveloped_reach",
    "seifert_approx",
    "reach_pairs",
    "causal_hull",
    "diamond",
    "causality_ladder",
    "is_globally_hyperbolic",
    "export_finite_space",
    "bench",
    "RUNGS",
]

RUNGS = ("non-causal", "causal", "stably-causal≈", "causally-simple≈", "globally-hyperbolic")
MAX_DENSE_SITES = 1 << 14
BATCH = 512

Site = tuple[int, int]


@dataclass(frozen=True)
class ConeGrid:
    T: int
    X: int
    slope: Fraction = Fraction(1)
    removed: frozenset = frozenset()
    time_periodic: bool = False
    slope_field: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        if self.T < 1 or self.X < 1:
            raise BadParameters("grid extents must be positive")
        object.__setattr__(self, "slope", Fraction(self.slope))
        if self.slope <= 0:
            raise BadParameters("slope must be positive")
        removed = frozenset((int(t), int(x)) for t, x in self.removed)
        for t, x in removed:
            if not (0 <= t < self.T and 0 <= x < self.X):
                raise BadParameters(f"removed site {(t, x)} outside the grid")
        object.__setattr__(self, "removed", removed)
        if self.slope_field is not None:
            sf = tuple(tuple(Fraction(v) for v in row) for row in self.slope_field)
            if len(sf) != self.T or any(len(row) != self.X for row in sf):
                raise BadParameters("slope field must be T x X")
            if any(v <= 0 for row in sf for v in row):
                raise BadParameters("slope must be positive at every site")
            object.__setattr__(self, "slope_field", sf)

    @property
    def n_sites(self) -> int:
        return self.T * self.X

    def index(self, site: Site) -> int:
        t, x = site
        return t * self.X + x

    def site(self, i: int) -> Site:
        return divmod(int(i), self.X)

    def healed(self) -> ConeGrid:
        return replace(self, removed=frozenset())

    def without(self, *sites: Site) -> ConeGrid:
        return replace(self, removed=self.removed | frozenset(sites))

    @property
    def homogeneous(self) -> bool:
        return self.slope_field is None

    def slope_at(self, t: int, x: int) -> Fraction:
        return self.slope if self.slope_field is None else self.slope_field[t][x]


def minkowski(T: int, X: int | None = None, slope=1) -> ConeGrid:
    return ConeGrid(T, T if X is None else X, Fraction(slope))


def cylinder(T: int, X: int | None = None, slope=1) -> ConeGrid:
    return ConeGrid(T, T if X is None else X, Fraction(slope), time_periodic=True)


class _Tables:
    """Per-grid arrays shared by every sweep."""

    def __init__(self, grid: ConeGrid):
        T, X = grid.T, grid.X
        self.grid = grid
        alive = np.ones((T, X), dtype=bool)
        for t, x in grid.removed:
            alive[t, x] = False
        self.alive = alive
        budget = np.empty((T, X), dtype=np.int64)
        for t in range(T):
            for x in range(X):
                s = grid.slope_at(t, x)
                budget[t, x] = (s.numerator * (t + 1)) // s.denominator - (s.numerator * t) // s.denominator
        self.budget = budget
        self.reach = int(budget.max()) + 1  # widest lateral step incl. bonus


_TABLES: dict[ConeGrid, _Tables] = {}


def _tables(grid: ConeGrid) -> _Tables:
    tab = _TABLES.get(grid)
    if tab is None:
        if len(_TABLES) > 32:
            _TABLES.clear()
        tab = _TABLES[grid] = _Tables(grid)
    return tab


# Automata: list of (src_state, dst_state, move) and the accepting states.
# move: "base" |d| <= b, "bonus" |d| == b + 1, "slack" |d| <= b - 1
def _automaton(k: int | None, strict: bool = False):
    if strict:
        return 2, [(0, 0, "base"), (0, 1, "slack"), (1, 1, "base")], (1,)
    if k is None:
        return 1, [(0, 0, "base")], (0,)
    if k < 1:
        raise BadParameters("slack index k must be >= 1")
    trans = []
    for s in range(k):
        nxt = 0 if s == 0 else (s + 1) % k
        trans.append((s, nxt, "base"))
    trans.append((0, 1 % k, "bonus"))
    return k, trans, tuple(range(k))


def _move_ok(move: str, d: int, b: np.ndarray) -> np.ndarray:
    if move == "base":
        return b >= d
    if move == "bonus":
        return b == d - 1
    return b > d


def _shift_or(out: np.ndarray, src: np.ndarray, d: int) -> None:
    """``out[..., x + d] |= src[..., x]`` without wrap-around."""
    X = src.shape[-1]
    if d >= X or -d >= X:
        return
    if d >= 0:
        out[..., d:] |= src[..., : X - d]
    else:
        out[..., : X + d] |= src[..., -d:]


def _step(tab: _Tables, states: np.ndarray, t: int, trans, backward: bool) -> np.ndarray:
    """Advance per-state frontiers across the edge layer ``t -> t+1``.

    Forward: ``states`` lives on layer ``t`` and the result on ``t+1``.
    Backward: ``states`` lives on layer ``t+1`` and the result on ``t``.
    """
    T = tab.grid.T
    b = tab.budget[t]
    out = np.zeros_like(states)
    for d in range(-tab.reach, tab.reach + 1):
        ad = abs(d)
        for s, e, move in trans:
            ok = _move_ok(move, ad, b)
            if not ok.any():
                continue
            if backward:
                shifted = np.zeros_like(states[e])
                _shift_or(shifted, states[e], -d)
                out[s] |= shifted & ok
            else:
                _shift_or(out[e], states[s] & ok, d)
    tgt = t if backward else (t + 1) % T
    out &= tab.alive[tgt]
    return out


def _sweep(grid: ConeGrid, seeds: np.ndarray, k: int | None = None, strict: bool = False, backward: bool = False) -> np.ndarray:
    """Reach sets of seed masks.

    ``seeds`` has shape ``(S, T, X)``; seeds enter in the automaton's start
    state.  Returns the ``(S, T, X)`` sites reachable (backward: co-reachable)
    in an accepting state.
    """
    tab = _tables(grid)
    T = grid.T
    n_states, trans, accept = _automaton(k, strict)
    seeds = seeds & tab.alive
    S = seeds.shape[0]
    if not grid.time_periodic:
        out = np.zeros_like(seeds)
        cur = np.zeros((n_states, S, grid.X), dtype=bool)
        layers = range(T - 1, -1, -1) if backward else range(T)
        for t in layers:
            cur[0] |= seeds[:, t]
            out[:, t] = cur[list(accept)].any(axis=0)
            if backward and t > 0:
                cur = _step(tab, cur, t - 1, trans, True)
            elif not backward and t < T - 1:
                cur = _step(tab, cur, t, trans, False)
        return out
    reached = np.zeros((n_states,) + seeds.shape, dtype=bool)
    reached[0] |= seeds
    changed = True
    while changed:
        changed = False
        layers = range(T - 1, -1, -1) if backward else range(T)
        for t in layers:
            if backward:
                src, tgt = (t + 1) % T, t
                nxt = _step(tab, reached[:, :, src], t, trans, True)
            else:
                src, tgt = t, (t + 1) % T
                nxt = _step(tab, reached[:, :, src], t, trans, False)
            new = nxt & ~reached[:, :, tgt]
            if new.any():
                reached[:, :, tgt] |= new
                changed = True
    return reached[list(accept)].any(axis=0)


def _site_seeds(grid: ConeGrid, sites: Sequence[int]) -> np.ndarray:
    seeds = np.zeros((len(sites), grid.T, grid.X), dtype=bool)
    for j, i in enumerate(sites):
        t, x = divmod(int(i), grid.X)
        seeds[j, t, x] = True
    return seeds


@dataclass(frozen=True, eq=False)
class GridRelation:
    """Relation on grid sites as bit-packed rows (little-endian bit order)."""

    grid: ConeGrid
    packed: np.ndarray = field(repr=False)
    label: str = ""
    slope: Fraction = Fraction(1)
    slack: int | None = None

    @classmethod
    def from_dense(cls, grid: ConeGrid, dense: np.ndarray, **meta) -> GridRelation:
        return cls(grid, np.packbits(dense, axis=1, bitorder="little"), **meta)

    @property
    def n(self) -> int:
        return self.grid.n_sites

    def dense(self) -> np.ndarray:
        return np.unpackbits(self.packed, axis=1, count=self.n, bitorder="little").astype(bool)

    def row(self, site: Site) -> np.ndarray:
        i = self.grid.index(site)
        r = np.unpackbits(self.packed[i], count=self.n, bitorder="little").astype(bool)
        return r.reshape(self.grid.T, self.grid.X)

    def __contains__(self, pair) -> bool:
        a, b = pair
        i, j = self.grid.index(a), self.grid.index(b)
        return bool((self.packed[i, j >> 3] >> (j & 7)) & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridRelation):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.packed, other.packed)

    def __hash__(self):
        return hash((self.grid, self.packed.tobytes()))

    def issubset(self, other: GridRelation) -> bool:
        return not (self.packed & ~other.packed).any()

    def _with(self, packed: np.ndarray, label: str) -> GridRelation:
        return GridRelation(self.grid, packed, label, self.slope, self.slack)

    def intersection(self, other: GridRelation) -> GridRelation:
        return self._with(self.packed & other.packed, f"{self.label}&{other.label}")

    def difference_pairs(self, other: GridRelation) -> list[tuple[Site, Site]]:
        diff = self.packed & ~other.packed
        rows, cols = np.nonzero(np.unpackbits(diff, axis=1, count=self.n, bitorder="little"))
        return [(self.grid.site(i), self.grid.site(j)) for i, j in zip(rows, cols)]

    def count(self) -> int:
        return int(np.unpackbits(self.packed, bitorder="little").sum())

    def is_reflexive_on_live(self) -> bool:
        alive = _tables(self.grid).alive.ravel()
        d = self.dense()
        return bool(np.all(np.diagonal(d)[alive])) and not d[~alive].any() and not d[:, ~alive].any()

    def symmetric_pair(self) -> tuple[Site, Site] | None:
        """First pair ``(a, b)``, ``a != b``, related both ways."""
        d = self.dense()
        sym = d & d.T
        np.fill_diagonal(sym, False)
        hits = np.argwhere(sym)
        if len(hits) == 0:
            return None
        i, j = hits[0]
        return self.grid.site(i), self.grid.site(j)

    def is_antisymmetric(self) -> bool:
        return self.symmetric_pair() is None

    def is_transitive(self) -> bool:
        p = self.packed
        for i in range(self.n):
            succ = np.flatnonzero(np.unpackbits(p[i], count=self.n, bitorder="little"))
            if len(succ) and (np.bitwise_or.reduce(p[succ], axis=0) & ~p[i]).any():
                return False
        return True

    def transitive_closure(self, pivots: Iterable[int] | None = None) -> GridRelation:
        """Warshall sweep over ``pivots`` (all sites when omitted)."""
        p = self.packed.copy()
        order = range(self.n) if pivots is None else sorted(set(int(c) for c in pivots))
        for c in order:
            col = ((p[:, c >> 3] >> (c & 7)) & 1).astype(bool)
            if col.any():
                p[col] |= p[c]
        return self._with(p, f"closure({self.label})")

    def to_relation(self) -> Relation:
        d = self.dense()
        rows = tuple(int.from_bytes(np.packbits(r, bitorder="little").tobytes(), "little") for r in d)
        return Relation(self.n, rows)


def _dense_guard(grid: ConeGrid) -> None:
    if grid.n_sites > MAX_DENSE_SITES:
        raise InstanceTooLarge(f"{grid.n_sites} sites exceed the dense-relation cap {MAX_DENSE_SITES}")


def _relation(grid: ConeGrid, k: int | None = None, strict: bool = False, label: str = "", slack=None) -> GridRelation:
    _dense_guard(grid)
    n = grid.n_sites
    alive = _tables(grid).alive.ravel()
    packed = np.zeros((n, (n + 7) // 8), dtype=np.uint8)
    live = np.flatnonzero(alive)
    for start in range(0, len(live), BATCH):
        chunk = live[start : start + BATCH]
        reach = _sweep(grid, _site_seeds(grid, chunk), k, strict).reshape(len(chunk), n)
        packed[chunk] = np.packbits(reach, axis=1, bitorder="little")
    return GridRelation(grid, packed, label, grid.slope, slack)


def one_step_relation(grid: ConeGrid) -> Relation:
    """Single time-step causal moves as a :class:`Relation` on flat indices."""
    _dense_guard(grid)
    rows = [0] * grid.n_sites
    for t in range(grid.T):
        for x in range(grid.X):
            i = grid.index((t, x))
            for s in successors(grid, (t, x)):
                rows[i] |= 1 << grid.index(s)
    return Relation(grid.n_sites, tuple(rows))


def successors(grid: ConeGrid, site: Site) -> list[Site]:
    t, x = site
    tab = _tables(grid)
    if not tab.alive[t, x]:
        return []
    if t == grid.T - 1 and not grid.time_periodic:
        return []
    nt = (t + 1) % grid.T
    b = int(tab.budget[t, x])
    return [(nt, y) for y in range(max(0, x - b), min(grid.X, x + b + 1)) if tab.alive[nt, y]]


def j_plus(grid: ConeGrid) -> GridRelation:
    """Causal relation: reflexive-transitive closure of the one-step moves."""
    return _relation(grid, None, label="J+")


def i_plus(grid: ConeGrid) -> GridRelation:
    """Chronological relation: causal paths that leave at least one lateral unit unused."""
    return _relation(grid, None, strict=True, label="I+")


def widened_reach(grid: ConeGrid, k: int) -> GridRelation:
    """Reachability with one extra lateral unit granted every ``k`` steps.

    The bonus is available from the first step; after it is used ``k`` steps
    must pass before the next one.  Decreasing in ``k``.
    """
    if k < 1:
        raise BadParameters("k must be >= 1")
    return _relation(grid, k, label=f"W{k}", slack=k)


def enveloped_reach(grid: ConeGrid, k: int) -> GridRelation:
    """Widened reach clipped to the healed causal envelope, transitively closed."""
    if not grid.removed:
        # the envelope is J+ itself, which every widened reach contains
        return GridRelation(grid, j_plus(grid).packed, f"S{k}", grid.slope, k)
    raw = widened_reach(grid, k)
    env = j_plus(grid.healed())
    clipped = raw.intersection(env)
    base = j_plus(grid)
    extra = clipped.packed & ~base.packed
    if not extra.any():
        return GridRelation(grid, clipped.packed, f"S{k}", grid.slope, k)
    ex = np.unpackbits(extra, axis=1, count=grid.n_sites, bitorder="little")
    pivots = np.union1d(np.flatnonzero(ex.any(axis=1)), np.flatnonzero(ex.any(axis=0)))
    closed = GridRelation(grid, clipped.packed, f"S{k}", grid.slope, k).transitive_closure(pivots)
    return GridRelation(grid, closed.packed, f"S{k}", grid.slope, k)


def seifert_approx(grid: ConeGrid, k_max: int = 8) -> tuple[GridRelation, bool]:
    """Seifert-relation proxy and whether it has stabilised at ``k_max``.

    The enveloped relations decrease in ``k``, so the intersection over
    ``k <= k_max`` is the ``k_max`` term.
    """
    if k_max < 2:
        raise BadParameters("k_max must be >= 2")
    last = enveloped_reach(grid, k_max)
    prev = enveloped_reach(grid, k_max - 1)
    return last, prev == last


def j_plus_of_set(grid: ConeGrid, K) -> np.ndarray:
    """``J+(K)`` as a ``(T, X)`` boolean mask; ``K`` is a mask or iterable of sites."""
    return _sweep(grid, _as_mask(grid, K)[None])[0]


def j_minus_of_set(grid: ConeGrid, K) -> np.ndarray:
    return _sweep(grid, _as_mask(grid, K)[None], backward=True)[0]


def _as_mask(grid: ConeGrid, K) -> np.ndarray:
    if isinstance(K, np.ndarray):
        return K.astype(bool)
    m = np.zeros((grid.T, grid.X), dtype=bool)
    for t, x in K:
        m[t, x] = True
    return m


def window_mask(grid: ConeGrid, window: tuple[int, int, int, int]) -> np.ndarray:
    t0, x0, t1, x1 = window
    if not (0 <= t0 <= t1 < grid.T and 0 <= x0 <= x1 < grid.X):
        raise WindowOutOfRange(f"window {window} outside a {grid.T}x{grid.X} grid")
    m = np.zeros((grid.T, grid.X), dtype=bool)
    m[t0 : t1 + 1, x0 : x1 + 1] = True
    return m


def causal_hull(grid: ConeGrid, windows) -> np.ndarray:
    """``J+(K) & J-(K)`` for each rectangular window ``(t0, x0, t1, x1)``.

    Accepts one window (returns ``(T, X)``) or a list (returns ``(W, T, X)``).
    """
    single = isinstance(windows, tuple) and len(windows) == 4 and all(isinstance(v, (int, np.integer)) for v in windows)
    wins = [windows] if single else list(windows)
    alive = _tables(grid).alive
    seeds = np.stack([window_mask(grid, w) & alive for w in wins])
    out = _sweep(grid, seeds) & _sweep(grid, seeds, backward=True)
    return out[0] if single else out


def diamond(grid: ConeGrid, window: tuple[int, int, int, int]) -> np.ndarray:
    """Closed-form causal hull of a window on a slope-1 grid without deletions."""
    t0, x0, t1, x1 = window
    t = np.arange(grid.T)[:, None]
    x = np.arange(grid.X)[None, :]
    dist = np.maximum(np.maximum(x0 - x, x - x1), 0)
    return (t >= t0) & (t <= t1) & (dist <= np.minimum(t - t0, t1 - t))


def _time_period(grid: ConeGrid) -> int | None:
    """Period of the move budget in time when translation dedup applies."""
    if grid.removed or grid.time_periodic or not grid.homogeneous:
        return None
    return grid.slope.denominator


def reach_pairs(grid: ConeGrid, pairs: Sequence[tuple[Site, Site]], k: int | None = None) -> np.ndarray:
    """Membership of ``pairs`` in ``J+`` (or widened reach), without a dense relation.

    On homogeneous grids without deletions, rows are time translates of the
    rows of sources in the first budget period, so only those are swept.
    """
    out = np.zeros(len(pairs), dtype=bool)
    if not len(pairs):
        return out
    period = _time_period(grid)
    src = np.array([grid.index(a) for a, _ in pairs])
    dst = np.array([grid.index(b) for _, b in pairs])
    if period is not None and period < grid.T:
        X = grid.X
        st, sx = np.divmod(src, X)
        dt_, dx = np.divmod(dst, X)
        base_t = st % period
        shift = st - base_t
        canon = np.arange(period * X)
        rows = _sweep(grid, _site_seeds(grid, canon), k)
        ok = dt_ >= shift
        out[ok] = rows[base_t[ok] * X + sx[ok], dt_[ok] - shift[ok], dx[ok]]
        return out
    uniq, pos = np.unique(src, return_inverse=True)
    for start in range(0, len(uniq), BATCH):
        chunk = uniq[start : start + BATCH]
        rows = _sweep(grid, _site_seeds(grid, chunk), k).reshape(len(chunk), -1)
        sel = (pos >= start) & (pos < start + len(chunk))
        out[sel] = rows[pos[sel] - start, dst[sel]]
    return out


def _causal_witness(grid: ConeGrid) -> tuple[Site, Site] | None:
    """Two distinct sites related both ways by ``J+``, or ``None``."""
    if not grid.time_periodic:
        return None  # every move advances time
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components

    alive = _tables(grid).alive
    rows, cols = [], []
    for t in range(grid.T):
        for x in range(grid.X):
            for s in successors(grid, (t, x)):
                rows.append(grid.index((t, x)))
                cols.append(grid.index(s))
    n = grid.n_sites
    g = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(g, directed=True, connection="strong")
    seen: dict[int, int] = {}
    for i in np.flatnonzero(alive.ravel()):
        lab = labels[i]
        if lab in seen:
            return grid.site(seen[lab]), grid.site(i)
        seen[lab] = i
    return None


def _stable_witness(grid: ConeGrid, k: int) -> tuple[Site, Site] | None:
    if not grid.time_periodic:
        return None
    return widened_reach(grid, k).symmetric_pair()


def _simple_witness(grid: ConeGrid, k_max: int) -> tuple[tuple[Site, Site] | None, bool]:
    """First pair of the Seifert proxy outside ``J+`` and the stabilisation flag."""
    if not grid.removed:
        return None, True
    s, stable = seifert_approx(grid, k_max)
    diff = s.difference_pairs(j_plus(grid))
    return (diff[0] if diff else None), stable


def _gh_windows(grid: ConeGrid, n_windows: int, seed: int) -> list[tuple[int, int, int, int]]:
    T, X = grid.T, grid.X
    n_all = (T * (T + 1) // 2) * (X * (X + 1) // 2)
    if n_all <= n_windows:
        return [(t0, x0, t1, x1) for t0 in range(T) for t1 in range(t0, T) for x0 in range(X) for x1 in range(x0, X)]
    rng = np.random.default_rng(seed)
    wins = []
    for _ in range(n_windows):
        t0, t1 = sorted(rng.integers(0, T, 2))
        x0, x1 = sorted(rng.integers(0, X, 2))
        wins.append((int(t0), int(x0), int(t1), int(x1)))
    # windows whose null corners graze each deleted site
    for t, x in sorted(grid.removed):
        for s in (-1, 1):
            xc = x - s
            if 0 <= xc < X and t >= 1:
                wins.append((t - 1, xc, T - 1, xc))
            if 0 <= xc < X and t + 1 < T:
                wins.append((0, xc, t + 1, xc))
    return wins


def _hull_leak(grid: ConeGrid, windows) -> dict | None:
    """Compare hulls with those in a healed grid enlarged by one cell."""
    T, X = grid.T, grid.X
    # pad time by a whole budget period so step budgets keep their phase
    if grid.time_periodic:
        ot = 0
    elif grid.slope_field is None:
        ot = grid.slope.denominator
    else:
        ot = math.lcm(*(v.denominator for row in grid.slope_field for v in row))
    big_T = T + 2 * ot
    field = None
    if grid.slope_field is not None:
        sf = np.array(grid.slope_field, dtype=object)
        sf = np.pad(sf, ((ot, ot), (1, 1)), mode="edge")
        field = tuple(tuple(r) for r in sf)
    big = ConeGrid(big_T, X + 2, grid.slope, frozenset(), grid.time_periodic, field)
    alive = _tables(grid).alive
    for start in range(0, len(windows), 64):
        chunk = windows[start : start + 64]
        h = causal_hull(grid, chunk)
        hb = causal_hull(big, [(t0 + ot, x0 + 1, t1 + ot, x1 + 1) for t0, x0, t1, x1 in chunk])
        hb = hb[:, ot : ot + T, 1 : 1 + X] & alive
        bad = np.argwhere(h != hb)
        if len(bad):
            w, t, x = bad[0]
            return {"window": chunk[w], "site": (int(t), int(x)), "in_grid_hull": bool(h[w, t, x])}
    return None


def is_globally_hyperbolic(grid: ConeGrid, k_max: int = 8, n_windows: int = 128, seed: int = 0) -> PropertyReport:
    """Causal, causally simple (proxy), and causal hulls of windows do not leak.

    A window's hull leaks when it differs from the hull of the same window in
    the healed grid enlarged by one cell, i.e. when deletions or the boundary
    cut it open.  Windows are exhaustive on small grids, seeded samples plus
    windows grazing each deleted site otherwise.
    """
    name = "globally-hyperbolic"
    pair = _causal_witness(grid)
    if pair:
        return PropertyReport(name, False, {"level": "causal", "pair": pair})
    leak = _hull_leak(grid, _gh_windows(grid, n_windows, seed))
    pair, _ = _simple_witness(grid, k_max)
    if pair:
        return PropertyReport(name, False, {"level": "causally-simple", "pair": pair, "leak": leak})
    if leak:
        return PropertyReport(name, False, {"level": "hull", "leak": leak})
    return PropertyReport(name, True)


@dataclass(frozen=True)
class LadderReport:
    rung: str
    checks: dict
    witnesses: dict
    k_max: int
    stabilized: bool
    timing: dict

    @property
    def level(self) -> int:
        return RUNGS.index(self.rung)


def causality_ladder(grid: ConeGrid, k_max: int = 8, n_windows: int = 128, seed: int = 0) -> LadderReport:
    """Highest verified rung of the causality ladder."""
    if k_max < 2:
        raise BadParameters("k_max must be >= 2")
    checks: dict[str, bool] = {}
    wit: dict = {}
    timing: dict[str, float] = {}
    stable = True

    def done(rung):
        return LadderReport(rung, checks, wit, k_max, stable, timing)

    t0 = time.perf_counter()
    pair = _causal_witness(grid)
    timing["causal"] = time.perf_counter() - t0
    checks["causal"] = pair is None
    if pair:
        wit["causal"] = pair
        return done("non-causal")
    t0 = time.perf_counter()
    pair = _stable_witness(grid, k_max)
    timing["stably-causal"] = time.perf_counter() - t0
    checks["stably-causal"] = pair is None
    if pair:
        wit["stably-causal"] = pair
        return done("causal")
    t0 = time.perf_counter()
    pair, stable = _simple_witness(grid, k_max)
    timing["causally-simple"] = time.perf_counter() - t0
    checks["causally-simple"] = pair is None
    if pair:
        wit["causally-simple"] = pair
        return done("stably-causal≈")
    t0 = time.perf_counter()
    leak = _hull_leak(grid, _gh_windows(grid, n_windows, seed))
    timing["globally-hyperbolic"] = time.perf_counter() - t0
    checks["globally-hyperbolic"] = leak is None
    if leak:
        wit["globally-hyperbolic"] = leak
        return done("causally-simple≈")
    return done("globally-hyperbolic")


def export_finite_space(grid: ConeGrid, window: tuple[int, int, int, int]) -> PreorderedSpace:
    """Live sites of a window with the discrete topology and ``J+`` restricted."""
    m = window_mask(grid, window) & _tables(grid).alive
    sites = [grid.index((int(t), int(x))) for t, x in np.argwhere(m)]
    n = len(sites)
    if n == 0:
        raise WindowOutOfRange("window contains no live site")
    reach = np.zeros((n, grid.n_sites), dtype=bool)
    for start in range(0, n, BATCH):
        chunk = sites[start : start + BATCH]
        reach[start : start + len(chunk)] = _sweep(grid, _site_seeds(grid, chunk)).reshape(len(chunk), -1)
    sub = reach[:, sites]
    rows = tuple(sum(1 << int(j) for j in np.flatnonzero(r)) for r in sub)
    order = Relation(n, rows).reflexive_transitive_closure()
    names = tuple(f"{t},{x}" for t, x in (grid.site(i) for i in sites))
    return PreorderedSpace(FiniteTopology.discrete(n), Preorder(n, order.rows), names)


def bench(grid: ConeGrid, n_rows: int = 1024, seed: int = 0) -> dict:
    """Throughput of causal-row computation on seeded random sources."""
    rng = np.random.default_rng(seed)
    live = np.flatnonzero(_tables(grid).alive.ravel())
    srcs = rng.choice(live, size=min(n_rows, len(live)), replace=False)
    t0 = time.perf_counter()
    for start in range(0, len(srcs), BATCH):
        _sweep(grid, _site_seeds(grid, srcs[start : start + BATCH]))
    dt = time.perf_counter() - t0
    return {"rows": int(len(srcs)), "seconds": dt, "rows_per_second": len(srcs) / dt if dt > 0 else float("inf")}
