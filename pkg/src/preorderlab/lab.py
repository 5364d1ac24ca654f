"""Instance generation, theorem verification at finite scale, and searches."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .closure import smallest_closed_preorder
from .core import DEC, INC, FiniteTopology, Preorder, PreorderedSpace, Relation, closed_hull, hull
from .errors import BadParameters, InstanceTooLarge, UnknownPredicate
from .props import (
    PropertyReport,
    class_indistinguishable,
    convexity_at,
    is_antisymmetric,
    is_C_space,
    is_convex,
    is_I_space,
    is_locally_convex,
    is_normal_topology,
    is_normally_preordered,
    is_T1_preordered,
    is_T2_preordered,
    is_weakly_convex,
    property_battery,
)

__all__ = [
    "preorders",
    "enumerate_spaces",
    "random_space",
    "THEOREMS",
    "TheoremReport",
    "theorem_suite",
    "PREDICATES",
    "SearchConfig",
    "SearchResult",
    "counterexample_search",
    "Ex11Diagnostic",
    "example_1_1",
]

MAX_ENUM = 4

_PREORDERS: dict[int, tuple[Preorder, ...]] = {}


def preorders(n: int) -> tuple[Preorder, ...]:
    """All preorders on ``n`` labeled points, in a fixed canonical order."""
    if n > MAX_ENUM:
        raise InstanceTooLarge(f"enumeration is limited to n <= {MAX_ENUM}")
    if n not in _PREORDERS:
        offs = [(i, j) for i in range(n) for j in range(n) if i != j]
        out = []
        for m in range(1 << len(offs)):
            rows = [1 << i for i in range(n)]
            for b, (i, j) in enumerate(offs):
                if (m >> b) & 1:
                    rows[i] |= 1 << j
            rel = Relation(n, tuple(rows))
            if rel.is_transitive():
                out.append(Preorder(n, rel.rows))
        _PREORDERS[n] = tuple(out)
    return _PREORDERS[n]


def enumerate_spaces(n: int, closed_only: bool = False) -> Iterator[PreorderedSpace]:
    """Every labeled (topology, preorder) pair on ``n`` points.

    Finite topologies correspond to preorders through their specialization
    order, ``M(x)`` being the up-set of ``x``.  Topologies are visited
    coarsest first (fewest open sets), orders in canonical preorder order.
    """
    ps = preorders(n)
    tops = sorted((FiniteTopology(n, p.rows) for p in ps), key=lambda t: (len(t.open_sets()), t.minopen))
    for top in tops:
        for order in ps:
            space = PreorderedSpace(top, order)
            if not closed_only or is_T2_preordered(space):
                yield space


def _random_preorder(rng: random.Random, n: int, density: float) -> Preorder:
    rows = [1 << x for x in range(n)]
    for x in range(n):
        for y in range(n):
            if x != y and rng.random() < density:
                rows[x] |= 1 << y
    return Relation(n, tuple(rows)).reflexive_transitive_closure()


def random_space(seed: int, n: int, density: float = 0.3, top_density: float = 0.3, repair: bool = True) -> PreorderedSpace:
    """Seeded random space.

    The topology comes from a random preorder used as specialization order;
    the order is the preorder generated by random pairs of the given density,
    replaced by its smallest closed extension unless ``repair`` is off.
    """
    if n < 1:
        raise BadParameters("n must be >= 1")
    rng = random.Random(seed)
    top = FiniteTopology(n, _random_preorder(rng, n, top_density).rows)
    order = _random_preorder(rng, n, density)
    if repair:
        order = smallest_closed_preorder(top, order)
    return PreorderedSpace(top, order)


# ---------------------------------------------------------------- theorems


class _Facts:
    """Lazily evaluated property verdicts of one space."""

    def __init__(self, space: PreorderedSpace):
        self.space = space
        self._cache: dict[str, PropertyReport] = {}

    def __getitem__(self, key: str) -> PropertyReport:
        if key not in self._cache:
            self._cache[key] = _CHECKS[key](self.space)
        return self._cache[key]


def _completely_regular(space):
    from .separation import check_completely_regular

    rep = check_completely_regular(space, cross_check=False)
    return PropertyReport("completely-regular", True) if rep else PropertyReport("completely-regular", False, rep.witness)


_CHECKS: dict[str, Callable[[PreorderedSpace], PropertyReport]] = {
    "T1": is_T1_preordered,
    "T2": is_T2_preordered,
    "normal": is_normally_preordered,
    "convex": is_convex,
    "weak": is_weakly_convex,
    "local": is_locally_convex,
    "I-space": is_I_space,
    "C-space": is_C_space,
    "antisymmetric": is_antisymmetric,
    "normal-topology": is_normal_topology,
    "completely-regular": _completely_regular,
}


def _pointwise(space, f, hyp: Callable[[int], bool], kind_from: str | None, kind_to: str):
    for x in range(space.n):
        if hyp(x) and (kind_from is None or convexity_at(space, x, kind_from)):
            r = convexity_at(space, x, kind_to)
            if not r:
                return {"point": x, "conclusion": r.witness}
    return None


def _thm_hierarchy(space, f):
    for x in range(space.n):
        c, w, l = (bool(convexity_at(space, x, k)) for k in ("convex", "weak", "local"))
        if (c and not w) or (w and not l):
            return {"point": x, "convex": c, "weak": w, "local": l}
    g = (bool(f["convex"]), bool(f["weak"]), bool(f["local"]))
    if (g[0] and not g[1]) or (g[1] and not g[2]):
        return {"global": g}
    return None


def _implies(hyps: tuple[str, ...], concls: tuple[str, ...]):
    def run(space, f):
        if all(f[h] for h in hyps):
            for c in concls:
                if not f[c]:
                    return {"failed": c, "witness": f[c].witness}
        return None

    return run


def _thm_hulls_closed(space, f):
    if not f["T2"]:
        return None
    for k in range(1 << space.n):
        for d in (INC, DEC):
            if hull(space, k, d) != closed_hull(space, k, d):
                return {"K": k, "direction": d}
    return None


def _thm_local_to_convex(space, f):
    if not f["T2"]:
        return None
    return _pointwise(space, f, lambda x: True, "local", "convex")


def _thm_class_weak(space, f):
    if not f["T2"]:
        return None
    return _pointwise(space, f, lambda x: class_indistinguishable(space, x), None, "weak")


def _thm_nachbin(space, f):
    if f["T2"] and f["antisymmetric"]:
        if not space.top.is_discrete:
            return {"failed": "discrete"}
        if not f["convex"]:
            return {"failed": "convex", "witness": f["convex"].witness}
    return None


def _thm_qpm(space, f):
    if not f["completely-regular"]:
        return None
    from .qpmetric import check_admissible, check_strict, is_albert, synthesize_qpm

    p = synthesize_qpm(space)
    adm = check_admissible(space, p)
    if not adm:
        return {"failed": "admissible", "witness": adm.witness}
    if f["I-space"]:
        st = check_strict(space, p)
        if not st:
            return {"failed": "strict", "witness": st.witness}
    if f["antisymmetric"] and not is_albert(p):
        return {"failed": "albert"}
    return None


# name -> (description, check); a check returns None or a counterexample payload
THEOREMS: dict[str, tuple[str, Callable]] = {
    "compact-T2-normal": ("T2-preordered => normally preordered", _implies(("T2",), ("normal",))),
    "normal-T2-T1": ("normally preordered => T2 => T1", _implies(("normal",), ("T2", "T1"))),
    "convexity-hierarchy": ("convex => weakly convex => locally convex", _thm_hierarchy),
    "locally-convex-T2": ("locally convex and T2 => convex and normal", _implies(("local", "T2"), ("convex", "normal"))),
    "pointwise-local-convex": ("T2: locally convex at x => convex at x", _thm_local_to_convex),
    "locally-convex-I-space": ("locally convex I-space => convex", _implies(("local", "I-space"), ("convex",))),
    "kunzi": ("normal T1 antisymmetric C-space => convex",
              _implies(("normal-topology", "T1", "antisymmetric", "C-space"), ("convex",))),
    "class-indistinguishable-weak": ("T2: class-indistinguishable x => weakly convex at x", _thm_class_weak),
    "hulls-closed": ("T2 => monotone hulls are closed", _thm_hulls_closed),
    "nachbin": ("T2 and antisymmetric => discrete and convex", _thm_nachbin),
    "completely-regular": ("completely regular => convex and T2", _implies(("completely-regular",), ("convex", "T2"))),
    "qpm-chain": ("completely regular => admissible qpm; I-space => strict; order => Albert", _thm_qpm),
}


@dataclass(frozen=True)
class TheoremReport:
    results: dict[str, dict | None]

    @property
    def passed(self) -> bool:
        return all(v is None for v in self.results.values())

    def counterexamples(self) -> dict[str, dict]:
        return {k: v for k, v in self.results.items() if v is not None}

    def lines(self) -> list[str]:
        return [f"{k}: {'PASS' if v is None else 'COUNTEREXAMPLE ' + repr(v)}" for k, v in self.results.items()]


def theorem_suite(space: PreorderedSpace, names=None) -> TheoremReport:
    """Evaluate registered implications; ``None`` entries mean PASS."""
    names = list(THEOREMS) if names is None else list(names)
    for name in names:
        if name not in THEOREMS:
            raise UnknownPredicate(f"unknown theorem {name!r}")
    facts = _Facts(space)
    return TheoremReport({name: THEOREMS[name][1](space, facts) for name in names})


# ---------------------------------------------------------------- search


def _and_not(a: str, b: str):
    def pred(space) -> bool:
        return bool(_CHECKS[a](space)) and not _CHECKS[b](space)

    return pred


PREDICATES: dict[str, Callable[[PreorderedSpace], bool]] = {
    "normal-not-convex": _and_not("normal", "convex"),
    "T2-not-locally-convex": _and_not("T2", "local"),
    "I-space-not-C-space": _and_not("I-space", "C-space"),
    "convex-not-I-space": _and_not("convex", "I-space"),
    "T1-not-normal": _and_not("T1", "normal"),
}


@dataclass(frozen=True)
class SearchConfig:
    predicate: str
    n_min: int = 1
    n_max: int = 2
    mode: str = "exhaustive"
    seed: int = 0
    cap: int = 100_000
    time_budget: float | None = None
    density: float = 0.3

    def __post_init__(self):
        if self.predicate not in PREDICATES:
            raise UnknownPredicate(f"unknown predicate {self.predicate!r}; known: {sorted(PREDICATES)}")
        if self.mode not in ("exhaustive", "random"):
            raise BadParameters("mode must be 'exhaustive' or 'random'")
        if not 1 <= self.n_min <= self.n_max:
            raise BadParameters("need 1 <= n_min <= n_max")
        if self.mode == "exhaustive" and self.n_max > MAX_ENUM:
            raise InstanceTooLarge(f"exhaustive mode is limited to n <= {MAX_ENUM}")


@dataclass(frozen=True)
class SearchResult:
    predicate: str
    scanned: int
    witness: PreorderedSpace | None = None
    reports: tuple[PropertyReport, ...] = field(default=())
    n: int | None = None
    timed_out: bool = False

    @property
    def found(self) -> bool:
        return self.witness is not None


def counterexample_search(config: SearchConfig) -> SearchResult:
    """First instance satisfying the predicate, or an exhaustion certificate."""
    pred = PREDICATES[config.predicate]
    start = time.perf_counter()
    scanned = 0

    def stream():
        if config.mode == "exhaustive":
            for n in range(config.n_min, config.n_max + 1):
                for space in enumerate_spaces(n):
                    yield n, space
        else:
            rng = random.Random(config.seed)
            while True:
                n = rng.randint(config.n_min, config.n_max)
                yield n, random_space(rng.getrandbits(32), n, config.density, repair=rng.random() < 0.5)

    for n, space in stream():
        if scanned >= config.cap:
            break
        if config.time_budget is not None and time.perf_counter() - start > config.time_budget:
            return SearchResult(config.predicate, scanned, timed_out=True)
        scanned += 1
        if pred(space):
            return SearchResult(config.predicate, scanned, space, tuple(property_battery(space)), n)
    return SearchResult(config.predicate, scanned)


# ---------------------------------------------------------------- example


@dataclass(frozen=True)
class Ex11Diagnostic:
    n: int
    eps: Fraction
    ball_size: int
    hull_size: int
    hull_min: Fraction
    hull_max: Fraction
    diameter: Fraction
    lower_half: int  # hull points in (0, 1/2]
    upper_half: int


def _up_mask(n: int, a: int, k: np.ndarray) -> np.ndarray:
    # i(a/n) on the grid k/n
    if 2 * a <= n:
        return (a <= k) & (k <= n - a)
    if a < n:
        return k == a
    return np.ones_like(k, dtype=bool)


def _down_mask(n: int, a: int, k: np.ndarray) -> np.ndarray:
    # d(a/n) on the grid k/n
    if 2 * a <= n:
        return (k <= a) | (k == n)
    return (k <= n - a) | (k == a) | (k == n)


def example_1_1(n: int, eps) -> Ex11Diagnostic:
    """Convex hull of the ``eps``-ball around 1 in ``{k/n : 1 <= k <= n}``.

    The order is given by its increasing and decreasing hulls on ``(0, 1]``;
    the hull of a small ball around 1 reaches down to the first grid point.
    """
    eps = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
    if n < 4:
        raise BadParameters("n must be >= 4")
    if not 0 < eps < Fraction(1, 2):
        raise BadParameters("eps must lie in (0, 1/2)")
    k = np.arange(1, n + 1)
    ball = [a for a in range(1, n + 1) if (n - a) < eps * n]
    inc = np.zeros(n, dtype=bool)
    dec = np.zeros(n, dtype=bool)
    for a in ball:
        inc |= _up_mask(n, a, k)
        dec |= _down_mask(n, a, k)
    h = np.flatnonzero(inc & dec) + 1
    lo, hi = Fraction(int(h.min()), n), Fraction(int(h.max()), n)
    return Ex11Diagnostic(
        n=n,
        eps=eps,
        ball_size=len(ball),
        hull_size=int(len(h)),
        hull_min=lo,
        hull_max=hi,
        diameter=hi - lo,
        lower_half=int((2 * h <= n).sum()),
        upper_half=int((2 * h > n).sum()),
    )
