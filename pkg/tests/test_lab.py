import random
from fractions import Fraction

import pytest

from preorderlab import BadParameters, InstanceTooLarge, Relation, UnknownPredicate
from preorderlab.closure import smallest_closed_preorder
from preorderlab.lab import (
    PREDICATES,
    THEOREMS,
    SearchConfig,
    counterexample_search,
    enumerate_spaces,
    example_1_1,
    preorders,
    random_space,
    theorem_suite,
)
from preorderlab.props import is_antisymmetric, is_convex, is_T2_preordered

import oracles


def test_preorder_counts():
    assert [len(preorders(n)) for n in (1, 2, 3, 4)] == [1, 4, 29, 355]
    with pytest.raises(InstanceTooLarge):
        preorders(5)


def test_preorders_against_brute_force():
    for n in (1, 2, 3):
        assert {p.rows for p in preorders(n)} == {r for r in oracles._all_preorders(n)}


def test_enumeration_counts():
    assert len(list(enumerate_spaces(1))) == 1
    assert len(list(enumerate_spaces(2))) == 16
    assert len(list(enumerate_spaces(3))) == 841
    with pytest.raises(InstanceTooLarge):
        next(enumerate_spaces(5))


def test_closed_only_subset():
    for n in (1, 2, 3):
        everything = list(enumerate_spaces(n))
        closed = list(enumerate_spaces(n, closed_only=True))
        assert len(closed) == sum(oracles.is_closed_preorder(s.top, s.order.rows) for s in everything)
        assert all(is_T2_preordered(s) for s in closed)
    assert len(list(enumerate_spaces(2, closed_only=True))) == 7


def test_random_space_deterministic():
    a, b = random_space(42, 4), random_space(42, 4)
    assert a.top == b.top and a.order == b.order
    assert any(random_space(s, 4).order != a.order or random_space(s, 4).top != a.top for s in range(5))


def test_random_space_is_repaired():
    for seed in range(50):
        s = random_space(seed, 5, 0.4)
        assert is_T2_preordered(s)


def test_random_space_density_extremes():
    s = random_space(3, 4, 0.0)
    assert s.order == smallest_closed_preorder(s.top, Relation.identity(4))
    raw = random_space(3, 4, 0.0, repair=False)
    assert raw.order == Relation.identity(4)
    full = random_space(3, 4, 1.0)
    assert all(r == 0b1111 for r in full.order.rows)
    with pytest.raises(BadParameters):
        random_space(0, 0)


def test_theorem_suite_examples(ch3, p2):
    rep = theorem_suite(ch3)
    assert rep.passed and len(rep.lines()) == len(THEOREMS)
    assert all(line.endswith("PASS") for line in rep.lines())
    assert theorem_suite(p2).passed
    assert theorem_suite(p2, ["nachbin"]).results == {"nachbin": None}
    with pytest.raises(UnknownPredicate):
        theorem_suite(ch3, ["nope"])


def test_theorem_suite_closed_n3():
    for s in enumerate_spaces(3, closed_only=True):
        assert theorem_suite(s).passed


def test_antisymmetry_dichotomy():
    for n in (1, 2, 3, 4):
        for s in enumerate_spaces(n, closed_only=True):
            if is_antisymmetric(s):
                assert s.top.is_discrete and is_convex(s)


def test_search_p2(p2):
    res = counterexample_search(SearchConfig("normal-not-convex", 1, 2))
    assert res.found and res.n == 2
    # P2 with its points swapped comes first in the enumeration order
    w = res.witness
    assert p2.top.minopen == (0b11, 0b10) and w.top.minopen == (0b01, 0b11) and w.order == p2.order
    assert PREDICATES["normal-not-convex"](w)
    names = {r.name: r.verdict for r in res.reports}
    assert names["normally-preordered"] and not names["convex"]


def test_search_exhausted():
    res = counterexample_search(SearchConfig("T2-not-locally-convex", 1, 1))
    assert not res.found and res.scanned == 1


def test_exhaustion_count_matches_enumerator():
    res = counterexample_search(SearchConfig("T1-not-normal", 1, 3))
    assert not res.found and res.scanned == 1 + 16 + 841


def test_search_errors():
    with pytest.raises(UnknownPredicate):
        SearchConfig("nope")
    with pytest.raises(BadParameters):
        SearchConfig("normal-not-convex", mode="psychic")
    with pytest.raises(BadParameters):
        SearchConfig("normal-not-convex", 3, 2)
    with pytest.raises(InstanceTooLarge):
        SearchConfig("normal-not-convex", 1, 5)


def test_search_random_reproducible():
    for pred in PREDICATES:
        cfg = SearchConfig(pred, 2, 6, mode="random", seed=17, cap=300)
        a, b = counterexample_search(cfg), counterexample_search(cfg)
        assert a.scanned == b.scanned and a.found == b.found
        if a.found:
            assert a.witness.top == b.witness.top and a.witness.order == b.witness.order
            assert PREDICATES[pred](a.witness)


def test_search_cap_and_budget():
    res = counterexample_search(SearchConfig("T1-not-normal", 2, 6, mode="random", cap=25))
    assert res.scanned == 25 and not res.found
    res = counterexample_search(SearchConfig("T1-not-normal", 2, 6, mode="random", cap=10**9, time_budget=0.05))
    assert res.timed_out


def test_ex11_examples():
    d = example_1_1(10_000, 0.01)
    assert d.diameter == 1 - Fraction(1, 10_000) and d.hull_min == Fraction(1, 10_000)
    assert example_1_1(100, 0.4).diameter == Fraction(99, 100)
    assert d.lower_half > 0
    for bad in (0.5, 0.7, 0, -0.1):
        with pytest.raises(BadParameters):
            example_1_1(100, bad)
    with pytest.raises(BadParameters):
        example_1_1(3, 0.1)


def test_ex11_eps_independence():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randint(4, 400)
        eps = Fraction(rng.randint(2, n // 2 - 1 if n > 5 else 2), n) if n > 5 else Fraction(1, 3)
        if not Fraction(1, n) < eps < Fraction(1, 2):
            continue
        assert example_1_1(n, eps).diameter == 1 - Fraction(1, n)
