import random

import pytest

from preorderlab import FiniteTopology, InstanceTooLarge, NotASubrelation, Relation, SizeMismatch, product_closure
from preorderlab.closure import (
    check_intermediate_points,
    clopen_down_sets,
    is_generated_by,
    isotone_functions_to_chain,
    isotone_sets_coincide,
    smallest_closed_preorder,
)
from preorderlab.core import PreorderedSpace
from preorderlab.lab import enumerate_spaces, preorders

import oracles


def _random_relation(rng, n, density):
    return Relation(n, tuple(sum(1 << y for y in range(n) if rng.random() < density) for _ in range(n)))


def test_discrete_topology_gives_transitive_closure():
    top = FiniteTopology.discrete(3)
    r = Relation.from_pairs(3, [(0, 1), (1, 2)])
    assert smallest_closed_preorder(top, r) == r.reflexive_transitive_closure()


def test_sierpinski_diagonal(s2):
    assert smallest_closed_preorder(s2.top, Relation.identity(2)) == Relation.full_relation(2)


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        smallest_closed_preorder(FiniteTopology.discrete(2), Relation.identity(3))


def test_generated_examples(ch3, p2):
    for sp in (ch3, p2):
        assert is_generated_by(sp, sp.order)
    assert is_generated_by(p2, Relation.identity(2))
    assert not is_generated_by(ch3, Relation.identity(3))
    with pytest.raises(NotASubrelation):
        is_generated_by(ch3, Relation.from_pairs(3, [(2, 0)]))


def test_closure_operator_laws():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 4)
        top = FiniteTopology(n, rng.choice(preorders(n)).rows)
        r = _random_relation(rng, n, rng.random() * 0.5)
        s = _random_relation(rng, n, 0.2).union(r)
        c = smallest_closed_preorder(top, r)
        assert r.issubset(c)
        assert smallest_closed_preorder(top, c) == c
        assert c.issubset(smallest_closed_preorder(top, s))
        assert c.is_reflexive() and c.is_transitive() and product_closure(top, c) == c
        assert smallest_closed_preorder(top, r, closure_first=True) == c


def test_minimality_against_intersection_oracle():
    rng = random.Random(5)
    for _ in range(500):
        n = rng.randint(1, 4)
        top = FiniteTopology(n, rng.choice(preorders(n)).rows)
        r = _random_relation(rng, n, rng.random() * 0.6)
        assert smallest_closed_preorder(top, r).rows == oracles.smallest_closed_preorder(top, r.rows)


def test_chain_functions_examples(ch3, p2):
    assert isotone_functions_to_chain(ch3, None, 2) == {(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)}
    assert isotone_functions_to_chain(p2, None, 2) == {(0, 0), (1, 1)}
    assert isotone_functions_to_chain(ch3, None, 1) == {(0, 0, 0)}
    with pytest.raises(ValueError):
        isotone_functions_to_chain(ch3, None, 0)


def test_chain_functions_against_brute_force():
    for n in (1, 2, 3):
        for sp in enumerate_spaces(n):
            for levels in (2, 3):
                assert isotone_functions_to_chain(sp, None, levels) == oracles.chain_functions(sp, sp.order.rows, levels)


def test_chain_functions_cap(ch3):
    with pytest.raises(InstanceTooLarge):
        isotone_functions_to_chain(ch3, None, 4, cap=3)
    with pytest.raises(InstanceTooLarge):
        clopen_down_sets(ch3, cap=4)


def test_coincidence_examples(ch3, p2):
    assert isotone_sets_coincide(p2, Relation.identity(2), 3)
    assert isotone_sets_coincide(ch3, ch3.order)
    # not generated: the diagonal admits non-isotone functions of the chain
    assert not isotone_sets_coincide(ch3, Relation.identity(3), 2)


def test_coincidence_whenever_generated():
    rng = random.Random(9)
    for _ in range(400):
        n = rng.randint(1, 4)
        top = FiniteTopology(n, rng.choice(preorders(n)).rows)
        r = _random_relation(rng, n, rng.random() * 0.5)
        space = PreorderedSpace(top, smallest_closed_preorder(top, r))
        assert is_generated_by(space, r)
        assert isotone_sets_coincide(space, r, 4)


def test_intermediate_points():
    rng = random.Random(13)
    for _ in range(300):
        n = rng.randint(1, 4)
        top = FiniteTopology(n, rng.choice(preorders(n)).rows)
        r = _random_relation(rng, n, rng.random() * 0.5)
        space = PreorderedSpace(top, smallest_closed_preorder(top, r))
        assert check_intermediate_points(space, r)


def test_intermediate_points_can_fail_when_not_generated(ch3):
    # the diagonal does not generate the chain; K = {0} has no point between 0 and 2
    rep = check_intermediate_points(ch3, Relation.identity(3))
    assert not rep and rep.witness["x"] == 0
