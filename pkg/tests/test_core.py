import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preorderlab import (
    DEC,
    INC,
    FiniteTopology,
    InvalidTopology,
    PointOutOfRange,
    Relation,
    SizeMismatch,
    closed_hull,
    closure,
    convex_hull,
    hull,
    interior,
    is_c_set,
    is_convex_set,
    make_space,
    product_closure,
)
from preorderlab.lab import enumerate_spaces, random_space

import oracles


def test_make_space_chain(ch3):
    assert ch3.top.is_discrete
    assert ch3.up == (0b111, 0b110, 0b100)
    assert ch3.down == (0b001, 0b011, 0b111)


def test_make_space_p2(p2):
    assert p2.top.minopen == (0b11, 0b10)
    assert p2.up == (0b11, 0b11)


def test_invalid_topology():
    with pytest.raises(InvalidTopology):
        make_space([[0], [0]])


def test_minopen_must_be_nested():
    # 1 in M(0) but M(1) not inside M(0)
    with pytest.raises(InvalidTopology):
        FiniteTopology(3, (0b011, 0b110, 0b100))


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        make_space([[0], [1]], n=3)
    with pytest.raises(SizeMismatch):
        closure(make_space([[0], [1]]), 0b100)


def test_closure_examples(ch3, p2):
    assert closure(ch3, 0b010) == 0b010
    assert closure(p2, 0b10) == 0b11
    assert closure(p2, 0b01) == 0b01
    assert interior(p2, 0b01) == 0
    assert interior(p2, 0b10) == 0b10


def test_hull_examples(ch3, p2):
    assert hull(ch3, 0b010, INC) == 0b110
    assert hull(p2, 0b10, DEC) == 0b11
    assert hull(ch3, 0, INC) == 0
    with pytest.raises(ValueError):
        hull(ch3, 1, "sideways")


def test_closed_hull_examples(ch3, p2, s2):
    assert closed_hull(ch3, 0b010, INC) == 0b110
    assert closed_hull(p2, 0b01, INC) == 0b11
    assert closed_hull(s2, 0b10, INC) == 0b11


def test_convex_hull_examples(ch3, p2):
    assert convex_hull(ch3, 0b101) == 0b111
    assert convex_hull(ch3, 0b010) == 0b010
    assert convex_hull(p2, 0b10) == 0b11


def test_convex_and_c_set_examples(ch3, p2):
    assert is_convex_set(ch3, 0b011) and is_c_set(ch3, 0b011)
    assert not is_convex_set(p2, 0b10)
    for sp in (ch3, p2):
        assert is_convex_set(sp, sp.full) and is_c_set(sp, sp.full)


def test_product_closure_examples(ch3, s2):
    diag = Relation.identity(3)
    assert product_closure(ch3, diag) == diag
    assert product_closure(s2, Relation.identity(2)) == Relation.full_relation(2)
    assert product_closure(s2, Relation.full_relation(2)) == Relation.full_relation(2)


def test_point_out_of_range(ch3):
    with pytest.raises(PointOutOfRange):
        ch3.point(3)
    with pytest.raises(PointOutOfRange):
        ch3.index("nope")


def test_closure_matches_oracle_exhaustive():
    for n in (1, 2, 3):
        for space in enumerate_spaces(n):
            if space.order.rows != tuple(1 << x for x in range(n)):
                continue  # topology only matters here
            for s in range(1 << n):
                assert closure(space, s) == oracles.closure(space.top, s)


def test_open_sets_match_oracle():
    for n in (1, 2, 3):
        for space in enumerate_spaces(n):
            assert sorted(space.top.open_sets()) == sorted(oracles.opens(space.top))


def test_from_open_sets_round_trip():
    for space in itertools.islice(enumerate_spaces(3), 0, 841, 29):
        top = space.top
        assert FiniteTopology.from_open_sets(3, top.open_sets()) == top


def test_relation_basics():
    r = Relation.from_pairs(3, [(0, 1), (1, 2)])
    assert not r.is_transitive()
    p = r.reflexive_transitive_closure()
    assert (0, 2) in p and p.is_reflexive() and p.is_transitive()
    assert p.transpose().rows == p.cols
    assert r.issubset(p)
    assert p.image(0b001) == 0b111
    assert p.preimage(0b100) == 0b111


spaces_st = st.tuples(st.integers(0, 10_000), st.integers(1, 6), st.floats(0, 1)).map(
    lambda t: random_space(t[0], t[1], t[2], repair=False)
)


@settings(max_examples=150, deadline=None)
@given(spaces_st, st.data())
def test_hull_closure_algebra(space, data):
    n = space.n
    a = data.draw(st.integers(0, (1 << n) - 1))
    b = data.draw(st.integers(0, (1 << n) - 1))
    for d in (INC, DEC):
        assert hull(space, hull(space, a, d), d) == hull(space, a, d)
        assert hull(space, a | b, d) == hull(space, a, d) | hull(space, b, d)
        D = closed_hull(space, a, d)
        assert closure(space, D) == D and hull(space, D, d) == D and D & a == a
    c = closure(space, a)
    assert closure(space, c) == c and c & a == a
    if a & b == a:
        assert closure(space, a) & closure(space, b) == closure(space, a)


@settings(max_examples=60, deadline=None)
@given(spaces_st, st.data())
def test_convex_hull_is_least_convex_superset(space, data):
    n = space.n
    s = data.draw(st.integers(0, (1 << n) - 1))
    h = convex_hull(space, s)
    assert is_convex_set(space, h) and h & s == s
    for c in range(1 << n):
        if c & s == s and oracles.is_convex_subset(space, c):
            assert h & ~c == 0


@settings(max_examples=100, deadline=None)
@given(spaces_st, st.data())
def test_product_closure_properties(space, data):
    n = space.n
    rows = tuple(data.draw(st.integers(0, (1 << n) - 1)) for _ in range(n))
    r = Relation(n, rows)
    c = product_closure(space, r)
    assert r.issubset(c)
    assert product_closure(space, c) == c
    # transposition commutes with closure when both factors carry the same topology
    assert product_closure(space, r.transpose()) == c.transpose()


def test_closure_function_not_shadowed_by_submodule():
    import preorderlab
    import preorderlab.closure  # noqa: F401

    assert callable(preorderlab.closure)
