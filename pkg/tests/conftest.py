import pytest

from preorderlab import make_space


@pytest.fixture
def ch3():
    return make_space([[0], [1], [2]], [(0, 1), (1, 2)])


@pytest.fixture
def p2():
    # a = 0, b = 1; Sierpinski topology with the total preorder
    return make_space([[0, 1], [1]], [(0, 1), (1, 0)], names=["a", "b"])


@pytest.fixture
def s2():
    return make_space([[0, 1], [1]], [], names=["a", "b"])
