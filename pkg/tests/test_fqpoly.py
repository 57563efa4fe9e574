import numpy as np

from src import fqpoly
from src.ffield import field

F3 = field(3)
F5 = field(5)


def test_charpoly_of_a_jordan_block():
    X = np.array([[1, 1], [0, 1]])
    assert fqpoly.to_list(fqpoly.charpoly(F3, X)) == [1, 1, 1]  # (t - 1)^2


def test_charpoly_annihilates_the_matrix():
    rng = np.random.default_rng(3)
    X = rng.integers(0, 5, size=(4, 4))
    assert not fqpoly.eval_matrix(F5, fqpoly.charpoly(F5, X), X).any()


def test_radical_in_characteristic_p():
    assert fqpoly.to_list(fqpoly.radical(F3, fqpoly.poly([1, 1, 1]))) == [2, 1]
    assert fqpoly.to_list(fqpoly.radical(F3, fqpoly.poly([2, 0, 0, 1]))) == [2, 1]


def test_factors_split_and_irreducible():
    factors = fqpoly.irreducible_factors(F5, fqpoly.poly([1, 0, 1]))
    assert [fqpoly.to_list(g) for g in factors] == [[2, 1], [3, 1]]
    factors = fqpoly.irreducible_factors(F3, fqpoly.poly([1, 0, 1]))
    assert [fqpoly.to_list(g) for g in factors] == [[1, 0, 1]]


def test_division():
    q, r = fqpoly.divmod_(F5, fqpoly.poly([4, 0, 1]), fqpoly.poly([4, 1]))
    assert fqpoly.to_list(q) == [1, 1]
    assert r.size == 0
