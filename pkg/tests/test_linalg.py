import numpy as np
import pytest

from src.errors import UsageError
from src.ffield import field
from src.linalg import (
    coordinates,
    decode_points,
    encode_points,
    intersect,
    inverse,
    nullspace,
    rank,
    solve_affine,
    span_basis,
    span_points,
)

F5 = field(5)


def test_rank_and_nullspace():
    A = np.array([[1, 2, 3], [2, 4, 0]])
    assert rank(F5, A) == 2
    ns = nullspace(F5, A)
    assert ns.shape == (1, 3)
    assert not F5.matmul(A, ns.T).any()
    assert rank(F5, [[1, 2], [2, 4]]) == 1


def test_solve_affine_takes_free_variables_zero():
    x, kernel = solve_affine(F5, [[1, 1]], [3])
    assert x.tolist() == [3, 0]
    assert kernel.tolist() == [[4, 1]]
    none, _ = solve_affine(F5, [[1, 1], [2, 2]], [1, 3])
    assert none is None


def test_intersection_of_coordinate_planes():
    U = [[1, 0, 0], [0, 1, 0]]
    V = [[0, 1, 0], [0, 0, 1]]
    assert intersect(F5, U, V).tolist() == [[0, 1, 0]]


def test_span_basis_is_canonical():
    a = span_basis(F5, [[1, 2, 0], [0, 0, 1]])
    b = span_basis(F5, [[2, 4, 3], [3, 1, 1]])
    assert np.array_equal(a, b)


def test_coordinates():
    basis = np.array([[1, 1, 0], [0, 1, 1]])
    c = coordinates(F5, basis, F5.add(F5.mul(2, basis[0]), F5.mul(3, basis[1])))
    assert c.tolist() == [2, 3]
    assert coordinates(F5, basis, [1, 0, 0]) is None


def test_inverse_and_singular():
    A = np.array([[1, 2], [3, 4]])
    assert np.array_equal(F5.matmul(A, inverse(F5, A)), np.eye(2, dtype=np.int64))
    with pytest.raises(UsageError, match="singular"):
        inverse(F5, [[1, 2], [2, 4]])


def test_point_encoding():
    assert int(encode_points(5, [1, 2, 3])) == 1 + 2 * 5 + 3 * 25
    assert decode_points(5, 86, 3).tolist() == [1, 2, 3]
    pts = span_points(field(3), [[1, 2]])
    assert sorted(map(tuple, pts.tolist())) == [(0, 0), (1, 2), (2, 1)]
