import numpy as np
import pytest

from src.builders import BuilderSpec, build_algebra, build_builtin, builtin_spec, split_q
from src.errors import UsageError


def test_sl2_basis_is_e_h_f(sl2_5):
    A = sl2_5[0]
    assert A.dims == {0: 3}
    assert A.to_matrix(0, [1, 0, 0]).tolist() == [[0, 1], [0, 0]]
    assert A.to_matrix(0, [0, 1, 0]).tolist() == [[1, 0], [0, 4]]
    assert A.to_matrix(0, [0, 0, 1]).tolist() == [[0, 0], [1, 0]]


def test_graded_gl2(gl2z2_5):
    A, G = gl2z2_5
    assert A.dims == {0: 2, 1: 2}
    assert A.to_matrix(1, [1, 0]).tolist() == [[0, 1], [0, 0]]
    assert G.order == 16


def test_cyclic_grading_of_gl3():
    A, G = build_builtin("gl3-z3", 11)
    assert A.dims == {0: 3, 1: 3, 2: 3}
    assert G.order == 1000


def test_builtin_labels():
    spec = builtin_spec("gl2", 9)
    assert (spec.p, spec.k, spec.q) == (3, 2, 9)
    assert spec.label == "gl2(F_9)"
    assert split_q(7) == (7, 1)


@pytest.mark.parametrize("q", [1, 6, 12])
def test_split_q_rejects(q):
    with pytest.raises(UsageError, match="not a prime power"):
        split_q(q)


def test_rejected_descriptions():
    with pytest.raises(UsageError):
        builtin_spec("so3", 5)
    with pytest.raises(UsageError):
        build_algebra(BuilderSpec("sp", 2, 5))
    with pytest.raises(UsageError):
        build_algebra(BuilderSpec("gl", 3, 5, m=3, weights=(0, 1)))
    with pytest.raises(UsageError, match="degenerate"):
        build_algebra(BuilderSpec("sl", 3, 3))


def test_trace_form():
    A = build_algebra(BuilderSpec("gl", 2, 5))
    assert np.array_equal(A.G[0], [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    A.validate()
