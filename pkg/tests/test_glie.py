import json

import numpy as np
import pytest

from src.errors import NoNilpotencyOracle, UsageError
from src.glie import GradedLieAlgebra


def test_builtins_validate(sl2_5, gl2z2_5):
    sl2_5[0].validate()
    gl2z2_5[0].validate()


def test_sl2_relations(sl2_5):
    A = sl2_5[0]
    e, h, f = (A.basis_vector(0, a) for a in range(3))
    assert A.bracket_coords(0, 0, h, e).tolist() == [2, 0, 0]
    assert A.bracket_coords(0, 0, e, f).tolist() == [0, 1, 0]
    assert A.bracket_coords(0, 0, h, f).tolist() == [0, 0, 3]
    assert not A.bracket_coords(0, 0, h, h).any()
    assert A.form(0, e, f) == 1
    assert A.form(0, h, h) == 2


def test_eta_round_trip(gl2z2_5):
    A = gl2z2_5[0]
    for i in range(A.n):
        pts = A.piece_points(i)
        assert np.array_equal(A.eta_inv(i, A.eta(i, pts)), pts)


def test_point_handles(sl2_5):
    A = sl2_5[0]
    x = A.point(0, [1, 0, 0])
    y = A.point(0, [0, 0, 1])
    assert A.bracket(x, y).coords == (0, 1, 0)
    assert A.point_at(0, x.index) == x
    assert A.is_nilpotent(x)
    assert not A.is_nilpotent(A.point(0, [0, 1, 0]))


def test_nilpotent_count(sl2_5):
    A = sl2_5[0]
    assert int(A.nilpotent_mask(0, A.piece_points(0)).sum()) == 25


def test_json_round_trip_keeps_structure(gl2z2_5):
    A = gl2z2_5[0]
    B = GradedLieAlgebra.from_json(json.loads(json.dumps(A.to_json())))
    assert B.dims == A.dims
    for key in A.C:
        assert np.array_equal(A.C[key], B.C[key])
    for i in A.G:
        assert np.array_equal(A.G[i], B.G[i])
    B.validate()


def test_without_realisation_there_is_no_oracle(sl2_5):
    obj = sl2_5[0].to_json()
    obj.pop("realisation")
    B = GradedLieAlgebra.from_json(obj)
    B.validate()
    with pytest.raises(NoNilpotencyOracle, match="no nilpotency oracle"):
        B.nilpotent_mask(0, [[1, 0, 0]])


def test_malformed_description():
    with pytest.raises(UsageError):
        GradedLieAlgebra.from_json({"p": 5})
