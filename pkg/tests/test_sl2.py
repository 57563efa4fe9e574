import numpy as np
import pytest

from src.builders import BuilderSpec, build_algebra
from src.errors import JMFailure, WindowError
from src.sl2 import (
    adapted_grading,
    all_triples_count,
    check_triple_independence,
    check_unipotent_radical,
    complete_triple,
    graded_slodowy_slice,
    jordan_type,
    sigma_slice,
    triples_through,
    weighted_characteristic,
)


def test_regular_triple_in_gl3():
    A = build_algebra(BuilderSpec("gl", 3, 11))
    E = np.zeros((3, 3), dtype=np.int64)
    E[0, 1] = E[1, 2] = 1
    t = complete_triple(A, 0, A.from_matrix(0, E))
    assert A.to_matrix(0, t.h).tolist() == [[2, 0, 0], [0, 0, 0], [0, 0, 9]]
    assert A.to_matrix(0, t.f).tolist() == [[0, 0, 0], [2, 0, 0], [0, 2, 0]]
    assert weighted_characteristic(t) == [2, 0, -2]


def test_triple_counts_match_unipotent_centraliser(sl2_5):
    A = sl2_5[0]
    assert all_triples_count(A, 0, [1, 0, 0]) == (5, 5)
    A7 = build_algebra(BuilderSpec("sl", 2, 7))
    assert all_triples_count(A7, 0, [1, 0, 0]) == (7, 7)


def test_zero_element_gives_zero_triple(sl2_5):
    A = sl2_5[0]
    triples = list(triples_through(A, 0, [0, 0, 0]))
    assert len(triples) == 1
    assert triples[0].is_zero
    assert triples[0].h == (0, 0, 0)


def test_semisimple_element_has_no_triple(sl2_5):
    with pytest.raises(JMFailure):
        complete_triple(sl2_5[0], 0, [0, 1, 0])


def test_adapted_grading_of_regular_sl2(sl2_5):
    A = sl2_5[0]
    t = complete_triple(A, 0, [1, 0, 0])
    g = adapted_grading(t)
    assert g.source == "defining"
    assert g.weights(0) == {-2: 1, 0: 1, 2: 1}
    g.check_brackets()
    check_unipotent_radical(g)
    assert weighted_characteristic(t) == [1, -1]
    assert graded_slodowy_slice(t, g).dim == 1


def test_small_characteristic_still_works_for_gl2(gl2_3):
    A = gl2_3[0]
    t = complete_triple(A, 0, [0, 1, 0, 0])
    assert adapted_grading(t).source == "defining"


def test_window_too_small_for_regular_gl3_mod_3():
    A = build_algebra(BuilderSpec("gl", 3, 3))
    E = np.zeros((3, 3), dtype=np.int64)
    E[0, 1] = E[1, 2] = 1
    with pytest.raises((WindowError, JMFailure)):
        adapted_grading(complete_triple(A, 0, A.from_matrix(0, E)))


def test_graded_triple_in_odd_degree(gl2z2_5):
    A = gl2z2_5[0]
    t = complete_triple(A, 1, [1, 0])
    t.check()
    assert t.degree == 1
    adapted_grading(t).check_brackets()


def test_sigma_slice_of_regular_nilpotent(sl2_5):
    A = sl2_5[0]
    alpha = A.dual_point(0, A.eta_inv(0, np.array([1, 0, 0])))
    sl, t, _ = sigma_slice(alpha)
    assert sl.dim == 2
    assert sl.contains(list(alpha.coords))
    assert t.e == (1, 0, 0)


def test_sigma_slice_does_not_depend_on_the_triple(sl2_5):
    A, group = sl2_5
    alpha = A.dual_point(0, A.eta_inv(0, np.array([1, 0, 0])))
    assert len(list(triples_through(A, 0, np.array([1, 0, 0])))) == 5
    assert check_triple_independence(alpha, group) == 5


def test_sigma_slices_on_the_odd_piece(gl2z2_5_setting):
    s = gl2z2_5_setting
    counts = [
        check_triple_independence(s.dual_point(1, orbit.representative), s.group)
        for orbit in s.nilpotent_coadjoint_orbits(1)
        if orbit.representative
    ]
    assert counts == [1, 1]


def test_jordan_type():
    from src.ffield import field

    X = np.zeros((4, 4), dtype=np.int64)
    X[0, 1] = X[1, 2] = 1
    assert jordan_type(field(5), X) == (3, 1)
