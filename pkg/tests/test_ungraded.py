import numpy as np
import pytest

from src.builders import BuilderSpec, build_algebra
from src.errors import UsageError
from src.ungraded import (
    conjugate,
    dominance_leq,
    generic_check,
    geometric_cone_typeA,
    induced_dimension_matches,
    jordan,
    levi_datum,
    n_map,
    nmap_row,
    orbit_dimension,
    partitions,
    theta_x,
)

GL3_5 = build_algebra(BuilderSpec("gl", 3, 5))
GL2_5 = build_algebra(BuilderSpec("gl", 2, 5))


def test_partition_combinatorics():
    assert len(partitions(4)) == 5
    assert partitions(3) == ((3,), (2, 1), (1, 1, 1))
    assert conjugate((3, 1)) == (2, 1, 1)
    assert dominance_leq((2, 1, 1), (2, 2))
    assert not dominance_leq((3, 1), (2, 2))
    assert not dominance_leq((2, 2), (3,))
    assert orbit_dimension((2, 1)) == 4
    assert orbit_dimension((3,)) == 6
    assert orbit_dimension((1, 1, 1)) == 0


def test_jordan_of_a_unipotent_block(gl2_3):
    A = gl2_3[0]
    xs, xn = jordan(A, [1, 1, 0, 1])
    assert xs.tolist() == [1, 0, 0, 1]
    assert xn.tolist() == [0, 1, 0, 0]


def test_jordan_holds_on_every_point(gl2_3):
    A = gl2_3[0]
    for x in A.piece_points(0):
        jordan(A, x)


def test_n_map_of_mixed_element():
    x = GL3_5.from_matrix(0, [[1, 1, 0], [0, 1, 0], [0, 0, 0]])
    L = levi_datum(GL3_5, x)
    assert L.composition == (2, 1)
    assert n_map(GL3_5, x) == (3,)
    assert induced_dimension_matches(L)


def test_n_map_of_nilpotent_and_semisimple():
    e = GL3_5.from_matrix(0, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert n_map(GL3_5, e) == (2, 1)
    assert geometric_cone_typeA(GL3_5, e) == [(2, 1), (1, 1, 1)]
    assert n_map(GL2_5, [0, 0, 0, 1]) == (2,)
    assert n_map(GL2_5, [0, 0, 0, 0]) == (1, 1)


def test_elliptic_element_is_regular(gl2_3):
    A = gl2_3[0]
    x = [0, 1, 2, 0]  # charpoly t^2 + 1, irreducible over F_3
    L = levi_datum(A, x)
    assert L.composition == (1, 1)
    assert L.blocks[0].eigen_degree == 2
    assert n_map(A, x) == (2,)


def test_theta_of_nilpotents(sl2_5):
    A = sl2_5[0]
    assert len(theta_x(A, [1, 0, 0])) == 5
    zero = theta_x(A, [0, 0, 0])
    assert len(zero) == 1 and zero[0].is_zero


def test_type_a_only(gl2z2_5):
    with pytest.raises(UsageError):
        n_map(gl2z2_5[0], [0, 0])


def test_nmap_rows(gl2_3_setting):
    s = gl2_3_setting
    for orbit in s.coadjoint_orbits(0):
        row = nmap_row(s, orbit)
        assert row["wavefrontBelowN"] and row["wavefrontReachesN"]
        assert row["inductionDimensionOk"]
        alpha = s.algebra.decode(0, orbit.representative)
        assert tuple(row["N"]) == n_map(s.algebra, s.algebra.eta(0, alpha))


def test_regular_split_orbit_is_generic(gl2_3_setting):
    s = gl2_3_setting
    A = s.algebra
    alpha = A.eta_inv(0, np.array([0, 0, 0, 1]))
    orbit = s.orbit(0, int(A.encode(alpha)))
    out = generic_check(s, orbit)
    assert out["orbit"] == orbit.representative
