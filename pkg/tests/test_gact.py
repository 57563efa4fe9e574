import numpy as np
import pytest

from src.builders import build, builtin_spec
from src.errors import ResourceLimitError
from src.gact import ADJOINT, COADJOINT, FiniteGroupAction


def test_group_orders(sl2_5, gl2_5, gl2z2_5):
    assert sl2_5[1].order == 120
    assert gl2_5[1].order == 480
    assert gl2z2_5[1].order == 16


def test_nilpotent_orbit_sizes(sl2_3, sl2_5):
    for (A, G), expected in ((sl2_5, [1, 12, 12]), (sl2_3, [1, 4, 4])):
        for side in (ADJOINT, COADJOINT):
            assert sorted(o.size for o in G.nilpotent_orbits(0, side)) == expected


def test_torus_orbits_on_the_odd_piece(gl2z2_5):
    A, G = gl2z2_5
    assert sorted(o.size for o in G.nilpotent_orbits(1, COADJOINT)) == [1, 4, 4]


def test_partition_covers_the_piece(sl2_5):
    A, G = sl2_5
    orbits = G.orbit_partition(0, COADJOINT)
    assert sum(o.size for o in orbits) == A.piece_size(0)
    for o in orbits:
        assert o.representative == min(o.points)
    assert G.orbit_of(A.point(0, [1, 0, 0])).size == 12


def test_coadjoint_is_contragredient(sl2_5, gl2z2_5):
    sl2_5[1].check_coadjoint_contragredient(0)
    gl2z2_5[1].check_coadjoint_contragredient(1)


def test_permutations_are_bijections(sl2_5):
    A, G = sl2_5
    for g in G.generator_indices():
        perm = G.permutation(g, 0)
        assert np.array_equal(np.sort(perm), np.arange(A.piece_size(0)))


def test_generator_file_round_trip(gl2z2_5):
    A, G = gl2z2_5
    again = FiniteGroupAction.from_json(A, G.generators_json())
    assert again.order == G.order


def test_group_cap():
    with pytest.raises(ResourceLimitError, match="group too large"):
        build(builtin_spec("gl2", 5), cap=100)
