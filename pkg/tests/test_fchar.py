import numpy as np
import pytest

from src.errors import NotACharacter, UsageError
from src.fchar import (
    DUAL,
    PRIMAL,
    PieceFunction,
    check_chi_orbit,
    chi_gram,
    chi_orbit,
    combine,
    ft,
    inner,
    is_invariant_character,
)
from src.gact import ADJOINT


def _random_function(A, degree, rng):
    size = A.piece_size(degree)
    table = rng.integers(-3, 4, size=(size, A.field.p)).astype(object)
    return PieceFunction(A, degree, PRIMAL, table)


def test_ft_twice_is_negation(sl2_3):
    A = sl2_3[0]
    f = _random_function(A, 0, np.random.default_rng(1))
    assert ft(ft(f)).side == PRIMAL
    assert ft(ft(f)) == f.negate()


def test_naive_and_decimated_agree(gl2z2_5):
    A = gl2z2_5[0]
    f = _random_function(A, 1, np.random.default_rng(2))
    assert ft(f, "naive") == ft(f, "decimated")


def test_plancherel(sl2_3):
    A = sl2_3[0]
    rng = np.random.default_rng(3)
    f, g = _random_function(A, 0, rng), _random_function(A, 0, rng)
    assert inner(f, g) == inner(ft(f), ft(g))


def test_orbit_characters(sl2_3_setting):
    G = sl2_3_setting.group
    for orbit in sl2_3_setting.coadjoint_orbits(0):
        chi = chi_orbit(G, orbit)
        check_chi_orbit(G, orbit, chi)
        assert inner(chi, chi).rational_integer() == orbit.size
        dec = is_invariant_character(chi, G)
        assert dec.multiplicities == {orbit.representative: 1}


def test_orbit_characters_are_orthogonal(sl2_3_setting):
    G = sl2_3_setting.group
    orbits = sl2_3_setting.coadjoint_orbits(0)
    chis = [chi_orbit(G, o) for o in orbits]
    for a, chi_a in enumerate(chis):
        for b, chi_b in enumerate(chis):
            if a != b:
                assert inner(chi_a, chi_b).is_zero()
    gram = chi_gram(G, orbits, chis)
    assert [row[i] for i, row in enumerate(gram)] == [o.size for o in orbits]
    assert sum(map(sum, gram)) == sum(o.size for o in orbits) == 27


def test_multiplicities_recovered(sl2_3_setting):
    G = sl2_3_setting.group
    orbits = sl2_3_setting.coadjoint_orbits(0)
    a, b = orbits[0], orbits[-1]
    f = combine([chi_orbit(G, a), chi_orbit(G, b)], [2, 3])
    assert is_invariant_character(f, G).multiplicities == {a.representative: 2, b.representative: 3}


def test_point_indicator_is_not_a_character(sl2_3):
    A, G = sl2_3
    with pytest.raises(NotACharacter):
        is_invariant_character(PieceFunction.indicator(A, 0, [1]), G)


def test_function_json_round_trip(gl2z2_5):
    A, G = gl2z2_5
    orbit = G.orbit_partition(1, "coadjoint")[-1]
    chi = chi_orbit(G, orbit)
    assert PieceFunction.from_json(A, chi.to_json()) == chi


def test_chi_needs_a_coadjoint_orbit(sl2_3):
    A, G = sl2_3
    with pytest.raises(UsageError):
        chi_orbit(G, G.orbit_partition(0, ADJOINT)[0])


def test_characters_are_primal(sl2_3):
    A, G = sl2_3
    with pytest.raises(UsageError):
        is_invariant_character(PieceFunction.zeros(A, 0, DUAL), G)
