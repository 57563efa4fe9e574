from src.fchar import ft, is_invariant_character
from src.gggr import GradedSetting, orbit_labels


def test_gammas_on_sl2(sl2_5_setting):
    s = sl2_5_setting
    for orbit in s.nilpotent_coadjoint_orbits(0):
        s.check_support(orbit)
        s.check_counting_formula(orbit)
        s.check_representative_independence(orbit)
        is_invariant_character(s.gamma_direct(orbit), s.group)


def test_gammas_on_the_odd_piece(gl2z2_5_setting):
    s = gl2z2_5_setting
    table = s.gggr_table(1)
    assert len(table.to_json()["orbits"]) == 3
    for orbit in s.nilpotent_coadjoint_orbits(1):
        s.check_support(orbit)
        s.check_counting_formula(orbit)


def test_ft_table_is_built_once_per_orbit(gl2z2_5_setting):
    s = gl2z2_5_setting
    for orbit in s.nilpotent_coadjoint_orbits(1):
        table = s.gamma_ft_table(orbit)
        assert s.gamma_ft_table(orbit) is table
        direct = ft(s.gamma_direct(orbit))
        for i in range(s.algebra.piece_size(1)):
            assert s.gamma_ft_counting(orbit, s.dual_point(1, i)) == direct.value(i)


def test_zero_orbit_gamma_is_a_delta(sl2_5_setting):
    s = sl2_5_setting
    zero = s.nilpotent_coadjoint_orbits(0)[0]
    assert zero.representative == 0
    assert s.gamma_direct(zero).support().tolist() == [0]


def test_pairings_follow_slices(sl2_3_setting):
    rows = sl2_3_setting.pairing_table(0)
    assert len(rows) == len(sl2_3_setting.nilpotent_coadjoint_orbits(0)) * len(sl2_3_setting.coadjoint_orbits(0))
    assert any(row["sliceHit"] for row in rows)


def test_wavefront_is_the_cone(sl2_5_setting):
    s = sl2_5_setting
    for orbit in s.coadjoint_orbits(0):
        chi = s.chi(orbit)
        cone = s.cone(s.support_orbits(chi))
        assert orbit_labels(s.wavefront(chi)) == orbit_labels(cone)
        s.check_cone_negation([orbit])


def test_wavefront_of_the_zero_orbit(sl2_5_setting):
    s = sl2_5_setting
    zero = s.orbit(0, 0)
    assert orbit_labels(s.wavefront(s.chi(zero))) == [0]


def test_threads_do_not_change_results(gl2z2_5):
    A, G = gl2z2_5
    one = GradedSetting(A, G, threads=1)
    many = GradedSetting(A, G, threads=4)
    for orbit in one.nilpotent_coadjoint_orbits(1):
        assert one.gamma_direct(orbit) == many.gamma_direct(orbit)
