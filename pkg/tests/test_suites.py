from src.suites import cor5_9build, lemma3_9
from src.suites.common import degrees, triple_counts


def test_triple_counts_on_sl2(sl2_5_setting):
    counts = triple_counts(sl2_5_setting, 0)
    assert len(counts) == 2
    assert set(counts.values()) == {5}


def test_triple_counts_on_the_odd_piece(gl2z2_5_setting):
    s = gl2z2_5_setting
    assert degrees(s) == [0, 1]
    assert list(triple_counts(s, 1).values()) == [1, 1]


def test_build_suite_samples_as_many_characters_as_lemma3_9():
    assert cor5_9build.SAMPLES is lemma3_9.SAMPLES
    assert cor5_9build.SAMPLES == 50
    assert ("gl3-z3", 11) in cor5_9build.DEFAULT_TARGETS
