import pytest

from src.cyclotomic import cyclotomic_ring, total


def test_roots_of_unity_sum_to_zero():
    ring = cyclotomic_ring(5, 5)
    assert total((ring.zeta(t) for t in range(5)), ring).is_zero()


def test_sqrt_q_when_it_exists():
    ring = cyclotomic_ring(5, 5)
    s = ring.q_power(1)
    assert s * s == ring.integer(5)
    assert cyclotomic_ring(3, 9).sqrt_q is not None
    assert cyclotomic_ring(3, 3).sqrt_q is None


@pytest.mark.parametrize("p, k", [(5, 9), (3, 20), (7, 14), (2, 30)])
def test_sqrt_q_for_high_powers(p, k):
    ring = cyclotomic_ring(p, p**k)
    s = ring.q_power(1)
    assert s * s == ring.integer(p**k)
    assert ring.sqrt_q is not None


def test_no_sqrt_q_for_odd_powers_of_3_mod_4_primes():
    assert cyclotomic_ring(3, 3**21).sqrt_q is None
    assert cyclotomic_ring(7, 7**5).sqrt_q is None


def test_mixed_parity_without_sqrt_q():
    ring = cyclotomic_ring(3, 3)
    with pytest.raises(ArithmeticError):
        ring.q_power(1) + ring.one()


def test_canonical_form():
    ring = cyclotomic_ring(3, 3)
    assert ring.q_power(2) == ring.integer(3)
    assert ring.q_power(2).rational_integer() == 3
    assert ring.q_power(-2).rational_integer() is None
    assert ring.integer(9).scale_q(-2) == ring.integer(3)
    assert ring.zeta(1).rational_integer() is None


def test_conjugation_and_json():
    ring = cyclotomic_ring(7, 7)
    assert ring.zeta(2).conj() == ring.zeta(5)
    x = ring.zeta(3) * 4 + ring.q_power(-2)
    assert type(x).from_json(ring, x.to_json()) == x


def test_immutable():
    ring = cyclotomic_ring(5, 5)
    with pytest.raises(AttributeError):
        ring.one().half_q_exp = 3
