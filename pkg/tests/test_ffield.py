import numpy as np
import pytest

from src.errors import ResourceLimitError, UsageError
from src.ffield import FiniteField, additive_character, field, is_irreducible_mod_p, least_irreducible


def test_prime_field_arithmetic():
    F = field(5)
    assert int(F.inv(2)) == 3
    assert int(F.add(4, 3)) == 2
    assert int(F.sub(1, 3)) == 3
    assert int(F.power(2, 4)) == 1
    assert F.primitive_element() == 2


def test_f9_uses_least_modulus():
    F = field(3, 2)
    assert F.modulus == (1, 0, 1)
    assert F.modulus_chosen
    t = 3  # index of the generator t = 0 + 1*3
    assert int(F.mul(t, t)) == 2
    assert int(F.trace(t)) == 0
    assert int(F.trace(1)) == 2
    assert additive_character(F(t)) == F.ring.one()


def test_every_nonzero_element_has_an_inverse():
    F = field(3, 2)
    nonzero = F.elements()[1:]
    assert np.all(F.mul(nonzero, F.inv(nonzero)) == 1)


def test_element_wrapper():
    F = field(3, 2)
    t = F([0, 1])
    assert t * t == F(2)
    assert (t + 1) - 1 == t
    assert t / t == F(1)
    assert t.coeffs == (0, 1)


def test_inverse_of_zero_raises():
    F = field(7)
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        field(3, 2).inv(np.array([1, 0]))


def test_rejected_parameters():
    with pytest.raises(UsageError):
        field(2)
    with pytest.raises(UsageError):
        field(9)
    with pytest.raises(ResourceLimitError):
        field(5, 5)
    with pytest.raises(UsageError, match="reducible"):
        field(3, 2, (2, 0, 1))


def test_irreducibility():
    assert is_irreducible_mod_p([1, 0, 1], 3)
    assert not is_irreducible_mod_p([2, 0, 1], 3)
    assert is_irreducible_mod_p(least_irreducible(5, 3), 5)
    assert not is_irreducible_mod_p([1, 2, 1], 3)
    assert not is_irreducible_mod_p([1, 0, 0, 0, 1], 2)
    assert not is_irreducible_mod_p([1, 0, 0, 0, 1, 1], 2)
    assert is_irreducible_mod_p([1, 1, 0, 1], 2)
    assert not is_irreducible_mod_p([3], 3)
    assert least_irreducible(2, 4) == (1, 1, 0, 0, 1)


def test_matmul_matches_scalar_loop():
    F = field(3, 2)
    rng = np.random.default_rng(1)
    A = rng.integers(0, 9, size=(3, 4))
    B = rng.integers(0, 9, size=(4, 2))
    C = F.matmul(A, B)
    for i in range(3):
        for j in range(2):
            acc = F(0)
            for k in range(4):
                acc = acc + F(int(A[i, k])) * F(int(B[k, j]))
            assert int(C[i, j]) == acc.value


def test_explicit_and_default_moduli():
    F = FiniteField.from_modulus(3, (2, 2, 1))  # t^2 + 2t + 2
    assert F.k == 2 and F.modulus == (2, 2, 1)
    assert not F.modulus_chosen
    assert FiniteField.default(3, 2).modulus == (1, 0, 1)
    with pytest.raises(UsageError, match="reducible"):
        FiniteField.from_modulus(3, (2, 0, 1))
