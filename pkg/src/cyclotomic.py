"""
Exact scalars q^{e/2} * (a_0 + a_1 z + ... + a_{p-2} z^{p-2}) with z a primitive
p-th root of unity.

Every character value and character sum of the workbench lives here. Nothing
is ever evaluated numerically: equality and "is zero" are decided on the
canonical coefficient vector.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


class CyclotomicRing:
    """Z[z_p] together with the bookkeeping of half-integer powers of q."""

    def __init__(self, p: int, q: int) -> None:
        self.p = p
        self.q = q
        self.sqrt_q = self._find_sqrt_q()

    def __repr__(self) -> str:
        return f"CyclotomicRing(p={self.p}, q={self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclotomicRing) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def _find_sqrt_q(self) -> Optional[Tuple[int, ...]]:
        # An element s of Z[z_p] with s*s = q, when Q(z_p) contains sqrt(q).
        p, q = self.p, self.q
        k, rest = 0, q
        while rest > 1:
            rest //= p
            k += 1
        if k % 2 == 0:
            return self.reduce([p ** (k // 2)])
        if p % 4 != 1:
            return None
        # quadratic Gauss sum g = sum (a/p) z^a has g*g = p for p = 1 mod 4
        gauss = [0] + [_legendre(a, p) for a in range(1, p)]
        scale = p ** ((k - 1) // 2)
        return self.reduce([scale * c for c in gauss])

    # -- coefficient vectors -------------------------------------------------

    def reduce(self, vec: Sequence[int]) -> Tuple[int, ...]:
        """Redundant (length <= p) vector to the basis 1, z, ..., z^{p-2}."""
        p = self.p
        full = [0] * p
        for i, c in enumerate(vec):
            full[i % p] += int(c)
        top = full[p - 1]
        return tuple(c - top for c in full[: p - 1])

    def multiply(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        p = self.p
        out = [0] * p
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[(i + j) % p] += x * y
        return self.reduce(out)

    def normalise(self, vec: Sequence[int], half_q_exp: int) -> Tuple[Tuple[int, ...], int]:
        coeffs = self.reduce(vec)
        e = int(half_q_exp)
        if not any(coeffs):
            return coeffs, 0
        q = self.q
        while True:
            if e % 2 and self.sqrt_q is not None:
                coeffs = self.multiply(coeffs, self.sqrt_q)
                e -= 1
            if e >= 2:
                coeffs = tuple(c * q ** (e // 2) for c in coeffs)
                e = e % 2
            if e < 0 and all(c % q == 0 for c in coeffs):
                coeffs = tuple(c // q for c in coeffs)
                e += 2
                continue
            return coeffs, e

    # -- constructors ----------------------------------------------------------

    def zero(self) -> "ScaledCyclotomic":
        return ScaledCyclotomic(self, (), 0)

    def one(self) -> "ScaledCyclotomic":
        return ScaledCyclotomic(self, (1,), 0)

    def integer(self, n: int) -> "ScaledCyclotomic":
        return ScaledCyclotomic(self, (int(n),), 0)

    def zeta(self, t: int) -> "ScaledCyclotomic":
        vec = [0] * self.p
        vec[int(t) % self.p] = 1
        return ScaledCyclotomic(self, vec, 0)

    def q_power(self, half_q_exp: int) -> "ScaledCyclotomic":
        """q^{e/2}."""
        return ScaledCyclotomic(self, (1,), half_q_exp)


@lru_cache(maxsize=None)
def cyclotomic_ring(p: int, q: int) -> CyclotomicRing:
    return CyclotomicRing(p, q)


Scalar = Union["ScaledCyclotomic", int]


class ScaledCyclotomic:
    """Immutable exact scalar in canonical form.

    Canonical form: either the zero vector with exponent 0, or an exponent in
    {0, 1}, or a negative exponent with coefficients not all divisible by q.
    When sqrt(q) lies in Z[z_p] odd exponents are absorbed, so only even
    exponents occur.
    """

    __slots__ = ("ring", "coeffs", "half_q_exp")

    def __init__(self, ring: CyclotomicRing, coeffs: Sequence[int], half_q_exp: int = 0) -> None:
        c, e = ring.normalise(coeffs, half_q_exp)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "half_q_exp", e)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ScaledCyclotomic is immutable")

    def _coerce(self, other: Scalar) -> "ScaledCyclotomic":
        if isinstance(other, ScaledCyclotomic):
            if other.ring != self.ring:
                raise ValueError(f"scalars from different rings: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring.integer(int(other))
        return NotImplemented  # type: ignore[return-value]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (ScaledCyclotomic, int, np.integer)):
            return False
        o = self._coerce(other)  # type: ignore[arg-type]
        return self.coeffs == o.coeffs and self.half_q_exp == o.half_q_exp

    def __hash__(self) -> int:
        return hash((self.ring.p, self.ring.q, self.coeffs, self.half_q_exp))

    def __add__(self, other: Scalar) -> "ScaledCyclotomic":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        ea, eb = self.half_q_exp, o.half_q_exp
        if (ea - eb) % 2:
            raise ArithmeticError(
                f"cannot add q^({ea}/2) and q^({eb}/2) terms: sqrt(q) is not in Q(zeta_{self.ring.p})"
            )
        e = min(ea, eb)
        q = self.ring.q
        sa = q ** ((ea - e) // 2)
        sb = q ** ((eb - e) // 2)
        return ScaledCyclotomic(self.ring, [x * sa + y * sb for x, y in zip(self.coeffs, o.coeffs)], e)

    __radd__ = __add__

    def __neg__(self) -> "ScaledCyclotomic":
        return ScaledCyclotomic(self.ring, [-c for c in self.coeffs], self.half_q_exp)

    def __sub__(self, other: Scalar) -> "ScaledCyclotomic":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "ScaledCyclotomic":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "ScaledCyclotomic":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ScaledCyclotomic(
            self.ring, self.ring.multiply(self.coeffs, o.coeffs), self.half_q_exp + o.half_q_exp
        )

    __rmul__ = __mul__

    def scale_q(self, half_q_exp: int) -> "ScaledCyclotomic":
        """Multiply by q^{e/2}."""
        return ScaledCyclotomic(self.ring, self.coeffs, self.half_q_exp + half_q_exp)

    def conj(self) -> "ScaledCyclotomic":
        p = self.ring.p
        full = list(self.coeffs) + [0]
        return ScaledCyclotomic(self.ring, [full[(-t) % p] for t in range(p)], self.half_q_exp)

    def rational_integer(self) -> Optional[int]:
        """The value as an int when it is a rational integer, else None."""
        if self.is_zero():
            return 0
        if self.half_q_exp != 0 or any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "halfQExp": self.half_q_exp}

    @classmethod
    def from_json(cls, ring: CyclotomicRing, obj: dict) -> "ScaledCyclotomic":
        return cls(ring, obj.get("coeffs", []), int(obj.get("halfQExp", 0)))

    def __repr__(self) -> str:
        return f"ScaledCyclotomic({list(self.coeffs)}, halfQExp={self.half_q_exp})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        body = " + ".join(terms)
        if self.half_q_exp == 0:
            return body
        return f"q^({self.half_q_exp}/2)*({body})"


def total(values: Iterable[ScaledCyclotomic], ring: CyclotomicRing) -> ScaledCyclotomic:
    acc = ring.zero()
    for v in values:
        acc = acc + v
    return acc
