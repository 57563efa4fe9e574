"""
Finite fields F_q, q = p^k, with elements stored as integer indices.

The index of c_0 + c_1 t + ... + c_{k-1} t^{k-1} is sum c_i p^i, so 0 is zero,
1 is one and the prime subfield is {0, ..., p-1}. Every operation accepts
numpy integer arrays (or plain ints) and works elementwise; extension fields
go through precomputed add/mul tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .cyclotomic import ScaledCyclotomic, cyclotomic_ring
from .errors import ResourceLimitError, UsageError

ArrayLike = Union[int, np.ndarray]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- modulus search over F_p, coefficients lowest degree first ---------------


def _monic_polys(p: int, degree: int) -> Iterator[List[int]]:
    for m in range(p**degree):
        coeffs = [(m // p**i) % p for i in range(degree)]
        yield coeffs + [1]


def is_irreducible_mod_p(poly: Sequence[int], p: int) -> bool:
    """True when the polynomial factors over F_p as a single irreducible of its own degree."""
    from . import fqpoly

    f = fqpoly.poly([int(c) % p for c in poly])
    deg = fqpoly.degree(f)
    if deg < 1:
        return False
    factors = fqpoly.irreducible_factors(field(p), f)
    return len(factors) == 1 and fqpoly.degree(factors[0]) == deg


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Least monic irreducible of degree k, coefficients lowest degree first."""
    for f in _monic_polys(p, k):
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise UsageError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable


class FiniteField:
    """F_{p^k} = F_p[t]/(modulus)."""

    MAX_EXTENSION_ORDER = 1024
    MAX_PRIME = 1 << 20

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> None:
        p, k = int(p), int(k)
        if not is_prime(p):
            raise UsageError(f"p={p} is not prime")
        if p < 3:
            raise UsageError("characteristic 2 is not supported")
        if k < 1:
            raise UsageError(f"extension degree must be >= 1, got {k}")
        if k == 1 and p > self.MAX_PRIME:
            raise ResourceLimitError(f"p={p} exceeds {self.MAX_PRIME}")
        if k > 1 and p**k > self.MAX_EXTENSION_ORDER:
            raise ResourceLimitError(f"q={p ** k} exceeds the table limit {self.MAX_EXTENSION_ORDER}")

        self.p = p
        self.k = k
        self.q = p**k
        if modulus is None:
            mod = (0, 1) if k == 1 else least_irreducible(p, k)
            self.modulus_chosen = True
        else:
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != k + 1 or mod[-1] != 1:
                raise UsageError(f"modulus must be monic of degree {k}: {list(modulus)}")
            if not is_irreducible_mod_p(mod, p):
                raise UsageError(f"modulus {list(mod)} is reducible over F_{p}")
            self.modulus_chosen = False
        self.modulus: Tuple[int, ...] = mod
        self.ring = cyclotomic_ring(p, self.q)
        self._build_tables()

    @classmethod
    def from_modulus(cls, p: int, modulus: Sequence[int]) -> "FiniteField":
        """F_p[t]/(modulus); coefficients lowest degree first."""
        return cls(p, len(modulus) - 1, modulus)

    @classmethod
    def default(cls, p: int, k: int = 1) -> "FiniteField":
        return cls(p, k)

    # -- tables ------------------------------------------------------------------

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        idx = np.arange(q, dtype=np.int64)
        self.DIGITS = np.stack([(idx // p**i) % p for i in range(k)], axis=-1)
        self._radix = p ** np.arange(k, dtype=np.int64)
        if k == 1:
            self.ADD = self.MUL = self.MT = None
            self.INV = np.array([0] + [pow(int(a), p - 2, p) for a in range(1, p)], dtype=np.int64) if p <= 4096 else None
            self.TRACE = None
            return

        D = self.DIGITS
        self.ADD = self.encode((D[:, None, :] + D[None, :, :]) % p)
        # t^s mod modulus for s < 2k-1
        red = np.zeros((2 * k - 1, k), dtype=np.int64)
        cur = np.zeros(k, dtype=np.int64)
        cur[0] = 1
        mod_low = np.array(self.modulus[:k], dtype=np.int64)
        for s in range(2 * k - 1):
            red[s] = cur
            top = cur[k - 1]
            cur = np.concatenate([[0], cur[: k - 1]])
            cur = (cur - top * mod_low) % p
        conv = np.zeros((q, q, 2 * k - 1), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                conv[:, :, i + j] += D[:, None, i] * D[None, :, j]
        self.MUL = self.encode((conv % p) @ red % p)
        # MT[i, j] = digits of t^i * t^j
        self.MT = np.stack([np.stack([red[i + j] for j in range(k)]) for i in range(k)])
        self.INV = np.argmax(self.MUL == 1, axis=1).astype(np.int64)
        self.INV[0] = 0

        frob = np.ones(q, dtype=np.int64)
        for _ in range(p):
            frob = self.MUL[frob, idx]
        conj = idx.copy()
        trace = idx.copy()
        for _ in range(k - 1):
            conj = frob[conj]
            trace = self.ADD[trace, conj]
        if np.any(trace >= p):
            raise UsageError("trace table left the prime field; modulus is not irreducible")
        self.TRACE = trace

    def encode(self, digits: np.ndarray) -> np.ndarray:
        return np.asarray(digits, dtype=np.int64) @ self._radix

    # -- elementwise arithmetic ------------------------------------------------

    def add(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        return self.ADD[a, b]

    def neg(self, a: ArrayLike) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        return self.encode((-self.DIGITS[a]) % self.p)

    def sub(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        return self.MUL[a, b]

    def inv(self, a: ArrayLike) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("division by zero")
        if self.INV is not None:
            return self.INV[a]
        return np.vectorize(lambda x: pow(int(x), self.p - 2, self.p), otypes=[np.int64])(a)

    def div(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        return self.mul(a, self.inv(b))

    def power(self, a: ArrayLike, e: int) -> np.ndarray:
        base = np.asarray(a, dtype=np.int64)
        if e < 0:
            base, e = self.inv(base), -e
        out = np.ones_like(base)
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def trace(self, a: ArrayLike) -> np.ndarray:
        """Tr_{F_q/F_p}, returned as integers in [0, p)."""
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a % self.p
        return self.TRACE[a]

    def from_int(self, n: ArrayLike) -> np.ndarray:
        """Image of an integer under Z -> F_p -> F_q."""
        return np.asarray(n, dtype=np.int64) % self.p

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.k:
            raise UsageError(f"too many coefficients for F_{self.q}: {list(coeffs)}")
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def coeffs(self, a: int) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.DIGITS[int(a)]) if self.k > 1 else (int(a) % self.p,)

    # -- reductions and matrices --------------------------------------------------

    def sum(self, a: ArrayLike, axis: int = -1) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        digits = self.DIGITS[a].sum(axis=axis if axis >= 0 else axis - 1) % self.p
        return self.encode(digits)

    def dot(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        return self.sum(self.mul(a, b), axis=-1)

    def matmul(self, A: ArrayLike, B: ArrayLike) -> np.ndarray:
        A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
        if self.k == 1:
            return np.matmul(A, B) % self.p
        return self.sum(self.mul(A[..., :, :, None], B[..., None, :, :]), axis=-2)

    def einsum(self, subscripts: str, *operands: ArrayLike) -> np.ndarray:
        """np.einsum over F_q with explicit index letters (no ellipsis).

        Contracts pairwise, left to right, reducing after every step.
        """
        ins, out = subscripts.replace(" ", "").split("->")
        terms = ins.split(",")
        if len(terms) != len(operands):
            raise UsageError(f"einsum: {len(terms)} terms for {len(operands)} operands")
        acc_t, acc = terms[0], np.asarray(operands[0], dtype=np.int64)
        for pos in range(1, len(terms)):
            t = terms[pos]
            later = set("".join(terms[pos + 1 :]) + out)
            keep = "".join(dict.fromkeys(c for c in acc_t + t if c in later))
            acc = self._einsum2(acc_t, t, keep, acc, np.asarray(operands[pos], dtype=np.int64))
            acc_t = keep
        if acc_t != out:
            if self.k == 1:
                acc = np.einsum(f"{acc_t}->{out}", acc) % self.p
            else:
                acc = self.encode(np.einsum(f"{acc_t}u->{out}u", self.DIGITS[acc]) % self.p)
        return np.asarray(acc, dtype=np.int64)

    def _einsum2(self, ta: str, tb: str, out: str, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return np.einsum(f"{ta},{tb}->{out}", A, B) % self.p
        used = set(ta + tb + out)
        u, v, w = [c for c in "uvwUVWxyzXYZ" if c not in used][:3]
        digits = np.einsum(
            f"{ta}{u},{tb}{v},{u}{v}{w}->{out}{w}", self.DIGITS[A], self.DIGITS[B], self.MT
        )
        return self.encode(digits % self.p)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    # -- misc ------------------------------------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def primitive_element(self) -> int:
        order = self.q - 1
        prime_factors = [r for r in range(2, order + 1) if order % r == 0 and is_prime(r)]
        for a in range(1, self.q):
            if all(int(self.power(a, order // r)) != 1 for r in prime_factors):
                return a
        return 1

    def describe(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "q": self.q,
            "modulus": list(self.modulus),
            "modulusChosen": self.modulus_chosen,
        }

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}^{self.k}, modulus={list(self.modulus)})"

    def __call__(self, value: Union[int, Sequence[int]]) -> "FqElem":
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if self.k == 1:
                v %= self.p
            elif not 0 <= v < self.q:
                raise UsageError(f"index {v} out of range for F_{self.q}")
            return FqElem(self, v)
        return FqElem(self, self.from_coeffs(value))


@dataclass(frozen=True)
class FqElem:
    """A single element, for scalar code and examples; kernels use raw indices."""

    field: FiniteField
    value: int

    def _other(self, other: Union["FqElem", int]) -> int:
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise UsageError("elements of different fields")
            return other.value
        return int(self.field.from_int(int(other)))

    def __add__(self, other: Union["FqElem", int]) -> "FqElem":
        return fq_arith(self, FqElem(self.field, self._other(other)), "add")

    __radd__ = __add__

    def __sub__(self, other: Union["FqElem", int]) -> "FqElem":
        return self + (-FqElem(self.field, self._other(other)))

    def __neg__(self) -> "FqElem":
        return fq_arith(self, self, "neg")

    def __mul__(self, other: Union["FqElem", int]) -> "FqElem":
        return fq_arith(self, FqElem(self.field, self._other(other)), "mul")

    __rmul__ = __mul__

    def __truediv__(self, other: Union["FqElem", int]) -> "FqElem":
        return self * fq_arith(FqElem(self.field, self._other(other)), self, "inv")

    def inverse(self) -> "FqElem":
        return fq_arith(self, self, "inv")

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FqElem({list(self.coeffs)} in F_{self.field.q})"


def fq_arith(a: FqElem, b: FqElem, op: str) -> FqElem:
    F = a.field
    if op == "add":
        return FqElem(F, int(F.add(a.value, b.value)))
    if op == "mul":
        return FqElem(F, int(F.mul(a.value, b.value)))
    if op == "neg":
        return FqElem(F, int(F.neg(a.value)))
    if op == "inv":
        return FqElem(F, int(F.inv(a.value)))
    raise UsageError(f"unknown field operation {op!r}")


def trace_to_prime(a: FqElem) -> int:
    return int(a.field.trace(a.value))


def additive_character(a: FqElem) -> ScaledCyclotomic:
    """chi(a) = z^{Tr(a)}."""
    return a.field.ring.zeta(trace_to_prime(a))


@lru_cache(maxsize=32)
def field(p: int, k: int = 1, modulus: Optional[Tuple[int, ...]] = None) -> FiniteField:
    return FiniteField(p, k, modulus)
