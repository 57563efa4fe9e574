"""
Univariate polynomials over F_q, stored low-degree-first as int64 index arrays.

The zero polynomial is the empty array.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .ffield import FiniteField
from .linalg import decode_points

Poly = np.ndarray


def poly(coeffs) -> Poly:
    return trim(np.asarray(coeffs, dtype=np.int64).reshape(-1))


def trim(f: Poly) -> Poly:
    nz = np.nonzero(f)[0]
    return f[: nz[-1] + 1].copy() if nz.size else np.zeros(0, dtype=np.int64)


def degree(f: Poly) -> int:
    return len(trim(f)) - 1


def monic(F: FiniteField, f: Poly) -> Poly:
    f = trim(f)
    if not f.size:
        return f
    return F.mul(f, F.inv(f[-1]))


def add(F: FiniteField, f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return trim(F.add(a, b))


def sub(F: FiniteField, f: Poly, g: Poly) -> Poly:
    return add(F, f, F.neg(np.asarray(g, dtype=np.int64)))


def mul(F: FiniteField, f: Poly, g: Poly) -> Poly:
    f, g = trim(f), trim(g)
    if not f.size or not g.size:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(len(f) + len(g) - 1, dtype=np.int64)
    for i, c in enumerate(f):
        if c:
            out[i : i + len(g)] = F.add(out[i : i + len(g)], F.mul(c, g))
    return trim(out)


def divmod_(F: FiniteField, f: Poly, g: Poly) -> Tuple[Poly, Poly]:
    g = trim(g)
    if not g.size:
        raise ZeroDivisionError("division by zero")
    r = trim(f).copy()
    if len(r) < len(g):
        return np.zeros(0, dtype=np.int64), r
    quo = np.zeros(len(r) - len(g) + 1, dtype=np.int64)
    inv_lead = F.inv(g[-1])
    while len(r) >= len(g):
        shift = len(r) - len(g)
        c = F.mul(r[-1], inv_lead)
        quo[shift] = c
        r[shift:] = F.sub(r[shift:], F.mul(c, g))
        r = trim(r)
    return trim(quo), r


def gcd(F: FiniteField, f: Poly, g: Poly) -> Poly:
    a, b = trim(f), trim(g)
    while b.size:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def lcm(F: FiniteField, f: Poly, g: Poly) -> Poly:
    return monic(F, divmod_(F, mul(F, f, g), gcd(F, f, g))[0])


def derivative(F: FiniteField, f: Poly) -> Poly:
    f = trim(f)
    if len(f) <= 1:
        return np.zeros(0, dtype=np.int64)
    return trim(F.mul(F.from_int(np.arange(1, len(f))), f[1:]))


def pth_root(F: FiniteField, f: Poly) -> Poly:
    """g with g^p = f, for f a polynomial in t^p."""
    f = trim(f)
    coeffs = f[:: F.p]
    # a -> a^{p^{k-1}} inverts the Frobenius on F_q
    return trim(F.power(coeffs, F.p ** (F.k - 1)))


def radical(F: FiniteField, f: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of f."""
    f = monic(F, f)
    if degree(f) <= 0:
        return np.ones(1, dtype=np.int64)
    d = derivative(F, f)
    if not d.size:
        return radical(F, pth_root(F, f))
    g = gcd(F, f, d)
    part = monic(F, divmod_(F, f, g)[0])
    return lcm(F, part, radical(F, g))


def irreducible_factors(F: FiniteField, f: Poly) -> List[Poly]:
    """Distinct monic irreducible factors of f by trial division, lowest degree first."""
    rest = radical(F, f)
    factors: List[Poly] = []
    d = 1
    while degree(rest) >= 2 * d:
        for m in range(F.q**d):
            cand = np.concatenate([decode_points(F.q, m, d), [1]]).astype(np.int64)
            quo, r = divmod_(F, rest, cand)
            if not r.size:
                factors.append(cand)
                rest = quo
        d += 1
    if degree(rest) >= 1:
        factors.append(monic(F, rest))
    return sorted(factors, key=lambda g: (len(g), tuple(g[::-1])))


def charpoly(F: FiniteField, A) -> Poly:
    """det(tI - A) by Berkowitz's division-free recursion."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    C = np.ones(1, dtype=np.int64)  # highest coefficient first
    for r in range(n):
        Ar = A[:r, :r]
        R = A[r, :r]
        S = A[:r, r]
        col = [1, int(F.neg(A[r, r]))]
        v = S.copy()
        for _ in range(r):
            col.append(int(F.neg(F.dot(R, v))))
            v = F.matmul(Ar, v[:, None])[:, 0]
        T = np.zeros((r + 2, r + 1), dtype=np.int64)
        for i in range(r + 2):
            for j in range(min(i + 1, r + 1)):
                T[i, j] = col[i - j]
        C = F.matmul(T, C[:, None])[:, 0]
    return trim(C[::-1].copy())


def eval_matrix(F: FiniteField, f: Poly, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.int64)
    n = X.shape[0]
    I = np.eye(n, dtype=np.int64)
    Y = np.zeros((n, n), dtype=np.int64)
    for c in trim(f)[::-1]:
        Y = F.add(F.matmul(Y, X), F.mul(c, I))
    return Y


def to_list(f: Poly) -> List[int]:
    return [int(c) for c in trim(f)]
