"""
Gaussian elimination over F_q on matrices of element indices.

Vectors are rows. A basis is a 2-D array whose rows span the subspace; the
empty subspace of F_q^n is an array of shape (0, n).
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np

from .errors import UsageError
from .ffield import FiniteField


def as_matrix(A, n_cols: Optional[int] = None) -> np.ndarray:
    M = np.asarray(A, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1) if M.size else np.zeros((0, n_cols or 0), dtype=np.int64)
    return M


def rref(F: FiniteField, A) -> Tuple[np.ndarray, List[int]]:
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise UsageError(f"rref needs a matrix, got shape {R.shape}")
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.mul(R[r], F.inv(R[r, c]))
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if others.size:
            R[others] = F.sub(R[others], F.mul(R[others, c][:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: FiniteField, A) -> int:
    M = np.asarray(A, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: FiniteField, A) -> np.ndarray:
    """Basis of {x : A x = 0}, one vector per free column, free columns ascending."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, pc in enumerate(pivots):
            basis[row, pc] = F.neg(R[i, f])
    return basis


def solve_affine(F: FiniteField, A, b) -> Tuple[Optional[np.ndarray], np.ndarray]:
    """All solutions of A x = b as (particular, kernel basis).

    The particular solution has every free variable zero; None when the
    system is inconsistent.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    n = A.shape[1]
    kernel = nullspace(F, A)
    if A.shape[0] == 0:
        return np.zeros(n, dtype=np.int64), kernel
    R, pivots = rref(F, np.concatenate([A, b[:, None]], axis=1))
    if n in pivots:
        return None, kernel
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n]
    return x, kernel


def span_basis(F: FiniteField, vectors, n: Optional[int] = None) -> np.ndarray:
    """Reduced row-echelon basis of the span; canonical for the subspace."""
    V = as_matrix(vectors, n)
    if V.shape[0] == 0:
        return np.zeros((0, V.shape[1] if n is None else n), dtype=np.int64)
    R, pivots = rref(F, V)
    return R[: len(pivots)]


def intersect(F: FiniteField, U, V) -> np.ndarray:
    U, V = np.asarray(U, dtype=np.int64), np.asarray(V, dtype=np.int64)
    n = U.shape[1] if U.ndim == 2 else V.shape[1]
    if U.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    stacked = np.concatenate([U, F.neg(V)], axis=0).T
    ker = nullspace(F, stacked)
    if ker.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    return span_basis(F, F.matmul(ker[:, : U.shape[0]], U), n)


def coordinates(F: FiniteField, basis, v) -> Optional[np.ndarray]:
    """c with c @ basis = v, or None when v is outside the span."""
    basis = np.asarray(basis, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if basis.shape[0] == 0:
        return np.zeros(0, dtype=np.int64) if not np.any(v) else None
    x, _ = solve_affine(F, basis.T, v)
    return x


def in_span(F: FiniteField, basis, v) -> bool:
    return coordinates(F, basis, v) is not None


def batched_inverse(F: FiniteField, A: np.ndarray) -> np.ndarray:
    """Gauss-Jordan on a stack of square matrices of shape (B, n, n)."""
    A = np.asarray(A, dtype=np.int64)
    B, n, _ = A.shape
    M = np.concatenate([A, np.broadcast_to(np.eye(n, dtype=np.int64), (B, n, n))], axis=-1).copy()
    rows = np.arange(B)
    for c in range(n):
        nonzero = M[:, c:, c] != 0
        if not nonzero.any(axis=1).all():
            raise UsageError("matrix is singular")
        piv = c + np.argmax(nonzero, axis=1)
        top = M[rows, c].copy()
        M[rows, c] = M[rows, piv]
        M[rows, piv] = top
        M[:, c] = F.mul(M[:, c], F.inv(M[:, c, c])[:, None])
        factors = M[:, :, c].copy()
        factors[:, c] = 0
        M = F.sub(M, F.mul(factors[:, :, None], M[:, c][:, None, :]))
    return M[:, :, n:]


def inverse(F: FiniteField, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.shape[0] == 0:
        return A.copy()
    return batched_inverse(F, A[None])[0]


# -- point enumeration ----------------------------------------------------------


def encode_points(q: int, coords) -> np.ndarray:
    """Mixed-radix index, least significant coordinate first."""
    coords = np.asarray(coords, dtype=np.int64)
    return coords @ (q ** np.arange(coords.shape[-1], dtype=np.int64))


def decode_points(q: int, indices, n: int) -> np.ndarray:
    idx = np.asarray(indices, dtype=np.int64)
    return (idx[..., None] // (q ** np.arange(n, dtype=np.int64))) % q


def span_points(F: FiniteField, basis, n: Optional[int] = None) -> np.ndarray:
    """Every point of the span, as coordinate rows (q^d of them)."""
    basis = as_matrix(basis, n)
    d, width = basis.shape
    if d == 0:
        return np.zeros((1, width), dtype=np.int64)
    combos = decode_points(F.q, np.arange(F.q**d, dtype=np.int64), d)
    return F.matmul(combos, basis)
