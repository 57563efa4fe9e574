"""
Explicit finite groups acting on the graded pieces.

A group is closed from generators into a full element list. Elements are
carrier matrices: either invertible m x m matrices acting by conjugation
through the algebra's matrix realisation, or block-diagonal matrices acting
on each graded piece directly. Per-degree action matrices act on coordinate
columns; the coadjoint action is transported through eta_B.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import console
from .errors import InvariantViolation, ResourceLimitError, UsageError
from .ffield import FiniteField
from .glie import DualPoint, GradedLieAlgebra, PiecePoint
from .linalg import batched_inverse, inverse, rank, rref

DEFAULT_GROUP_CAP = 1_000_000
CHUNK = 4096

ADJOINT = "adjoint"
COADJOINT = "coadjoint"


@dataclass(frozen=True)
class OrbitT:
    degree: int
    side: str
    points: Tuple[int, ...]

    @property
    def representative(self) -> int:
        return self.points[0]

    @property
    def size(self) -> int:
        return len(self.points)

    def __contains__(self, index: int) -> bool:
        return int(index) in set(self.points)

    def to_json(self) -> dict:
        return {"degree": self.degree, "side": self.side, "representative": self.representative, "size": self.size}


def close_generators(
    F: FiniteField, gens: Sequence[np.ndarray], cap: int = DEFAULT_GROUP_CAP
) -> np.ndarray:
    """Breadth-first closure under right multiplication by the generators.

    Generators are taken in sorted byte order so the element order is
    reproducible; the identity comes first.
    """
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    if not gens:
        raise UsageError("no generators given")
    d = gens[0].shape[0]
    for g in gens:
        if g.shape != (d, d) or rank(F, g) != d:
            raise UsageError("generators must be invertible square matrices of one size")
    gens = sorted(gens, key=lambda g: g.tobytes())
    G = np.stack(gens)

    ident = np.eye(d, dtype=np.int64)
    seen: Dict[bytes, int] = {ident.tobytes(): 0}
    elements: List[np.ndarray] = [ident]
    frontier = ident[None]
    while frontier.shape[0]:
        products = F.matmul(frontier[:, None], G[None])
        fresh: List[np.ndarray] = []
        for x in products.reshape(-1, d, d):
            key = x.tobytes()
            if key in seen:
                continue
            seen[key] = len(elements)
            elements.append(x)
            fresh.append(x)
            if len(elements) > cap:
                raise ResourceLimitError(f"group too large: closure passed the cap of {cap} ({len(elements)} elements so far)")
        frontier = np.stack(fresh) if fresh else np.zeros((0, d, d), dtype=np.int64)
    return np.stack(elements)


class FiniteGroupAction:
    def __init__(
        self,
        algebra: GradedLieAlgebra,
        generators: Sequence[np.ndarray],
        carrier: str = "matrix",
        cap: int = DEFAULT_GROUP_CAP,
        label: str = "",
    ) -> None:
        if carrier not in ("matrix", "graded"):
            raise UsageError(f"unknown carrier {carrier!r}")
        if carrier == "matrix" and algebra.realisation is None:
            raise UsageError("matrix carriers need a matrix-realised algebra")
        self.algebra = algebra
        self.field = algebra.field
        self.carrier = carrier
        self.cap = cap
        self.label = label
        self.generators = [np.asarray(g, dtype=np.int64) for g in generators]

        self._offsets = np.cumsum([0] + [algebra.dims[i] for i in range(algebra.n)])
        self._coord_pivots: Dict[int, Tuple[List[int], np.ndarray]] = {}
        self._cache: Dict[Tuple[int, str], np.ndarray] = {}
        self._partitions: Dict[Tuple[int, str], np.ndarray] = {}

        for g in self.generators:
            self._check_automorphism(g)
        self.elements = close_generators(self.field, self.generators, cap)
        self._index = {x.tobytes(): k for k, x in enumerate(self.elements)}
        console.info("gact", f"closed {label or 'group'}: order {self.order}")

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    # -- per-degree action matrices -------------------------------------------------

    def _coordinate_map(self, i: int) -> Tuple[List[int], np.ndarray]:
        # pivot entries P of the flattened basis with an invertible square block S:
        # coords(X) = X_flat[P] @ S^{-1}
        if i not in self._coord_pivots:
            A = self.algebra
            flat = A.realisation.basis[i].reshape(A.dims[i], -1)
            if A.dims[i] == 0:
                self._coord_pivots[i] = ([], np.zeros((0, 0), dtype=np.int64))
            else:
                _, pivots = rref(self.field, flat)
                self._coord_pivots[i] = (pivots, inverse(self.field, flat[:, pivots]))
        return self._coord_pivots[i]

    def _adjoint_matrices(self, i: int, elems: np.ndarray) -> np.ndarray:
        A, F = self.algebra, self.field
        N = A.dims[i]
        if self.carrier == "graded":
            lo, hi = self._offsets[i], self._offsets[i + 1]
            return elems[:, lo:hi, lo:hi]
        if N == 0:
            return np.zeros((elems.shape[0], 0, 0), dtype=np.int64)
        basis = A.realisation.basis[i]
        inv = batched_inverse(F, elems)
        conj = F.matmul(F.matmul(elems[:, None], basis[None]), inv[:, None])  # (B, N, m, m)
        pivots, S_inv = self._coordinate_map(i)
        flat = conj.reshape(conj.shape[0], N, -1)[:, :, pivots]
        rows = F.matmul(flat, S_inv)  # (B, N_basis, N_coords): image of basis b in row b
        return np.transpose(rows, (0, 2, 1))

    def matrices(self, degree: int, side: str = ADJOINT) -> np.ndarray:
        """Action matrices (|G|, N, N) on coordinate columns of g_i or g_i^*."""
        i = self.algebra.deg(degree)
        key = (i, side)
        if key not in self._cache:
            if side == ADJOINT:
                parts = [
                    self._adjoint_matrices(i, self.elements[s : s + CHUNK])
                    for s in range(0, self.order, CHUNK)
                ]
                self._cache[key] = np.concatenate(parts)
            elif side == COADJOINT:
                F, A = self.field, self.algebra
                adj = self.matrices(A.neg(i), ADJOINT)
                self._cache[key] = F.matmul(F.matmul(A.G[i][None], adj), A.Ginv[i][None])
            else:
                raise UsageError(f"unknown side {side!r}")
        return self._cache[key]

    def _check_automorphism(self, g: np.ndarray) -> None:
        A, F = self.algebra, self.field
        mats = {i: self._adjoint_matrices(i, g[None])[0] for i in range(A.n)}
        for i in range(A.n):
            if A.dims[i] and rank(F, mats[i]) != A.dims[i]:
                raise UsageError(f"generator is not invertible on g_{i}")
            o = A.neg(i)
            # B(gx, gy) = B(x, y)
            lhs = F.matmul(F.matmul(mats[i].T, A.G[i]), mats[o])
            if not np.array_equal(lhs, A.G[i]):
                raise InvariantViolation("generator does not preserve the form", {"degree": i})
            for j in range(A.n):
                l = (i + j) % A.n
                if not (A.dims[i] and A.dims[j] and A.dims[l]):
                    continue
                # g[x_a, x_b] = [g x_a, g x_b]
                left = F.einsum("abc,dc->abd", A.C[(i, j)], mats[l])
                right = F.einsum("ea,fb,efd->abd", mats[i], mats[j], A.C[(i, j)])
                if not np.array_equal(left, right):
                    raise InvariantViolation(
                        "generator is not a Lie algebra automorphism", {"degrees": [i, j]}
                    )

    # -- points ------------------------------------------------------------------------

    def act(self, g: int, degree: int, coords, side: str = ADJOINT) -> np.ndarray:
        M = self.matrices(degree, side)[g]
        return self.field.matmul(M, np.asarray(coords, dtype=np.int64)[:, None])[:, 0]

    def images(self, degree: int, coords, side: str = ADJOINT) -> Iterator[np.ndarray]:
        """Chunks of indices of g.v for every group element g, in element order."""
        A, F = self.algebra, self.field
        v = np.asarray(coords, dtype=np.int64)
        mats = self.matrices(degree, side)
        for s in range(0, self.order, CHUNK):
            block = F.matmul(mats[s : s + CHUNK], v[None, :, None])[..., 0]
            yield A.encode(block)

    def permutation(self, g: int, degree: int, side: str = ADJOINT) -> np.ndarray:
        """perm[x] = index of g.x over every point x of the piece."""
        A, F = self.algebra, self.field
        pts = A.piece_points(degree)
        M = self.matrices(degree, side)[g]
        return A.encode(F.matmul(pts, M.T))

    def generator_indices(self) -> List[int]:
        return sorted({self._index[g.tobytes()] for g in self.generators})

    def inverse_index(self, g: int) -> int:
        inv = inverse(self.field, self.elements[g])
        return self._index[inv.tobytes()]

    # -- orbits ----------------------------------------------------------------------------

    def orbit_of(self, v: Union[PiecePoint, DualPoint]) -> OrbitT:
        side = COADJOINT if isinstance(v, DualPoint) else ADJOINT
        idx = np.unique(np.concatenate(list(self.images(v.degree, v.vector(), side))))
        return OrbitT(v.degree, side, tuple(int(x) for x in idx))

    def orbit_labels(self, degree: int, side: str = ADJOINT) -> np.ndarray:
        """labels[x] = least index in the orbit of x (label propagation over generators)."""
        i = self.algebra.deg(degree)
        key = (i, side)
        if key not in self._partitions:
            perms = [self.permutation(g, i, side) for g in self.generator_indices()]
            labels = np.arange(self.algebra.piece_size(i), dtype=np.int64)
            while True:
                new = labels
                for perm in perms:
                    new = np.minimum(new, new[perm])
                    np.minimum.at(new, perm, new)
                new = new[new]
                if np.array_equal(new, labels):
                    break
                labels = new
            self._partitions[key] = labels
        return self._partitions[key]

    def orbit_partition(self, degree: int, side: str = ADJOINT, mask: Optional[np.ndarray] = None) -> List[OrbitT]:
        i = self.algebra.deg(degree)
        labels = self.orbit_labels(i, side)
        idx = np.arange(labels.shape[0], dtype=np.int64)
        if mask is not None:
            idx = idx[mask]
        order = np.lexsort((idx, labels[idx]))
        idx, lab = idx[order], labels[idx][order]
        cuts = np.flatnonzero(np.diff(lab)) + 1
        return [OrbitT(i, side, tuple(int(x) for x in grp)) for grp in np.split(idx, cuts) if grp.size]

    def nilpotent_mask(self, degree: int, side: str = ADJOINT) -> np.ndarray:
        A = self.algebra
        i = A.deg(degree)
        pts = A.piece_points(i)
        if side == COADJOINT:
            return A.nilpotent_mask(A.neg(i), A.eta(i, pts))
        return A.nilpotent_mask(i, pts)

    def nilpotent_orbits(self, degree: int, side: str = ADJOINT) -> List[OrbitT]:
        return self.orbit_partition(degree, side, self.nilpotent_mask(degree, side))

    def orbit_containing(self, degree: int, index: int, side: str = ADJOINT) -> OrbitT:
        labels = self.orbit_labels(degree, side)
        members = np.flatnonzero(labels == labels[int(index)])
        return OrbitT(self.algebra.deg(degree), side, tuple(int(x) for x in members))

    def check_coadjoint_contragredient(self, degree: int) -> None:
        """(g.alpha)(v) = alpha(g^{-1} v) for every element."""
        i = self.algebra.deg(degree)
        D = self.matrices(i, COADJOINT)
        adj = self.matrices(i, ADJOINT)
        inv = np.array([self.inverse_index(g) for g in range(self.order)], dtype=np.int64)
        bad = np.flatnonzero(np.any(D != np.transpose(adj[inv], (0, 2, 1)), axis=(1, 2)))
        if bad.size:
            raise InvariantViolation(
                "coadjoint action is not the contragredient of the adjoint action",
                {"degree": i, "element": int(bad[0])},
            )

    # -- serialisation ----------------------------------------------------------------------

    def describe(self) -> dict:
        return {"label": self.label, "carrier": self.carrier, "order": self.order, "generators": len(self.generators)}

    def generators_json(self) -> dict:
        return {"carrier": self.carrier, "generators": [g.tolist() for g in self.generators]}

    @classmethod
    def from_json(
        cls, algebra: GradedLieAlgebra, obj: dict, cap: int = DEFAULT_GROUP_CAP
    ) -> "FiniteGroupAction":
        carrier = str(obj.get("carrier", "graded"))
        gens: List[np.ndarray] = []
        try:
            for g in obj["generators"]:
                if carrier == "graded" and isinstance(g, dict):
                    blocks = [np.asarray(g.get(str(i), np.zeros((0, 0))), dtype=np.int64).reshape(
                        algebra.dims[i], algebra.dims[i]) for i in range(algebra.n)]
                    gens.append(_block_diag(blocks))
                else:
                    gens.append(np.asarray(g, dtype=np.int64))
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"malformed generator file: {e}") from e
        return cls(algebra, gens, carrier, cap, str(obj.get("label", "")))

    @classmethod
    def load(cls, algebra: GradedLieAlgebra, path: Union[str, Path], cap: int = DEFAULT_GROUP_CAP) -> "FiniteGroupAction":
        try:
            obj = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read generator file {path}: {e}") from e
        return cls.from_json(algebra, obj, cap)


def _block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size), dtype=np.int64)
    at = 0
    for b in blocks:
        out[at : at + b.shape[0], at : at + b.shape[0]] = b
        at += b.shape[0]
    return out


def orbit_of(group: FiniteGroupAction, v: Union[PiecePoint, DualPoint]) -> OrbitT:
    return group.orbit_of(v)


def nilpotent_orbits(group: FiniteGroupAction, degree: int, side: str = ADJOINT) -> List[OrbitT]:
    return group.nilpotent_orbits(degree, side)
