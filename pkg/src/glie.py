"""
Z/n-graded Lie algebras over F_q given by structure constants.

Degrees are 0..n-1. A point of the piece g_i is a coordinate row of length
N_i in the fixed basis x^{(i)}_0, ..., x^{(i)}_{N_i-1}; its index is the
mixed-radix number sum c_a q^a. A dual point alpha of g_i^* is stored by its
values on that basis, so <alpha, v> is the coordinate dot product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from .errors import InvariantViolation, NoNilpotencyOracle, ResourceLimitError, UsageError
from .ffield import FiniteField
from .linalg import coordinates, decode_points, encode_points, inverse, rank

MAX_PIECE_POINTS = 1 << 32


@dataclass(frozen=True)
class MatrixRealisation:
    """Embedding of every basis vector as an m x m matrix (the defining representation)."""

    dim: int
    basis: Dict[int, np.ndarray]  # degree -> (N_i, m, m)
    family: str = "gl"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "family": self.family,
            "basis": {str(i): b.tolist() for i, b in sorted(self.basis.items())},
        }


@dataclass(frozen=True)
class PiecePoint:
    degree: int
    coords: Tuple[int, ...]
    algebra: Optional["GradedLieAlgebra"] = dc_field(default=None, compare=False, repr=False)

    @property
    def index(self) -> int:
        return int(encode_points(self.algebra.field.q, np.array(self.coords, dtype=np.int64)))

    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)


@dataclass(frozen=True)
class DualPoint:
    degree: int
    coords: Tuple[int, ...]
    algebra: Optional["GradedLieAlgebra"] = dc_field(default=None, compare=False, repr=False)

    @property
    def index(self) -> int:
        return int(encode_points(self.algebra.field.q, np.array(self.coords, dtype=np.int64)))

    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)


class GradedLieAlgebra:
    def __init__(
        self,
        F: FiniteField,
        n: int,
        dims: Dict[int, int],
        bracket: Dict[Tuple[int, int], np.ndarray],
        form: Dict[int, np.ndarray],
        realisation: Optional[MatrixRealisation] = None,
        label: str = "",
    ) -> None:
        if n < 1:
            raise UsageError(f"grading modulus must be >= 1, got {n}")
        self.field = F
        self.n = int(n)
        self.dims = {i: int(dims.get(i, 0)) for i in range(self.n)}
        self.label = label
        self.realisation = realisation

        self.C: Dict[Tuple[int, int], np.ndarray] = {}
        for i in range(self.n):
            for j in range(self.n):
                shape = (self.dims[i], self.dims[j], self.dims[(i + j) % self.n])
                tab = bracket.get((i, j))
                if tab is None:
                    tab = np.zeros(shape, dtype=np.int64)
                tab = np.asarray(tab, dtype=np.int64)
                if tab.shape != shape:
                    raise UsageError(f"bracket table ({i},{j}) has shape {tab.shape}, expected {shape}")
                self.C[(i, j)] = tab

        self.G: Dict[int, np.ndarray] = {}
        self.Ginv: Dict[int, np.ndarray] = {}
        for i in range(self.n):
            shape = (self.dims[i], self.dims[self.neg(i)])
            g = np.asarray(form.get(i, np.zeros(shape, dtype=np.int64)), dtype=np.int64).reshape(shape)
            self.G[i] = g
            if shape[0] != shape[1] or rank(F, g) != shape[0]:
                raise InvariantViolation(
                    f"Gram matrix pairing g_{i} with g_{self.neg(i)} is not invertible",
                    {"degree": i},
                )
            self.Ginv[i] = inverse(F, g)

    # -- bookkeeping -----------------------------------------------------------

    def neg(self, i: int) -> int:
        return (-i) % self.n

    def deg(self, i: int) -> int:
        return i % self.n

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())

    def piece_size(self, i: int) -> int:
        size = self.field.q ** self.dims[self.deg(i)]
        if size > MAX_PIECE_POINTS:
            raise ResourceLimitError(f"piece g_{i} has {size} points, over the enumeration cap 2^32")
        return size

    def piece_points(self, i: int) -> np.ndarray:
        """All points of g_i as coordinate rows, in index order."""
        i = self.deg(i)
        size = self.piece_size(i)
        return decode_points(self.field.q, np.arange(size, dtype=np.int64), self.dims[i])

    def encode(self, coords) -> np.ndarray:
        return encode_points(self.field.q, coords)

    def decode(self, i: int, indices) -> np.ndarray:
        return decode_points(self.field.q, indices, self.dims[self.deg(i)])

    def point(self, i: int, coords: Iterable[int]) -> PiecePoint:
        i = self.deg(i)
        c = tuple(int(x) for x in coords)
        if len(c) != self.dims[i]:
            raise UsageError(f"g_{i} has dimension {self.dims[i]}, got {len(c)} coordinates")
        return PiecePoint(i, c, self)

    def point_at(self, i: int, index: int) -> PiecePoint:
        return self.point(i, self.decode(i, index))

    def dual_point(self, i: int, coords: Iterable[int]) -> DualPoint:
        i = self.deg(i)
        c = tuple(int(x) for x in coords)
        if len(c) != self.dims[i]:
            raise UsageError(f"g_{i}^* has dimension {self.dims[i]}, got {len(c)} coordinates")
        return DualPoint(i, c, self)

    def dual_point_at(self, i: int, index: int) -> DualPoint:
        return self.dual_point(i, self.decode(i, index))

    def basis_vector(self, i: int, a: int) -> np.ndarray:
        v = np.zeros(self.dims[self.deg(i)], dtype=np.int64)
        v[a] = 1
        return v

    def _own(self, *pts: Union[PiecePoint, DualPoint]) -> None:
        for pt in pts:
            if pt.algebra is not None and pt.algebra is not self:
                raise UsageError("point belongs to a different algebra")

    # -- bracket and form -------------------------------------------------------------

    def bracket_coords(self, i: int, j: int, x, y) -> np.ndarray:
        i, j = self.deg(i), self.deg(j)
        return self.field.einsum("a,b,abc->c", x, y, self.C[(i, j)])

    def bracket(self, x: PiecePoint, y: PiecePoint) -> PiecePoint:
        self._own(x, y)
        return self.point(x.degree + y.degree, self.bracket_coords(x.degree, y.degree, x.vector(), y.vector()))

    def ad_matrix(self, i: int, j: int, x) -> np.ndarray:
        """Matrix of ad(x): g_j -> g_{i+j} for x in g_i (columns are images of basis vectors)."""
        i, j = self.deg(i), self.deg(j)
        return self.field.einsum("a,abc->cb", x, self.C[(i, j)])

    def form(self, i: int, x, y) -> int:
        """B(x, y) for x in g_i and y in g_{-i}."""
        F = self.field
        return int(F.dot(x, F.matmul(self.G[self.deg(i)], np.asarray(y, dtype=np.int64)[:, None])[:, 0]))

    # -- eta_B -------------------------------------------------------------------------

    def eta(self, i: int, alpha) -> np.ndarray:
        """Coordinates in g_{-i} of eta_B(alpha) for alpha in g_i^*; rows are vectorised."""
        alpha = np.asarray(alpha, dtype=np.int64)
        return self.field.matmul(alpha, self.Ginv[self.deg(i)].T)

    def eta_inv(self, i: int, y) -> np.ndarray:
        """alpha in g_i^* with eta_B(alpha) = y, for y in g_{-i}; rows are vectorised."""
        y = np.asarray(y, dtype=np.int64)
        return self.field.matmul(y, self.G[self.deg(i)].T)

    def eta_B(self, alpha: DualPoint) -> PiecePoint:
        self._own(alpha)
        return self.point(self.neg(alpha.degree), self.eta(alpha.degree, alpha.vector()))

    def eta_B_inverse(self, v: PiecePoint) -> DualPoint:
        self._own(v)
        i = self.neg(v.degree)
        return self.dual_point(i, self.eta_inv(i, v.vector()))

    def pair(self, alpha: DualPoint, v: PiecePoint) -> int:
        if alpha.degree != v.degree:
            raise UsageError(f"cannot pair g_{alpha.degree}^* with g_{v.degree}")
        return int(self.field.dot(alpha.vector(), v.vector()))

    # -- matrix realisation ------------------------------------------------------------

    def _require_realisation(self) -> MatrixRealisation:
        if self.realisation is None:
            raise NoNilpotencyOracle(self.label)
        return self.realisation

    def to_matrix(self, i: int, coords) -> np.ndarray:
        """Matrix of a point (or a stack of points) in the defining representation."""
        R = self._require_realisation()
        basis = R.basis[self.deg(i)]
        coords = np.asarray(coords, dtype=np.int64)
        if basis.shape[0] == 0:
            return np.zeros(coords.shape[:-1] + (R.dim, R.dim), dtype=np.int64)
        if coords.ndim == 1:
            return self.field.einsum("a,axy->xy", coords, basis)
        return self.field.einsum("za,axy->zxy", coords, basis)

    def from_matrix(self, i: int, X) -> Optional[np.ndarray]:
        """Coordinates of X in g_i, or None when X is not in the piece."""
        R = self._require_realisation()
        i = self.deg(i)
        flat = R.basis[i].reshape(self.dims[i], -1)
        return coordinates(self.field, flat, np.asarray(X, dtype=np.int64).reshape(-1))

    def nilpotent_mask(self, i: int, coords) -> np.ndarray:
        R = self._require_realisation()
        X = self.to_matrix(i, np.atleast_2d(np.asarray(coords, dtype=np.int64)))
        P = X
        power = 1
        while power < R.dim:
            P = self.field.matmul(P, P)
            power *= 2
        return ~np.any(P.reshape(P.shape[0], -1), axis=1)

    def is_nilpotent(self, v: PiecePoint) -> bool:
        self._own(v)
        return bool(self.nilpotent_mask(v.degree, v.vector())[0])

    # -- validation -----------------------------------------------------------------------

    def validate(self) -> None:
        """Antisymmetry, Jacobi, form symmetry and invariance, realisation consistency."""
        F, n = self.field, self.n
        for i in range(n):
            for j in range(n):
                sym = F.add(self.C[(i, j)], np.transpose(self.C[(j, i)], (1, 0, 2)))
                if np.any(sym):
                    bad = np.argwhere(sym)[0]
                    raise InvariantViolation(
                        "bracket is not antisymmetric",
                        {"degrees": [i, j], "basis": [int(bad[0]), int(bad[1])]},
                    )
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    if not (self.dims[i] and self.dims[j] and self.dims[l]):
                        continue
                    t1 = F.einsum("bcd,ade->abce", self.C[(j, l)], self.C[(i, (j + l) % n)])
                    t2 = F.einsum("cad,bde->abce", self.C[(l, i)], self.C[(j, (l + i) % n)])
                    t3 = F.einsum("abd,cde->abce", self.C[(i, j)], self.C[(l, (i + j) % n)])
                    total = F.add(F.add(t1, t2), t3)
                    if np.any(total):
                        a, b, c, _ = np.argwhere(total)[0]
                        raise InvariantViolation(
                            "Jacobi identity fails",
                            {"degrees": [i, j, l], "basis": [int(a), int(b), int(c)]},
                        )
        for i in range(n):
            if not np.array_equal(self.G[i], self.G[self.neg(i)].T):
                raise InvariantViolation("bilinear form is not symmetric", {"degree": i})
        for s in range(n):
            for i in range(n):
                o = (-i - s) % n
                if not (self.dims[s] and self.dims[i] and self.dims[o]):
                    continue
                t1 = F.einsum("cad,db->cab", self.C[(s, i)], self.G[(s + i) % n])
                t2 = F.einsum("cbd,ad->cab", self.C[(s, o)], self.G[i])
                total = F.add(t1, t2)
                if np.any(total):
                    c, a, b = np.argwhere(total)[0]
                    raise InvariantViolation(
                        "bilinear form is not invariant",
                        {"degrees": [s, i, o], "basis": [int(c), int(a), int(b)]},
                    )
        if self.realisation is not None:
            self._validate_realisation()

    def _validate_realisation(self) -> None:
        F, n = self.field, self.n
        for i in range(n):
            for j in range(n):
                for a in range(self.dims[i]):
                    X = self.realisation.basis[i][a]
                    for b in range(self.dims[j]):
                        Y = self.realisation.basis[j][b]
                        comm = F.sub(F.matmul(X, Y), F.matmul(Y, X))
                        got = self.to_matrix(i + j, self.C[(i, j)][a, b])
                        if not np.array_equal(comm, got):
                            raise InvariantViolation(
                                "bracket disagrees with the matrix commutator",
                                {"degrees": [i, j], "basis": [a, b]},
                            )

    # -- serialisation -----------------------------------------------------------------------

    def to_json(self) -> dict:
        entries: List[List[Any]] = []
        for (i, j), tab in sorted(self.C.items()):
            for a, b in zip(*np.nonzero(tab.any(axis=2))):
                entries.append([i, j, int(a), int(b), [int(c) for c in tab[a, b]]])
        out: Dict[str, Any] = {
            "label": self.label,
            "p": self.field.p,
            "k": self.field.k,
            "modulus": list(self.field.modulus),
            "n": self.n,
            "dims": {str(i): d for i, d in self.dims.items()},
            "bracket": entries,
            "form": {str(i): g.tolist() for i, g in self.G.items()},
        }
        if self.realisation is not None:
            out["realisation"] = self.realisation.to_json()
        return out

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "GradedLieAlgebra":
        from .ffield import field

        try:
            p, k = int(obj["p"]), int(obj.get("k", 1))
            modulus = obj.get("modulus")
            F = field(p, k, tuple(modulus) if modulus and k > 1 else None)
            n = int(obj["n"])
            dims = {int(i): int(d) for i, d in obj["dims"].items()}
            tables: Dict[Tuple[int, int], np.ndarray] = {}
            for i in range(n):
                for j in range(n):
                    tables[(i, j)] = np.zeros(
                        (dims.get(i, 0), dims.get(j, 0), dims.get((i + j) % n, 0)), dtype=np.int64
                    )
            for i, j, a, b, coeffs in obj.get("bracket", []):
                tables[(int(i) % n, int(j) % n)][int(a), int(b)] = np.asarray(coeffs, dtype=np.int64)
            form = {int(i): np.asarray(g, dtype=np.int64) for i, g in obj["form"].items()}
            realisation = None
            if obj.get("realisation"):
                r = obj["realisation"]
                m = int(r["dim"])
                basis = {
                    int(i): np.asarray(b, dtype=np.int64).reshape(-1, m, m) for i, b in r["basis"].items()
                }
                for i in range(n):
                    basis.setdefault(i, np.zeros((0, m, m), dtype=np.int64))
                realisation = MatrixRealisation(m, basis, str(r.get("family", "gl")))
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"malformed algebra description: {e}") from e
        return cls(F, n, dims, tables, form, realisation, str(obj.get("label", "")))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "GradedLieAlgebra":
        try:
            obj = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read algebra file {path}: {e}") from e
        return cls.from_json(obj)

    def describe(self) -> dict:
        return {
            "label": self.label,
            "field": self.field.describe(),
            "n": self.n,
            "dims": {str(i): d for i, d in self.dims.items()},
            "realised": self.realisation is not None,
        }

    def __repr__(self) -> str:
        return f"GradedLieAlgebra({self.label or 'anonymous'}, q={self.field.q}, n={self.n}, dims={self.dims})"


def bracket(x: PiecePoint, y: PiecePoint) -> PiecePoint:
    if x.algebra is None or x.algebra is not y.algebra:
        raise UsageError("bracket of points from different algebras")
    return x.algebra.bracket(x, y)


def eta_B(alpha: DualPoint) -> PiecePoint:
    return alpha.algebra.eta_B(alpha)


def is_nilpotent(v: PiecePoint) -> bool:
    return v.algebra.is_nilpotent(v)
