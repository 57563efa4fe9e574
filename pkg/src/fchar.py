"""
Functions on one graded piece (or its dual) with exact cyclotomic values.

A PieceFunction stores q^{e/2} * sum_t T[x, t] z^t with one shared exponent e
and an object-dtype table T of shape (q^N, p) in the redundant basis
1, z, ..., z^{p-1}. The primal side is indexed by points of g_i, the dual
side by points of g_i^*; the pairing is the coordinate dot product, so the
Fourier transform maps primal(i) <-> dual(i).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from .cyclotomic import ScaledCyclotomic
from .errors import InvariantViolation, NotACharacter, ResourceLimitError, UsageError
from .gact import COADJOINT, FiniteGroupAction, OrbitT
from .glie import GradedLieAlgebra

PRIMAL = "primal"
DUAL = "dual"
MAX_TABLE = 1 << 25
NAIVE_LIMIT = 1000


def _other(side: str) -> str:
    return DUAL if side == PRIMAL else PRIMAL


class PieceFunction:
    def __init__(
        self, algebra: GradedLieAlgebra, degree: int, side: str, table: np.ndarray, half_q_exp: int = 0
    ) -> None:
        if side not in (PRIMAL, DUAL):
            raise UsageError(f"unknown side {side!r}")
        self.algebra = algebra
        self.degree = algebra.deg(degree)
        self.side = side
        size = algebra.piece_size(self.degree)
        if size > MAX_TABLE:
            raise ResourceLimitError(f"piece g_{self.degree} has {size} points, over the table cap 2^25")
        table = np.asarray(table, dtype=object)
        if table.shape != (size, self.p):
            raise UsageError(f"table shape {table.shape} does not match ({size}, {self.p})")
        self.table = table
        self.half_q_exp = int(half_q_exp)

    # -- constructors -------------------------------------------------------------------

    @classmethod
    def zeros(cls, algebra: GradedLieAlgebra, degree: int, side: str = PRIMAL) -> "PieceFunction":
        size = algebra.piece_size(degree)
        return cls(algebra, degree, side, np.zeros((size, algebra.field.p), dtype=object))

    @classmethod
    def indicator(
        cls, algebra: GradedLieAlgebra, degree: int, indices: Iterable[int], side: str = PRIMAL, weight: int = 1
    ) -> "PieceFunction":
        f = cls.zeros(algebra, degree, side)
        idx = np.fromiter((int(i) for i in indices), dtype=np.int64)
        f.table[idx, 0] = weight
        return f

    @classmethod
    def constant(cls, algebra: GradedLieAlgebra, degree: int, side: str = PRIMAL, value: int = 1) -> "PieceFunction":
        f = cls.zeros(algebra, degree, side)
        f.table[:, 0] = value
        return f

    @classmethod
    def character(cls, algebra: GradedLieAlgebra, degree: int, coords, side: str = PRIMAL) -> "PieceFunction":
        """x -> chi(<c, x>) for fixed c on the opposite side."""
        F = algebra.field
        pts = algebra.piece_points(degree)
        t = F.trace(F.matmul(pts, np.asarray(coords, dtype=np.int64)[:, None])[:, 0])
        f = cls.zeros(algebra, degree, side)
        f.table[np.arange(pts.shape[0]), t] = 1
        return f

    @classmethod
    def from_values(
        cls, algebra: GradedLieAlgebra, degree: int, values: Sequence[ScaledCyclotomic], side: str = PRIMAL
    ) -> "PieceFunction":
        values = list(values)
        exps = {v.half_q_exp for v in values if not v.is_zero()}
        e = min(exps) if exps else 0
        f = cls.zeros(algebra, degree, side)
        f.half_q_exp = e
        for x, v in enumerate(values):
            if v.is_zero():
                continue
            row = np.array([list(v.coeffs) + [0] * (f.p - len(v.coeffs))], dtype=object)
            f.table[x] = f._lower_to(row, v.half_q_exp, e)[0]
        return f

    # -- basics ---------------------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.algebra.field.p

    @property
    def q(self) -> int:
        return self.algebra.field.q

    @property
    def ring(self):
        return self.algebra.field.ring

    @property
    def size(self) -> int:
        return int(self.table.shape[0])

    @property
    def dim(self) -> int:
        return self.algebra.dims[self.degree]

    def _like(self, table: np.ndarray, half_q_exp: int, side: Optional[str] = None) -> "PieceFunction":
        return PieceFunction(self.algebra, self.degree, side or self.side, table, half_q_exp)

    def value(self, x: int) -> ScaledCyclotomic:
        return ScaledCyclotomic(self.ring, [int(c) for c in self.table[int(x)]], self.half_q_exp)

    def values(self) -> List[ScaledCyclotomic]:
        return [self.value(x) for x in range(self.size)]

    def reduced(self) -> np.ndarray:
        """Coefficients in the basis 1..z^{p-2}; rows are zero exactly where the value is zero."""
        return self.table[:, : self.p - 1] - self.table[:, self.p - 1 : self.p]

    def support(self) -> np.ndarray:
        return np.flatnonzero(np.any(self.reduced() != 0, axis=1))

    def is_zero(self) -> bool:
        return self.support().size == 0

    def _convolve(self, table: np.ndarray, coeffs: Sequence[int]) -> np.ndarray:
        out = np.zeros_like(table)
        for a, c in enumerate(coeffs):
            if c:
                out = out + int(c) * np.roll(table, a, axis=1)
        return out

    def _lower_to(self, table: np.ndarray, e_from: int, e_to: int) -> np.ndarray:
        """Rewrite q^{e_from/2} T as q^{e_to/2} T' for e_to <= e_from."""
        diff = e_from - e_to
        if diff < 0:
            raise ValueError("can only lower the exponent")
        if diff % 2:
            s = self.ring.sqrt_q
            if s is None:
                raise ArithmeticError(
                    f"cannot align q^({e_from}/2) with q^({e_to}/2): sqrt(q) is not in Q(zeta_{self.p})"
                )
            table = self._convolve(table, s)
            diff -= 1
        if diff:
            table = table * (self.q ** (diff // 2))
        return table

    def _aligned(self, other: "PieceFunction"):
        if (other.degree, other.side) != (self.degree, self.side) or other.algebra is not self.algebra:
            raise UsageError("functions live on different pieces")
        e = min(self.half_q_exp, other.half_q_exp)
        return (
            self._lower_to(self.table, self.half_q_exp, e),
            other._lower_to(other.table, other.half_q_exp, e),
            e,
        )

    def __add__(self, other: "PieceFunction") -> "PieceFunction":
        a, b, e = self._aligned(other)
        return self._like(a + b, e)

    def __sub__(self, other: "PieceFunction") -> "PieceFunction":
        a, b, e = self._aligned(other)
        return self._like(a - b, e)

    def __neg__(self) -> "PieceFunction":
        return self._like(-self.table, self.half_q_exp)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PieceFunction):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except UsageError:
            return False

    __hash__ = None  # type: ignore[assignment]

    def scale(self, c: int) -> "PieceFunction":
        return self._like(self.table * int(c), self.half_q_exp)

    def scale_q(self, half_q_exp: int) -> "PieceFunction":
        return self._like(self.table.copy(), self.half_q_exp + half_q_exp)

    def times(self, s: ScaledCyclotomic) -> "PieceFunction":
        return self._like(self._convolve(self.table, s.coeffs), self.half_q_exp + s.half_q_exp)

    def conj(self) -> "PieceFunction":
        cols = [(-t) % self.p for t in range(self.p)]
        return self._like(self.table[:, cols], self.half_q_exp)

    def negate(self) -> "PieceFunction":
        """v -> f(-v)."""
        A = self.algebra
        pts = A.piece_points(self.degree)
        neg_idx = A.encode(A.field.neg(pts))
        return self._like(self.table[neg_idx], self.half_q_exp)

    def restrict(self, indices: Iterable[int]) -> "PieceFunction":
        keep = np.zeros(self.size, dtype=bool)
        keep[np.fromiter((int(i) for i in indices), dtype=np.int64)] = True
        table = self.table.copy()
        table[~keep] = 0
        return self._like(table, self.half_q_exp)

    # -- serialisation -----------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "side": self.side,
            "values": [v.to_json() for v in self.values()],
        }

    @classmethod
    def from_json(cls, algebra: GradedLieAlgebra, obj: dict) -> "PieceFunction":
        ring = algebra.field.ring
        try:
            vals = [ScaledCyclotomic.from_json(ring, v) for v in obj["values"]]
            return cls.from_values(algebra, int(obj["degree"]), vals, str(obj.get("side", PRIMAL)))
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"malformed function table: {e}") from e

    def __repr__(self) -> str:
        return f"PieceFunction(g_{self.degree} {self.side}, support={self.support().size}/{self.size})"


# -- Fourier transform --------------------------------------------------------------------


def _dense_kernel(A: GradedLieAlgebra, degree: int) -> np.ndarray:
    F = A.field
    pts = A.piece_points(degree)
    return F.trace(F.matmul(pts, pts.T))


def _as_int64(table: np.ndarray, terms: int) -> Optional[np.ndarray]:
    if table.size == 0:
        return table.astype(np.int64)
    bound = max(abs(int(table.max())), abs(int(table.min())))
    if bound * max(terms, 1) < (1 << 62):
        return table.astype(np.int64)
    return None


def _ft_naive(f: PieceFunction) -> np.ndarray:
    K = _dense_kernel(f.algebra, f.degree)
    p = f.p
    T = _as_int64(f.table, f.size)
    src = T if T is not None else f.table
    rows = np.arange(f.size)[None, :]
    out = np.zeros((f.size, p), dtype=object)
    for s in range(p):
        gathered = src[rows, (s - K) % p]  # [alpha, v] -> T[v, s - <alpha, v>]
        out[:, s] = gathered.sum(axis=1).astype(object) if T is not None else gathered.sum(axis=1)
    return out


def _ft_decimated(f: PieceFunction) -> np.ndarray:
    F = f.algebra.field
    q, p, N = f.q, f.p, f.dim
    elems = F.elements()
    K1 = F.trace(F.mul(elems[:, None], elems[None, :]))
    X = f.table.reshape((q,) * N + (p,))
    for axis in range(N):
        X = np.moveaxis(X, axis, 0)
        Y = np.zeros_like(X)
        for beta in range(q):
            acc = np.zeros_like(X[0])
            for v in range(q):
                acc = acc + np.roll(X[v], int(K1[beta, v]), axis=-1)
            Y[beta] = acc
        X = np.moveaxis(Y, 0, axis)
    return X.reshape(f.size, p)


def ft(f: PieceFunction, method: str = "auto") -> PieceFunction:
    """FT(f)(a) = q^{-N/2} sum_v chi(<a, v>) f(v)."""
    if method == "auto":
        method = "naive" if f.size <= NAIVE_LIMIT else "decimated"
    if method == "naive":
        table = _ft_naive(f)
    elif method == "decimated":
        table = _ft_decimated(f)
    else:
        raise UsageError(f"unknown FT method {method!r}")
    return f._like(table, f.half_q_exp - f.dim, _other(f.side))


def inner(f: PieceFunction, g: PieceFunction) -> ScaledCyclotomic:
    """q^{-N} sum_v conj(f(v)) g(v)."""
    if (f.degree, f.side) != (g.degree, g.side) or f.algebra is not g.algebra:
        raise UsageError("inner product of functions on different pieces")
    p = f.p
    acc = np.zeros(p, dtype=object)
    for a in range(p):
        col = f.table[:, a]
        if not np.any(col != 0):
            continue
        acc = acc + (col[:, None] * np.roll(g.table, -a, axis=1)).sum(axis=0)
    return ScaledCyclotomic(f.ring, [int(c) for c in acc], f.half_q_exp + g.half_q_exp - 2 * f.dim)


# -- characters -----------------------------------------------------------------------------


@dataclass
class CharacterDecomposition:
    """f = sum over coadjoint orbits of c * chi_O; only nonzero multiplicities are kept."""

    degree: int
    multiplicities: Dict[int, int]
    orbits: Dict[int, OrbitT] = dc_field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return {"degree": self.degree, "multiplicities": {str(k): v for k, v in sorted(self.multiplicities.items())}}


def is_invariant_character(f: PieceFunction, group: FiniteGroupAction) -> CharacterDecomposition:
    if f.side != PRIMAL:
        raise UsageError("characters are functions on g_i, not on its dual")
    fhat = ft(f)
    reduced = fhat.reduced()
    N = f.dim
    mult: Dict[int, int] = {}
    orbits: Dict[int, OrbitT] = {}
    for orbit in group.orbit_partition(f.degree, COADJOINT):
        rows = reduced[list(orbit.points)]
        same = np.all(rows == rows[0], axis=1)
        if not np.all(same):
            bad = orbit.points[int(np.argmin(same))]
            raise NotACharacter(
                "Fourier transform is not constant on a coadjoint orbit",
                {"degree": f.degree, "orbit": orbit.representative, "point": bad},
            )
        c = fhat.value(orbit.representative).scale_q(-N).rational_integer()
        if c is None or c < 0:
            raise NotACharacter(
                "Fourier transform is not in q^(N/2) N_0",
                {"degree": f.degree, "orbit": orbit.representative, "point": orbit.representative},
            )
        if c:
            mult[orbit.representative] = c
            orbits[orbit.representative] = orbit
    return CharacterDecomposition(f.degree, mult, orbits)


def negated_orbit(group: FiniteGroupAction, orbit: OrbitT) -> OrbitT:
    A = group.algebra
    rep = A.decode(orbit.degree, orbit.representative)
    neg = int(A.encode(A.field.neg(rep)))
    return group.orbit_containing(orbit.degree, neg, orbit.side)


def chi_orbit(group: FiniteGroupAction, orbit: OrbitT) -> PieceFunction:
    """chi_O = FT(q^{N/2} 1_{-O}), a function on g_i."""
    if orbit.side != COADJOINT:
        raise UsageError("chi_orbit takes a coadjoint orbit")
    A = group.algebra
    pts = A.decode(orbit.degree, np.array(orbit.points, dtype=np.int64))
    neg = A.encode(A.field.neg(pts))
    delta = PieceFunction.indicator(A, orbit.degree, neg, DUAL).scale_q(A.dims[orbit.degree])
    return ft(delta)


def check_chi_orbit(group: FiniteGroupAction, orbit: OrbitT, chi: Optional[PieceFunction] = None) -> None:
    """FT(chi_O) = q^{N/2} 1_O and conj(chi_O) = chi_{-O}."""
    A = group.algebra
    chi = chi or chi_orbit(group, orbit)
    N = A.dims[orbit.degree]
    expected = PieceFunction.indicator(A, orbit.degree, orbit.points, DUAL).scale_q(N)
    if ft(chi) != expected:
        raise InvariantViolation("FT(chi_O) is not q^(N/2) 1_O", {"orbit": orbit.representative})
    if chi.conj() != chi_orbit(group, negated_orbit(group, orbit)):
        raise InvariantViolation("conj(chi_O) is not chi_(-O)", {"orbit": orbit.representative})


def chi_gram(
    group: FiniteGroupAction, orbits: Sequence[OrbitT], chis: Optional[Sequence[PieceFunction]] = None
) -> List[List[int]]:
    """<chi_O, chi_O'> over every pair of orbits; |O| on the diagonal and 0 elsewhere."""
    chis = list(chis) if chis is not None else [chi_orbit(group, o) for o in orbits]
    n = len(orbits)
    gram = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            value = inner(chis[a], chis[b]).rational_integer()
            expected = orbits[a].size if a == b else 0
            if value != expected:
                raise InvariantViolation(
                    "orbit characters are not orthogonal with norm |O|",
                    {"orbits": [orbits[a].representative, orbits[b].representative], "inner": value},
                )
            gram[a][b] = gram[b][a] = value
    return gram


def combine(terms: Sequence[PieceFunction], coeffs: Sequence[int]) -> PieceFunction:
    if not terms:
        raise UsageError("nothing to combine")
    out = terms[0].scale(coeffs[0])
    for f, c in zip(terms[1:], coeffs[1:]):
        out = out + f.scale(c)
    return out
