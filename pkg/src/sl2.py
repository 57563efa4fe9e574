"""
Graded Jacobson-Morozov: sl2-triples through a nilpotent, the integer weight
grading they induce, Sigma-slices and Slodowy slices.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .errors import InvariantViolation, JMFailure, ResourceLimitError, WindowError
from .ffield import FiniteField
from .gact import COADJOINT, FiniteGroupAction
from .glie import DualPoint, GradedLieAlgebra, PiecePoint
from .linalg import (
    intersect,
    inverse,
    nullspace,
    rank,
    solve_affine,
    span_basis,
    span_points,
)

MAX_TRIPLE_ENUMERATION = 1 << 22


@dataclass(frozen=True)
class Sl2Triple:
    algebra: GradedLieAlgebra = dc_field(repr=False, compare=False)
    degree: int  # degree r of e
    e: Tuple[int, ...]
    h: Tuple[int, ...]
    f: Tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.e)

    def points(self) -> Tuple[PiecePoint, PiecePoint, PiecePoint]:
        A = self.algebra
        return A.point(self.degree, self.e), A.point(0, self.h), A.point(A.neg(self.degree), self.f)

    def check(self) -> None:
        A, F = self.algebra, self.algebra.field
        r, mr = A.deg(self.degree), A.neg(self.degree)
        e, h, f = (np.array(v, dtype=np.int64) for v in (self.e, self.h, self.f))
        ok = (
            np.array_equal(A.bracket_coords(0, r, h, e), F.mul(2, e))
            and np.array_equal(A.bracket_coords(0, mr, h, f), F.neg(F.mul(2, f)))
            and np.array_equal(A.bracket_coords(r, mr, e, f), h)
        )
        if not ok:
            raise JMFailure("triple relations fail", {"degree": r, "e": list(self.e)})

    def to_json(self) -> dict:
        return {"degree": self.degree, "e": list(self.e), "h": list(self.h), "f": list(self.f)}


def _jm_maps(A: GradedLieAlgebra, r: int, e: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """M1 = ad e: g_{-r} -> g_0 and M2 = ad e: g_0 -> g_r."""
    return A.ad_matrix(r, A.neg(r), e), A.ad_matrix(r, 0, e)


def complete_triple(A: GradedLieAlgebra, r: int, e) -> Sl2Triple:
    """Complete e in g_r to (e, h, f) with h in [e, g_{-r}].

    Underdetermined systems take the particular solution with every free
    variable zero, so the result is a function of e alone.
    """
    F = A.field
    r, mr = A.deg(r), A.neg(r)
    e = np.asarray(e, dtype=np.int64)
    if not e.any():
        return Sl2Triple(A, r, tuple(int(x) for x in e), (0,) * A.dims[0], (0,) * A.dims[mr])
    M1, M2 = _jm_maps(A, r, e)
    z, _ = solve_affine(F, F.matmul(M2, M1), F.neg(F.mul(2, e)))
    if z is None:
        raise JMFailure("no h in [e, g_-r] with [h, e] = 2e", {"degree": r, "e": e.tolist()})
    h = F.matmul(M1, z[:, None])[:, 0]
    H = A.ad_matrix(0, mr, h)
    shifted = F.add(H, F.mul(2, np.eye(A.dims[mr], dtype=np.int64)))
    system = np.concatenate([M1, shifted], axis=0)
    rhs = np.concatenate([h, np.zeros(A.dims[mr], dtype=np.int64)])
    f, _ = solve_affine(F, system, rhs)
    if f is None:
        raise JMFailure("no f with [e, f] = h and [h, f] = -2f", {"degree": r, "e": e.tolist()})
    t = Sl2Triple(A, r, tuple(int(x) for x in e), tuple(int(x) for x in h), tuple(int(x) for x in f))
    t.check()
    return t


def triples_through(A: GradedLieAlgebra, r: int, e) -> Iterator[Sl2Triple]:
    """Every graded triple (e, h, f) over F_q, by enumerating the affine solution set of [e,[e,f]] = -2e."""
    F = A.field
    r, mr = A.deg(r), A.neg(r)
    e = np.asarray(e, dtype=np.int64)
    if not e.any():
        yield complete_triple(A, r, e)
        return
    M1, M2 = _jm_maps(A, r, e)
    base, kernel = solve_affine(F, F.matmul(M2, M1), F.neg(F.mul(2, e)))
    if base is None:
        return
    if F.q ** kernel.shape[0] > MAX_TRIPLE_ENUMERATION:
        raise ResourceLimitError(f"{F.q}^{kernel.shape[0]} candidate f's is over the enumeration cap")
    fs = F.add(span_points(F, kernel, A.dims[mr]), base[None, :])
    hs = F.matmul(fs, M1.T)
    hf = F.einsum("za,zb,abc->zc", hs, fs, A.C[(0, mr)])
    good = np.all(hf == F.neg(F.mul(2, fs)), axis=1)
    for h, f in zip(hs[good], fs[good]):
        yield Sl2Triple(A, r, tuple(int(x) for x in e), tuple(int(x) for x in h), tuple(int(x) for x in f))


def unipotent_centraliser(A: GradedLieAlgebra, r: int, e) -> np.ndarray:
    """Basis of g_0^e intersected with [g_{-r}, e]."""
    F = A.field
    M1, M2 = _jm_maps(A, A.deg(r), np.asarray(e, dtype=np.int64))
    centraliser = nullspace(F, M2)
    image = span_basis(F, M1.T, A.dims[0])
    return intersect(F, centraliser, image)


def all_triples_count(A: GradedLieAlgebra, r: int, e) -> Tuple[int, int]:
    """(#triples through e, q^{dim u_0^e}); raises when they differ."""
    count = sum(1 for _ in triples_through(A, r, e))
    expected = A.field.q ** unipotent_centraliser(A, r, e).shape[0]
    if count != expected:
        raise InvariantViolation(
            f"{count} triples through e but q^dim u = {expected}",
            {"degree": A.deg(r), "e": [int(x) for x in np.asarray(e)]},
        )
    return count, expected


# -- adapted grading -------------------------------------------------------------------


def _lift(c: int, p: int) -> int:
    c %= p
    return c - p if c > (p - 1) // 2 else c


@dataclass
class AdaptedGrading:
    """g_s(j) bases for every degree s and integer weight j."""

    algebra: GradedLieAlgebra = dc_field(repr=False)
    triple: Sl2Triple = dc_field(repr=False)
    spaces: Dict[int, Dict[int, np.ndarray]]
    source: str = "adjoint"

    @property
    def window(self) -> int:
        return max((abs(j) for s in self.spaces.values() for j in s), default=0)

    def weights(self, s: int) -> Dict[int, int]:
        return {j: int(b.shape[0]) for j, b in sorted(self.spaces[self.algebra.deg(s)].items())}

    def piece(self, s: int, j: int) -> np.ndarray:
        s = self.algebra.deg(s)
        return self.spaces[s].get(j, np.zeros((0, self.algebra.dims[s]), dtype=np.int64))

    def _collect(self, s: int, keep) -> np.ndarray:
        s = self.algebra.deg(s)
        parts = [b for j, b in sorted(self.spaces[s].items()) if keep(j)]
        if not parts:
            return np.zeros((0, self.algebra.dims[s]), dtype=np.int64)
        return np.concatenate(parts, axis=0)

    def le(self, s: int, bound: int) -> np.ndarray:
        """Basis of g_s(<= bound)."""
        return self._collect(s, lambda j: j <= bound)

    def ge(self, s: int, bound: int) -> np.ndarray:
        return self._collect(s, lambda j: j >= bound)

    def check_brackets(self) -> None:
        """[g_s(j), g_t(k)] lies in g_{s+t}(j+k), on basis pairs."""
        A, F = self.algebra, self.algebra.field
        for s in range(A.n):
            for t in range(A.n):
                u = (s + t) % A.n
                for j, Bj in self.spaces[s].items():
                    for k, Bk in self.spaces[t].items():
                        if not (Bj.shape[0] and Bk.shape[0]):
                            continue
                        prods = F.einsum("xa,yb,abc->xyc", Bj, Bk, A.C[(s, t)]).reshape(-1, A.dims[u])
                        target = self.piece(u, j + k)
                        if rank(F, np.concatenate([target, prods])) != target.shape[0]:
                            raise InvariantViolation(
                                "adapted grading is not compatible with the bracket",
                                {"degrees": [s, t], "weights": [j, k]},
                            )

    def to_json(self) -> dict:
        return {str(s): {str(j): int(b.shape[0]) for j, b in sorted(sp.items())} for s, sp in self.spaces.items()}


def _eigenspaces(F: FiniteField, M: np.ndarray) -> Dict[int, np.ndarray]:
    """Lifted weight -> eigenspace basis (rows) for M with eigenvalues in F_p."""
    n = M.shape[0]
    spaces: Dict[int, np.ndarray] = {}
    total = 0
    for c in range(F.p):
        ker = nullspace(F, F.sub(M, F.mul(c, np.eye(n, dtype=np.int64))))
        if ker.shape[0]:
            spaces[_lift(c, F.p)] = ker
            total += ker.shape[0]
    if total != n:
        raise WindowError(f"p too small for this triple: h is not diagonalisable with eigenvalues in F_{F.p}")
    return spaces


def _check_strings(F: FiniteField, E: np.ndarray, spaces: Dict[int, np.ndarray]) -> None:
    """e raises weights by 2 and e^j: V(-j) -> V(j) is bijective."""
    for c, B in spaces.items():
        if not B.shape[0]:
            continue
        images = F.matmul(B, E.T)
        if not images.any():
            continue
        target = spaces.get(c + 2)
        if target is None or rank(F, np.concatenate([target, images])) != target.shape[0]:
            raise WindowError(f"p too small for this triple: eigenvalue {c} does not lift consistently")
    for j in range(1, max(spaces, default=0) + 1):
        low = spaces.get(-j, np.zeros((0, E.shape[0]), dtype=np.int64))
        high = spaces.get(j, np.zeros((0, E.shape[0]), dtype=np.int64))
        if low.shape[0] != high.shape[0]:
            raise WindowError(f"p too small for this triple: eigenvalue {j} has no mirror {-j}")
        P = low
        for _ in range(j):
            P = F.matmul(P, E.T)
        if low.shape[0] and rank(F, P) != low.shape[0]:
            raise WindowError(f"p too small for this triple: eigenvalue {-j} is not a string start")


def _full_ad(A: GradedLieAlgebra, i: int, x: np.ndarray) -> np.ndarray:
    """ad(x) for x in g_i as one matrix on the whole algebra (degree blocks in order)."""
    offs = np.cumsum([0] + [A.dims[s] for s in range(A.n)])
    out = np.zeros((A.dimension, A.dimension), dtype=np.int64)
    for s in range(A.n):
        t = (s + i) % A.n
        if A.dims[s] and A.dims[t]:
            out[offs[t] : offs[t + 1], offs[s] : offs[s + 1]] = A.ad_matrix(i, s, x)
    return out


def adapted_grading(t: Sl2Triple) -> AdaptedGrading:
    A = t.algebra
    if A.realisation is not None:
        return _grading_from_defining_rep(t)
    return _grading_from_adjoint(t)


def _grading_from_adjoint(t: Sl2Triple) -> AdaptedGrading:
    A, F = t.algebra, t.algebra.field
    h = np.array(t.h, dtype=np.int64)
    e = np.array(t.e, dtype=np.int64)
    H = _full_ad(A, 0, h)
    weights = _eigenspaces(F, H)
    _check_strings(F, _full_ad(A, t.degree, e), weights)
    if 2 * max((abs(j) for j in weights), default=0) + 1 > F.p:
        raise WindowError(f"p too small for this triple: eigenvalue {max(abs(j) for j in weights)}")
    spaces: Dict[int, Dict[int, np.ndarray]] = {s: {} for s in range(A.n)}
    for s in range(A.n):
        for j in weights:
            # ad(h) preserves each g_s, so its eigenspaces split along degrees
            local = nullspace(
                F, F.sub(A.ad_matrix(0, s, h), F.mul(F.from_int(j), np.eye(A.dims[s], dtype=np.int64)))
            ) if A.dims[s] else np.zeros((0, 0), dtype=np.int64)
            if local.shape[0]:
                spaces[s][j] = span_basis(F, local)
    return AdaptedGrading(A, t, spaces, "adjoint")


def _grading_from_defining_rep(t: Sl2Triple) -> AdaptedGrading:
    A, F = t.algebra, t.algebra.field
    m = A.realisation.dim
    Hm = A.to_matrix(0, t.h)
    Em = A.to_matrix(t.degree, t.e)
    vspaces = _eigenspaces(F, Hm)  # rows are column eigenvectors
    _check_strings(F, Em, vspaces)
    if 2 * max((abs(j) for j in vspaces), default=0) + 1 > F.p:
        raise WindowError(f"p too small for this triple: eigenvalue {max(abs(j) for j in vspaces)}")

    order = sorted(vspaces)
    S = np.concatenate([vspaces[c] for c in order], axis=0).T  # columns: eigenbasis
    S_inv = inverse(F, S)
    projectors: Dict[int, np.ndarray] = {}
    at = 0
    for c in order:
        d = vspaces[c].shape[0]
        sel = np.zeros((m, m), dtype=np.int64)
        sel[at : at + d, at : at + d] = np.eye(d, dtype=np.int64)
        projectors[c] = F.matmul(F.matmul(S, sel), S_inv)
        at += d

    spaces: Dict[int, Dict[int, np.ndarray]] = {s: {} for s in range(A.n)}
    for s in range(A.n):
        N = A.dims[s]
        if not N:
            continue
        basis = A.realisation.basis[s]
        comps: Dict[int, List[np.ndarray]] = {}
        for a in order:
            for b in order:
                Pab = F.matmul(F.matmul(projectors[a][None], basis), projectors[b][None])
                comps.setdefault(a - b, []).append(Pab)
        for j, mats in sorted(comps.items()):
            total = mats[0]
            for M in mats[1:]:
                total = F.add(total, M)
            coords = []
            for X in total:
                c = A.from_matrix(s, X)
                if c is None:
                    raise WindowError(f"p too small for this triple: weight {j} component leaves g_{s}")
                coords.append(c)
            B = span_basis(F, np.array(coords, dtype=np.int64), N)
            if B.shape[0]:
                spaces[s][j] = B
        if sum(b.shape[0] for b in spaces[s].values()) != N:
            raise WindowError(f"p too small for this triple: weights do not span g_{s}")
    return AdaptedGrading(A, t, spaces, "defining")


def defining_weights(t: Sl2Triple) -> List[int]:
    """Lifted eigenvalues of h on the defining representation, with multiplicity, descending."""
    A, F = t.algebra, t.algebra.field
    spaces = _eigenspaces(F, A.to_matrix(0, t.h))
    return sorted((c for c, B in spaces.items() for _ in range(B.shape[0])), reverse=True)


def jordan_type(F: FiniteField, X: np.ndarray) -> Tuple[int, ...]:
    """Partition of a nilpotent matrix from the ranks of its powers."""
    m = X.shape[0]
    ranks = [m]
    P = np.eye(m, dtype=np.int64)
    while ranks[-1]:
        P = F.matmul(P, X)
        ranks.append(rank(F, P))
        if len(ranks) > m + 1:
            raise InvariantViolation("matrix is not nilpotent", {"matrix": X.tolist()})
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    parts: List[int] = []
    for j, cnt in enumerate(at_least, start=1):
        nxt = at_least[j] if j < len(at_least) else 0
        parts.extend([j] * (cnt - nxt))
    return tuple(sorted(parts, reverse=True))


def weighted_characteristic(t: Sl2Triple) -> List[int]:
    """Defining-representation weights of h, checked against the Jordan type of e."""
    A = t.algebra
    got = defining_weights(t)
    shape = jordan_type(A.field, A.to_matrix(t.degree, t.e))
    predicted = sorted((s - 1 - 2 * k for s in shape for k in range(s)), reverse=True)
    if got != predicted:
        raise InvariantViolation(
            "weights of h do not match the Jordan type of e",
            {"weights": got, "predicted": predicted, "jordanType": list(shape)},
        )
    return got


def check_unipotent_radical(g: AdaptedGrading) -> None:
    """u_0^e lies in the positive weights of g_0."""
    A, F, t = g.algebra, g.algebra.field, g.triple
    if t.is_zero:
        return
    u = unipotent_centraliser(A, t.degree, np.array(t.e, dtype=np.int64))
    positive = g.ge(0, 1)
    if rank(F, np.concatenate([positive, u])) != positive.shape[0]:
        raise InvariantViolation("u_0^e is not in the positive weights of g_0", {"e": list(t.e)})


# -- slices -------------------------------------------------------------------------------


@dataclass(frozen=True)
class SliceSet:
    """Affine subspace base + span(basis) of a piece (side 'primal') or its dual."""

    degree: int
    side: str
    base: Tuple[int, ...]
    basis: np.ndarray = dc_field(compare=False)
    field: FiniteField = dc_field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def _annihilator(self) -> np.ndarray:
        n = len(self.base)
        if self.basis.shape[0] == 0:
            return np.eye(n, dtype=np.int64)
        return nullspace(self.field, self.basis)

    def contains_many(self, coords: np.ndarray) -> np.ndarray:
        F = self.field
        coords = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        Y = self._annihilator()
        if Y.shape[0] == 0:
            return np.ones(coords.shape[0], dtype=bool)
        diff = F.sub(coords, np.array(self.base, dtype=np.int64)[None, :])
        return ~np.any(F.matmul(diff, Y.T), axis=1)

    def contains(self, coords) -> bool:
        return bool(self.contains_many(np.asarray(coords, dtype=np.int64))[0])

    def points(self) -> np.ndarray:
        F = self.field
        pts = span_points(F, self.basis, len(self.base))
        return F.add(pts, np.array(self.base, dtype=np.int64)[None, :])

    def to_json(self) -> dict:
        return {"degree": self.degree, "side": self.side, "base": list(self.base), "basis": self.basis.tolist()}


def _sigma_from_triple(alpha: DualPoint, t: Sl2Triple) -> Tuple[SliceSet, AdaptedGrading]:
    A, F = alpha.algebra, alpha.algebra.field
    r, mr = A.deg(alpha.degree), A.neg(alpha.degree)
    grading = adapted_grading(t)
    directions = A.eta_inv(r, grading.le(mr, 0))
    return SliceSet(r, "dual", alpha.coords, span_basis(F, directions, A.dims[r]), F), grading


def sigma_slice(alpha: DualPoint) -> Tuple[SliceSet, Sl2Triple, AdaptedGrading]:
    """Sigma_alpha = alpha + eta^{-1}(g_{-r}(<= 0)), with the triple through eta(alpha)."""
    A = alpha.algebra
    r, mr = A.deg(alpha.degree), A.neg(alpha.degree)
    e = A.eta(r, alpha.vector())
    nil = A.nilpotent_mask(mr, e)[0] if A.realisation is not None else True
    if not nil:
        raise InvariantViolation("Sigma slice of a non-nilpotent element", {"degree": r, "alpha": list(alpha.coords)})
    t = complete_triple(A, mr, e)
    sl, grading = _sigma_from_triple(alpha, t)
    return sl, t, grading


def check_triple_independence(alpha: DualPoint, group: FiniteGroupAction) -> int:
    """Sigma slices built on different triples through eta(alpha) are G_0-translates.

    For every triple t through eta(alpha) some g in the group must carry the
    slice of the canonical triple onto the slice of t. Returns the number of
    triples seen.
    """
    A, F = alpha.algebra, alpha.algebra.field
    r, mr = A.deg(alpha.degree), A.neg(alpha.degree)
    ref, _, _ = sigma_slice(alpha)
    a = np.array(alpha.coords, dtype=np.int64)
    rows = np.concatenate([a[None, :], ref.basis.reshape(-1, A.dims[r])])
    mats = group.matrices(r, COADJOINT)
    imgs = F.matmul(rows[None], np.transpose(mats, (0, 2, 1)))  # (|G|, 1 + dim, N)
    # row 0 becomes g.alpha - alpha, which must lie in the other slice's directions
    imgs[:, 0, :] = F.sub(imgs[:, 0, :], a[None, :])
    count = 0
    for t in triples_through(A, mr, A.eta(r, alpha.vector())):
        count += 1
        other, _ = _sigma_from_triple(alpha, t)
        Y = other._annihilator()
        if other.dim == ref.dim and (Y.shape[0] == 0 or np.any(~np.any(F.matmul(imgs, Y.T[None]), axis=(1, 2)))):
            continue
        raise InvariantViolation(
            "Sigma slices of two triples through one nilpotent are not conjugate",
            {"degree": r, "alpha": list(alpha.coords), "f": list(t.f), "h": list(t.h)},
        )
    return count


def slodowy_slice(t: Sl2Triple) -> SliceSet:
    """e + centraliser of f, inside the piece of e."""
    A, F = t.algebra, t.algebra.field
    r, mr = A.deg(t.degree), A.neg(t.degree)
    f = np.array(t.f, dtype=np.int64)
    ad_f = A.ad_matrix(mr, r, f)  # g_r -> g_0
    return SliceSet(r, "primal", t.e, nullspace(F, ad_f), F)


def graded_slodowy_slice(t: Sl2Triple, grading: Optional[AdaptedGrading] = None) -> SliceSet:
    """Slodowy slice with transversality g_r = [g_0, e] + c(f) and c(f) in weights <= 0."""
    A, F = t.algebra, t.algebra.field
    r = A.deg(t.degree)
    sl = slodowy_slice(t)
    tangent = span_basis(F, A.ad_matrix(r, 0, np.array(t.e, dtype=np.int64)).T, A.dims[r])
    if tangent.shape[0] + sl.dim != A.dims[r] or intersect(F, tangent, sl.basis).shape[0]:
        raise InvariantViolation(
            "Slodowy slice is not transversal to the orbit",
            {"degree": r, "tangent": int(tangent.shape[0]), "slice": sl.dim},
        )
    grading = grading or adapted_grading(t)
    nonpos = grading.le(r, 0)
    if sl.dim and rank(F, np.concatenate([nonpos, sl.basis])) != nonpos.shape[0]:
        raise InvariantViolation("centraliser of f has positive weights", {"degree": r})
    return sl
