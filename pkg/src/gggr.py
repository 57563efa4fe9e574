"""
Graded generalised Gelfand-Graev characters and what is read off them:
pairings with orbit characters, degenerations, rational asymptotic cones and
wave front sets.

GradedSetting holds one algebra with its group and caches every slice,
triple and Gamma table computed against it.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import console
from .cyclotomic import ScaledCyclotomic
from .errors import InvariantViolation, UsageError
from .fchar import DUAL, PRIMAL, PieceFunction, chi_orbit, ft, inner, is_invariant_character
from .gact import ADJOINT, CHUNK, COADJOINT, FiniteGroupAction, OrbitT
from .glie import DualPoint, GradedLieAlgebra
from .linalg import span_points
from .sl2 import AdaptedGrading, SliceSet, Sl2Triple, sigma_slice


@dataclass
class GammaEntry:
    orbit: OrbitT
    table: PieceFunction
    triple: Sl2Triple
    negative_dim: int  # dim g_r(<= -1)

    def to_json(self) -> dict:
        return {
            "orbit": self.orbit.representative,
            "orbitSize": self.orbit.size,
            "support": int(self.table.support().size),
            "triple": self.triple.to_json(),
            "dimNegative": self.negative_dim,
        }


@dataclass
class GGGRTable:
    degree: int
    piece_dim: int
    entries: List[GammaEntry]
    multiplicities: Dict[int, Dict[int, int]] = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "N": self.piece_dim,
            "orbits": [
                dict(e.to_json(), ftMultiplicities={str(k): v for k, v in sorted(self.multiplicities.get(e.orbit.representative, {}).items())})
                for e in self.entries
            ],
        }


def orbit_labels(orbits: Iterable[OrbitT]) -> List[int]:
    return sorted({o.representative for o in orbits})


class GradedSetting:
    def __init__(self, algebra: GradedLieAlgebra, group: FiniteGroupAction, threads: Optional[int] = None) -> None:
        if group.algebra is not algebra:
            raise UsageError("group acts on a different algebra")
        self.algebra = algebra
        self.group = group
        self.threads = max(1, int(threads or os.cpu_count() or 1))
        self._slices: Dict[Tuple[int, int], Tuple[SliceSet, Sl2Triple, AdaptedGrading]] = {}
        self._gammas: Dict[Tuple[int, int], PieceFunction] = {}
        self._chis: Dict[Tuple[int, int], PieceFunction] = {}
        self._gamma_fts: Dict[Tuple[int, int], PieceFunction] = {}

    # -- orbits ----------------------------------------------------------------------------

    def coadjoint_orbits(self, degree: int) -> List[OrbitT]:
        return self.group.orbit_partition(degree, COADJOINT)

    def nilpotent_coadjoint_orbits(self, degree: int) -> List[OrbitT]:
        return self.group.nilpotent_orbits(degree, COADJOINT)

    def orbit(self, degree: int, index: int) -> OrbitT:
        return self.group.orbit_containing(degree, index, COADJOINT)

    def dual_point(self, degree: int, index: int) -> DualPoint:
        return self.algebra.dual_point_at(degree, index)

    def slice_for(self, degree: int, index: int) -> Tuple[SliceSet, Sl2Triple, AdaptedGrading]:
        key = (self.algebra.deg(degree), int(index))
        if key not in self._slices:
            self._slices[key] = sigma_slice(self.dual_point(*key))
        return self._slices[key]

    def chi(self, orbit: OrbitT) -> PieceFunction:
        key = (orbit.degree, orbit.representative)
        if key not in self._chis:
            self._chis[key] = chi_orbit(self.group, orbit)
        return self._chis[key]

    # -- group sums ------------------------------------------------------------------------

    def _scatter(self, degree: int, side: str, points: np.ndarray, exps: np.ndarray) -> np.ndarray:
        """counts[idx(g.y), exps[y]] summed over every element g and row y of points."""
        A, F = self.algebra, self.algebra.field
        size = A.piece_size(degree)
        p = F.p
        mats = self.group.matrices(degree, side)
        starts = list(range(0, self.group.order, CHUNK))

        def work(s: int) -> np.ndarray:
            counts = np.zeros((size, p), dtype=np.int64)
            block = mats[s : s + CHUNK]
            imgs = F.matmul(points[None], np.transpose(block, (0, 2, 1)))  # (B, |Y|, N)
            idx = A.encode(imgs).reshape(-1)
            cols = np.broadcast_to(exps[None, :], (block.shape[0], exps.shape[0])).reshape(-1)
            np.add.at(counts, (idx, cols), 1)
            return counts

        if self.threads == 1 or len(starts) == 1:
            parts = [work(s) for s in starts]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                parts = list(pool.map(work, starts))
        total = np.zeros((size, p), dtype=np.int64)
        for part in parts:
            total += part
        return total

    def gamma_direct(self, orbit: OrbitT, representative: Optional[int] = None) -> PieceFunction:
        """Gamma_alpha(x) = q^{N_r} sum_g [Ad(g)x in g_r(<=-1)] chi(-alpha(Ad(g)x))."""
        A, F = self.algebra, self.algebra.field
        r = orbit.degree
        rep = orbit.representative if representative is None else int(representative)
        key = (r, rep)
        if key in self._gammas:
            return self._gammas[key]
        _, t, grading = self.slice_for(r, rep)
        alpha = A.decode(r, rep)
        Y = span_points(F, grading.le(r, -1), A.dims[r])
        exps = F.trace(F.neg(F.matmul(Y, alpha[:, None])[:, 0]))
        counts = self._scatter(r, ADJOINT, Y, exps)
        gamma = PieceFunction(A, r, PRIMAL, counts.astype(object), 2 * A.dims[r])
        self._gammas[key] = gamma
        console.info("gggr", f"Gamma for orbit {rep} in degree {r}: support {gamma.support().size}")
        return gamma

    def gamma_ft_table(self, orbit: OrbitT) -> PieceFunction:
        """FT(Gamma) on every dual point by counting g with Ad(g) eta(beta) in eta(alpha) + g_{-r}(<=0)."""
        key = (orbit.degree, orbit.representative)
        if key in self._gamma_fts:
            return self._gamma_fts[key]
        A, F = self.algebra, self.algebra.field
        r, mr = orbit.degree, A.neg(orbit.degree)
        _, t, grading = self.slice_for(r, orbit.representative)
        base = np.array(t.e, dtype=np.int64)
        S = F.add(span_points(F, grading.le(mr, 0), A.dims[mr]), base[None, :])
        counts = self._scatter(mr, ADJOINT, S, np.zeros(S.shape[0], dtype=np.int64))[:, 0]
        # counts is indexed by y in g_{-r}; move it to beta = eta^{-1}(y)
        ys = A.piece_points(mr)
        beta_idx = A.encode(A.eta_inv(r, ys))
        by_beta = np.zeros(A.piece_size(r), dtype=np.int64)
        by_beta[beta_idx] = counts
        negative_dim = grading.le(r, -1).shape[0]
        table = np.zeros((A.piece_size(r), F.p), dtype=object)
        table[:, 0] = by_beta.astype(object) * (F.q**negative_dim)
        self._gamma_fts[key] = PieceFunction(A, r, DUAL, table, A.dims[r])
        return self._gamma_fts[key]

    def gamma_ft_counting(self, orbit: OrbitT, beta: DualPoint) -> ScaledCyclotomic:
        return self.gamma_ft_table(orbit).value(beta.index)

    def gggr_table(self, degree: int) -> GGGRTable:
        A = self.algebra
        r = A.deg(degree)
        entries: List[GammaEntry] = []
        mult: Dict[int, Dict[int, int]] = {}
        for orbit in self.nilpotent_coadjoint_orbits(r):
            gamma = self.gamma_direct(orbit)
            _, t, grading = self.slice_for(r, orbit.representative)
            entries.append(GammaEntry(orbit, gamma, t, int(grading.le(r, -1).shape[0])))
            mult[orbit.representative] = is_invariant_character(gamma, self.group).multiplicities
        console.info("gggr", f"Gamma table for degree {r}: {len(entries)} orbits")
        return GGGRTable(r, A.dims[r], entries, mult)

    # -- checks on one Gamma ------------------------------------------------------------------

    def check_support(self, orbit: OrbitT) -> None:
        gamma = self.gamma_direct(orbit)
        nil = self.group.nilpotent_mask(orbit.degree, ADJOINT)
        outside = [int(x) for x in gamma.support() if not nil[x]]
        if outside:
            raise InvariantViolation(
                "Gamma is supported off the nilpotent cone",
                {"orbit": orbit.representative, "point": outside[0]},
            )

    def check_counting_formula(self, orbit: OrbitT) -> None:
        direct = ft(self.gamma_direct(orbit))
        counted = self.gamma_ft_table(orbit)
        diff = (direct - counted).support()
        if diff.size:
            raise InvariantViolation(
                "FT of Gamma disagrees with the counting formula",
                {"orbit": orbit.representative, "point": int(diff[0])},
            )

    def check_representative_independence(self, orbit: OrbitT) -> None:
        if orbit.size < 2:
            return
        other = orbit.points[-1]
        first = self.gamma_direct(orbit)
        second = self.gamma_direct(orbit, other)
        if first != second:
            raise InvariantViolation(
                "Gamma depends on the orbit representative",
                {"orbit": orbit.representative, "other": other},
            )

    # -- slices, pairings, cones ---------------------------------------------------------------

    def meets_slice(self, orbit: OrbitT, nil_orbit: OrbitT) -> bool:
        sl, _, _ = self.slice_for(nil_orbit.degree, nil_orbit.representative)
        pts = self.algebra.decode(orbit.degree, np.array(orbit.points, dtype=np.int64))
        return bool(np.any(sl.contains_many(pts)))

    def pairing(self, other: OrbitT, nil_orbit: OrbitT) -> Tuple[ScaledCyclotomic, bool]:
        value = inner(self.chi(other), self.gamma_direct(nil_orbit))
        hit = self.meets_slice(other, nil_orbit)
        if (not value.is_zero()) != hit:
            raise InvariantViolation(
                "pairing is nonzero exactly when the orbit meets the slice: violated",
                {"orbit": other.representative, "nilpotentOrbit": nil_orbit.representative, "sliceHit": hit},
            )
        return value, hit

    def pairing_table(self, degree: int) -> List[dict]:
        rows = []
        for nil_orbit in self.nilpotent_coadjoint_orbits(degree):
            for other in self.coadjoint_orbits(degree):
                value, hit = self.pairing(other, nil_orbit)
                rows.append(
                    {
                        "orbit": other.representative,
                        "nilpotentOrbit": nil_orbit.representative,
                        "value": value.to_json(),
                        "sliceHit": hit,
                    }
                )
        return rows

    def degenerates(self, x: DualPoint, nil_orbit: OrbitT) -> bool:
        return self.meets_slice(self.orbit(x.degree, x.index), nil_orbit)

    def cone(self, orbits: Sequence[OrbitT], degree: Optional[int] = None) -> List[OrbitT]:
        if not orbits and degree is None:
            return []
        r = orbits[0].degree if orbits else self.algebra.deg(degree)
        return [
            nil for nil in self.nilpotent_coadjoint_orbits(r)
            if any(self.meets_slice(o, nil) for o in orbits)
        ]

    def support_orbits(self, f: PieceFunction) -> List[OrbitT]:
        """Coadjoint orbits meeting supp(FT(f))."""
        supp = set(int(x) for x in ft(f).support())
        return [o for o in self.coadjoint_orbits(f.degree) if supp.intersection(o.points)]

    def wavefront(self, f: PieceFunction) -> List[OrbitT]:
        if f.side != PRIMAL:
            raise UsageError("wave front sets are taken of functions on g_r")
        return [
            nil for nil in self.nilpotent_coadjoint_orbits(f.degree)
            if not inner(f, self.gamma_direct(nil)).is_zero()
        ]

    def negate_orbits(self, orbits: Sequence[OrbitT]) -> List[OrbitT]:
        A = self.algebra
        out = []
        for o in orbits:
            rep = A.decode(o.degree, o.representative)
            out.append(self.orbit(o.degree, int(A.encode(A.field.neg(rep)))))
        return sorted({x.representative: x for x in out}.values(), key=lambda x: x.representative)

    def check_cone_negation(self, orbits: Sequence[OrbitT]) -> None:
        left = orbit_labels(self.cone(self.negate_orbits(orbits)))
        right = orbit_labels(self.negate_orbits(self.cone(orbits)))
        if left != right:
            raise InvariantViolation("cone(-S) differs from -cone(S)", {"cone(-S)": left, "-cone(S)": right})


# module-level entry points mirroring the setting's methods


def gamma_direct(setting: GradedSetting, orbit: OrbitT) -> PieceFunction:
    return setting.gamma_direct(orbit)


def gamma_ft_counting(setting: GradedSetting, orbit: OrbitT, beta: DualPoint) -> ScaledCyclotomic:
    return setting.gamma_ft_counting(orbit, beta)


def pairing(setting: GradedSetting, other: OrbitT, nil_orbit: OrbitT) -> Tuple[ScaledCyclotomic, bool]:
    return setting.pairing(other, nil_orbit)


def degenerates(setting: GradedSetting, x: DualPoint, nil_orbit: OrbitT) -> bool:
    return setting.degenerates(x, nil_orbit)


def cone(setting: GradedSetting, orbits: Sequence[OrbitT]) -> List[OrbitT]:
    return setting.cone(orbits)


def wavefront(setting: GradedSetting, f: PieceFunction) -> List[OrbitT]:
    return setting.wavefront(f)
