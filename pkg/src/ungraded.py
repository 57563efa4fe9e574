"""
Ungraded type A layer: Jordan decomposition over F_q, Levi data of the
centraliser of x_s, the N map through Lusztig-Spaltenstein induction,
partition combinatorics and the Theta(x) search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import fqpoly
from .errors import InvariantViolation, UsageError
from .ffield import FiniteField
from .glie import GradedLieAlgebra
from .linalg import inverse, nullspace, rank
from .sl2 import Sl2Triple, jordan_type, triples_through

Partition = Tuple[int, ...]


# -- partitions ------------------------------------------------------------------------------


def normalise(parts: Sequence[int]) -> Partition:
    return tuple(sorted((int(x) for x in parts if x > 0), reverse=True))


@lru_cache(maxsize=None)
def partitions(n: int, largest: Optional[int] = None) -> Tuple[Partition, ...]:
    """All partitions of n, in reverse lexicographic order."""
    largest = n if largest is None else largest
    if n == 0:
        return ((),)
    out: List[Partition] = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def conjugate(lam: Sequence[int]) -> Partition:
    lam = normalise(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """mu <= lam: every partial sum of mu is at most that of lam."""
    mu, lam = normalise(mu), normalise(lam)
    if sum(mu) != sum(lam):
        return False
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a > b:
            return False
    return True


def orbit_dimension(lam: Sequence[int]) -> int:
    """Dimension of the gl_n nilpotent orbit of type lam."""
    lam = normalise(lam)
    n = sum(lam)
    return n * n - sum(c * c for c in conjugate(lam))


# -- Jordan decomposition --------------------------------------------------------------------


@dataclass(frozen=True)
class JordanPair:
    x_s: np.ndarray
    x_n: np.ndarray

    def to_json(self) -> dict:
        return {"semisimple": self.x_s.tolist(), "nilpotent": self.x_n.tolist()}


def _require_type_a(A: GradedLieAlgebra) -> None:
    if A.realisation is None or A.realisation.family not in ("gl", "sl"):
        raise UsageError("type A only: the ungraded layer needs a gl_n or sl_n realisation")
    if A.n != 1:
        raise UsageError("the ungraded layer works on ungraded algebras (n = 1)")


def jordan_matrix(F: FiniteField, X: np.ndarray) -> JordanPair:
    X = np.asarray(X, dtype=np.int64)
    m = X.shape[0]
    r = fqpoly.radical(F, fqpoly.charpoly(F, X))
    dr = fqpoly.derivative(F, r)
    if fqpoly.degree(fqpoly.gcd(F, r, dr)) > 0:
        raise InvariantViolation("squarefree part is inseparable", {"matrix": X.tolist()})
    y = X.copy()
    for _ in range(m + 2):
        ry = fqpoly.eval_matrix(F, r, y)
        if not ry.any():
            break
        y = F.sub(y, F.matmul(ry, inverse(F, fqpoly.eval_matrix(F, dr, y))))
    else:
        raise InvariantViolation("Newton iteration for x_s did not converge", {"matrix": X.tolist()})
    pair = JordanPair(y, F.sub(X, y))
    check_jordan(F, X, pair)
    return pair


def check_jordan(F: FiniteField, X: np.ndarray, pair: JordanPair) -> None:
    xs, xn = pair.x_s, pair.x_n
    m = X.shape[0]
    if not np.array_equal(F.add(xs, xn), X):
        raise InvariantViolation("x_s + x_n != x", {"matrix": X.tolist()})
    if not np.array_equal(F.matmul(xs, xn), F.matmul(xn, xs)):
        raise InvariantViolation("x_s and x_n do not commute", {"matrix": X.tolist()})
    P = xn
    for _ in range(m - 1):
        P = F.matmul(P, xn)
    if m and P.any():
        raise InvariantViolation("x_n is not nilpotent", {"matrix": X.tolist()})
    r = fqpoly.radical(F, fqpoly.charpoly(F, xs))
    if fqpoly.eval_matrix(F, r, xs).any():
        raise InvariantViolation("x_s is not semisimple", {"matrix": X.tolist()})


def jordan(A: GradedLieAlgebra, x) -> Tuple[np.ndarray, np.ndarray]:
    """(x_s, x_n) as coordinates in the algebra."""
    _require_type_a(A)
    pair = jordan_matrix(A.field, A.to_matrix(0, x))
    xs, xn = A.from_matrix(0, pair.x_s), A.from_matrix(0, pair.x_n)
    if xs is None or xn is None:
        raise InvariantViolation("Jordan parts leave the algebra", {"x": [int(c) for c in np.asarray(x)]})
    return xs, xn


# -- Levi data and the N map --------------------------------------------------------------------


@dataclass(frozen=True)
class LeviBlock:
    size: int
    partition: Partition
    eigen_degree: int  # degree of the eigenvalue over F_q; the block occurs this many times


@dataclass(frozen=True)
class LeviDatum:
    n: int
    blocks: Tuple[LeviBlock, ...]

    @property
    def composition(self) -> Tuple[int, ...]:
        return tuple(sorted((b.size for b in self.blocks for _ in range(b.eigen_degree)), reverse=True))

    @property
    def partitions(self) -> Tuple[Partition, ...]:
        return tuple(b.partition for b in self.blocks for _ in range(b.eigen_degree))

    @property
    def dimension(self) -> int:
        return sum(s * s for s in self.composition)

    @property
    def orbit_dimension(self) -> int:
        return sum(orbit_dimension(lam) for lam in self.partitions)

    def to_json(self) -> dict:
        return {"composition": list(self.composition), "partitions": [list(p) for p in self.partitions]}


def levi_datum_matrix(F: FiniteField, X: np.ndarray) -> LeviDatum:
    pair = jordan_matrix(F, X)
    m = X.shape[0]
    blocks: List[LeviBlock] = []
    for P in fqpoly.irreducible_factors(F, fqpoly.charpoly(F, pair.x_s)):
        d = fqpoly.degree(P)
        W = nullspace(F, fqpoly.eval_matrix(F, P, pair.x_s))  # rows: basis of ker P(x_s)
        size = W.shape[0] // d
        ranks = [W.shape[0]]
        img = W
        while ranks[-1]:
            img = F.matmul(img, pair.x_n.T)
            ranks.append(rank(F, img))
            if len(ranks) > m + 1:
                raise InvariantViolation("x_n is not nilpotent on an eigenspace", {"matrix": X.tolist()})
        at_least = [(ranks[j - 1] - ranks[j]) // d for j in range(1, len(ranks))]
        parts: List[int] = []
        for j, cnt in enumerate(at_least, start=1):
            nxt = at_least[j] if j < len(at_least) else 0
            parts.extend([j] * (cnt - nxt))
        blocks.append(LeviBlock(size, normalise(parts), d))
    blocks.sort(key=lambda b: (-b.size, -b.eigen_degree, tuple(-x for x in b.partition)))
    return LeviDatum(m, tuple(blocks))


def levi_datum(A: GradedLieAlgebra, x) -> LeviDatum:
    _require_type_a(A)
    return levi_datum_matrix(A.field, A.to_matrix(0, x))


def ls_induction_typeA(L: LeviDatum) -> Partition:
    """Part-wise sum of the zero-padded block partitions."""
    out = [0] * L.n
    for lam in L.partitions:
        for i, part in enumerate(lam):
            out[i] += part
    return normalise(out)


def induced_dimension_matches(L: LeviDatum) -> bool:
    """dim O_ind = dim O_L + dim g - dim l."""
    return orbit_dimension(ls_induction_typeA(L)) == L.orbit_dimension + L.n * L.n - L.dimension


def n_map(A: GradedLieAlgebra, x) -> Partition:
    return ls_induction_typeA(levi_datum(A, x))


def nilpotent_partition(A: GradedLieAlgebra, degree: int, coords) -> Partition:
    return jordan_type(A.field, A.to_matrix(degree, coords))


def geometric_cone_typeA(A: GradedLieAlgebra, x) -> List[Partition]:
    top = n_map(A, x)
    return [lam for lam in partitions(sum(top)) if dominance_leq(lam, top)]


# -- Theta(x) -----------------------------------------------------------------------------------


def theta_x(A: GradedLieAlgebra, x) -> List[Sl2Triple]:
    """Triples phi with e of type N(x) and x in the Slodowy slice e + c(f)."""
    _require_type_a(A)
    F = A.field
    x = np.asarray(x, dtype=np.int64)
    target = n_map(A, x)
    pts = A.piece_points(0)
    nil = A.nilpotent_mask(0, pts)
    found: List[Sl2Triple] = []
    for e in pts[nil]:
        if jordan_type(F, A.to_matrix(0, e)) != target:
            continue
        diff = F.sub(x, e)
        for t in triples_through(A, 0, e):
            if not A.bracket_coords(0, 0, np.array(t.f, dtype=np.int64), diff).any():
                found.append(t)
    if not found:
        raise InvariantViolation("Theta(x) is empty", {"x": x.tolist(), "N": list(target)})
    return found


def generic_check(setting, orbit) -> Dict[str, object]:
    """For a regular semisimple orbit: the maximal partitions in its cone are exactly (n)."""
    A = setting.algebra
    _require_type_a(A)
    cone = setting.cone([orbit])
    labels = {o.representative: orbit_partition_label(A, o) for o in cone}
    parts = set(labels.values())
    maximal = sorted(p for p in parts if not any(q != p and dominance_leq(p, q) for q in parts))
    expected = (A.realisation.dim,)
    if maximal != [expected]:
        raise InvariantViolation(
            "cone of a regular semisimple orbit is not topped by the regular orbit",
            {"orbit": orbit.representative, "maximal": [list(p) for p in maximal]},
        )
    return {"orbit": orbit.representative, "cone": {str(k): list(v) for k, v in sorted(labels.items())}}


# -- per-orbit report ---------------------------------------------------------------------------


def orbit_partition_label(A: GradedLieAlgebra, orbit) -> Partition:
    """Jordan type of eta(representative) for a nilpotent coadjoint orbit."""
    return nilpotent_partition(A, 0, A.eta(0, A.decode(0, orbit.representative)))


def nmap_row(setting, orbit, strict: bool = True) -> Dict[str, object]:
    """Jordan data, Levi blocks, N(O*) and WF(chi_O*) for one coadjoint orbit of g_0.

    WF must lie below N(O*) in dominance and contain an orbit of type exactly
    N(O*); with strict set a failure of either raises.
    """
    A = setting.algebra
    _require_type_a(A)
    alpha = A.decode(0, orbit.representative)
    x = A.eta(0, alpha)
    xs, xn = jordan(A, x)
    levi = levi_datum(A, x)
    top = ls_induction_typeA(levi)
    wf = setting.wavefront(setting.chi(orbit))
    labels = {o.representative: orbit_partition_label(A, o) for o in wf}
    below = all(dominance_leq(lam, top) for lam in labels.values())
    reached = top in labels.values()
    row: Dict[str, object] = {
        "orbit": orbit.representative,
        "orbitSize": orbit.size,
        "semisimple": [int(c) for c in xs],
        "nilpotent": [int(c) for c in xn],
        "levi": levi.to_json(),
        "N": list(top),
        "inductionDimensionOk": induced_dimension_matches(levi),
        "wavefront": {str(k): list(v) for k, v in sorted(labels.items())},
        "wavefrontBelowN": below,
        "wavefrontReachesN": reached,
    }
    if strict and not (below and reached):
        raise InvariantViolation(
            "wave front set of chi_O is not bounded by N(O) with equality attained",
            {"orbit": orbit.representative, "N": list(top), "wavefront": row["wavefront"]},
        )
    return row
