from __future__ import annotations

from itertools import product
from typing import List

from .. import console
from ..errors import InvariantViolation
from ..gact import ADJOINT
from ..ungraded import LeviBlock, LeviDatum, induced_dimension_matches, jordan, n_map, partitions

DEFAULT_TARGETS = [("gl2", 3), ("gl3", 3)]
EXHAUSTIVE_LIMIT = 1000
SAMPLED_ORBITS = 20
MAX_INDUCTION_RANK = 4


def _levi_data(n: int) -> List[LeviDatum]:
    out = []
    for composition in partitions(n):
        choices = [partitions(size) for size in composition]
        for lams in product(*choices):
            out.append(LeviDatum(n, tuple(LeviBlock(s, lam, 1) for s, lam in zip(composition, lams))))
    return out


def check_induction_dimensions(limit: int = MAX_INDUCTION_RANK) -> int:
    count = 0
    for n in range(1, limit + 1):
        for L in _levi_data(n):
            if not induced_dimension_matches(L):
                raise InvariantViolation("dim O_ind != dim O_L + dim g - dim l", L.to_json())
            count += 1
    return count


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        A = setting.algebra
        entry = {}
        if A.piece_size(0) <= EXHAUSTIVE_LIMIT:
            for x in A.piece_points(0):
                jordan(A, x)
            entry["jordanChecked"] = A.piece_size(0)
        orbits = setting.group.orbit_partition(0, ADJOINT)
        picks = sorted(int(i) for i in ctx.rng.choice(len(orbits), size=min(SAMPLED_ORBITS, len(orbits)), replace=False))
        constant = {}
        for k in picks:
            orbit = orbits[k]
            values = {n_map(A, A.decode(0, v)) for v in orbit.points}
            if len(values) != 1:
                raise InvariantViolation(
                    "N map is not constant on an orbit",
                    {"target": target.label, "orbit": orbit.representative, "values": sorted(list(v) for v in values)},
                )
            constant[str(orbit.representative)] = list(values.pop())
        entry["nMapOnOrbits"] = constant
        console.info("jordan", f"{target.label}: N constant on {len(constant)} sampled orbits")
        out[target.label] = entry
    return {"targets": out, "inductionPairs": check_induction_dimensions()}
