from __future__ import annotations

from .. import console
from ..ungraded import generic_check, levi_datum, nmap_row

DEFAULT_TARGETS = [("gl2", 3), ("gl2", 5)]


def _regular_split(levi) -> bool:
    return all(b.size == 1 and b.eigen_degree == 1 for b in levi.blocks)


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        A = setting.algebra
        rows = []
        generic = []
        for orbit in setting.coadjoint_orbits(0):
            rows.append(nmap_row(setting, orbit))
            levi = levi_datum(A, A.eta(0, A.decode(0, orbit.representative)))
            if _regular_split(levi):
                generic.append(generic_check(setting, orbit))
        console.info("thm4.7", f"{target.label}: {len(rows)} orbits bounded by N, {len(generic)} regular split")
        out[target.label] = {"orbits": rows, "regularSplit": generic}
    return {"targets": out}
