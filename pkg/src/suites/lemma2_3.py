from __future__ import annotations

from .. import console
from ..fchar import check_chi_orbit, chi_gram
from .common import degrees

DEFAULT_TARGETS = [("sl2", 3), ("sl2", 5), ("gl2", 5)]


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        per_degree = {}
        for r in degrees(setting):
            orbits = setting.coadjoint_orbits(r)
            for orbit in orbits:
                check_chi_orbit(setting.group, orbit, setting.chi(orbit))
            gram = chi_gram(setting.group, orbits, [setting.chi(o) for o in orbits])
            per_degree[str(r)] = {
                "orbits": len(orbits),
                "sizes": sorted(o.size for o in orbits),
                "representatives": [o.representative for o in orbits],
                "gram": gram,
            }
        console.info("lemma2.3", f"{target.label}: orbit characters checked and pairwise orthogonal")
        out[target.label] = per_degree
    return {"targets": out}
