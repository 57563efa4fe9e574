from __future__ import annotations

import numpy as np

from .. import console
from ..gact import ADJOINT
from ..sl2 import (
    adapted_grading,
    check_triple_independence,
    check_unipotent_radical,
    complete_triple,
    graded_slodowy_slice,
    weighted_characteristic,
)
from .common import degrees

DEFAULT_TARGETS = [("sl2", 5), ("gl2", 5), ("gl2-z2", 5), ("gl3-z3", 11)]


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        A = setting.algebra
        per_degree = {}
        for r in degrees(setting):
            rows = {}
            for orbit in setting.group.nilpotent_orbits(r, ADJOINT):
                e = A.decode(r, orbit.representative)
                if not np.any(e):
                    continue
                t = complete_triple(A, r, e)
                grading = adapted_grading(t)
                grading.check_brackets()
                check_unipotent_radical(grading)
                sl = graded_slodowy_slice(t, grading)
                row = {"sliceDim": sl.dim, "window": grading.window}
                if A.realisation is not None:
                    row["weights"] = weighted_characteristic(t)
                rows[str(orbit.representative)] = row
            sigma = {}
            for orbit in setting.nilpotent_coadjoint_orbits(r):
                if orbit.representative == 0:
                    continue
                alpha = setting.dual_point(r, orbit.representative)
                sigma[str(orbit.representative)] = check_triple_independence(alpha, setting.group)
            per_degree[str(r)] = {"slices": rows, "sigmaTriples": sigma}
        console.info("slodowy", f"{target.label}: slices transversal, Sigma independent of the triple")
        out[target.label] = per_degree
    return {"targets": out}
