from __future__ import annotations

import numpy as np

from .. import console
from ..errors import InvariantViolation
from ..fchar import PRIMAL, PieceFunction, ft, inner
from .common import degrees

DEFAULT_TARGETS = [("sl2", 5), ("gl2-z2", 5)]
SAMPLES = 200


def _random_function(A, r: int, rng: np.random.Generator) -> PieceFunction:
    size, p = A.piece_size(r), A.field.p
    table = rng.integers(-3, 4, size=(size, p)).astype(object)
    return PieceFunction(A, r, PRIMAL, table)


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        A = setting.algebra
        checked = {}
        for r in degrees(setting):
            prev = None
            for s in range(SAMPLES):
                f = _random_function(A, r, ctx.rng)
                fhat = ft(f)
                if ft(fhat) != f.negate():
                    raise InvariantViolation("FT(FT(f)) is not f(-v)", {"target": target.label, "degree": r, "sample": s})
                if ft(f, "naive") != ft(f, "decimated"):
                    raise InvariantViolation("naive and decimated FT disagree", {"target": target.label, "degree": r, "sample": s})
                if prev is not None and inner(f, prev) != inner(fhat, ft(prev)):
                    raise InvariantViolation("Plancherel fails", {"target": target.label, "degree": r, "sample": s})
                prev = f
            checked[str(r)] = SAMPLES
        console.info("fourier", f"{target.label}: {SAMPLES} functions per piece")
        out[target.label] = checked
    return {"targets": out}
