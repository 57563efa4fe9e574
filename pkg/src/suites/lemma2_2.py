from __future__ import annotations

from .. import console
from ..errors import InvariantViolation, NotACharacter
from ..fchar import PieceFunction, is_invariant_character
from .common import degrees, random_character

DEFAULT_TARGETS = [("gl2", 5)]
SAMPLES = 100


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        A = setting.algebra
        per_degree = {}
        for r in degrees(setting):
            for s in range(SAMPLES):
                f, expected = random_character(setting, r, ctx.rng)
                got = is_invariant_character(f, setting.group).multiplicities
                if got != expected:
                    raise InvariantViolation(
                        "decomposition does not recover the multiplicities",
                        {"target": target.label, "degree": r, "sample": s},
                    )
                x = int(ctx.rng.integers(0, A.piece_size(r)))
                bumped = f + PieceFunction.indicator(A, r, [x])
                try:
                    is_invariant_character(bumped, setting.group)
                except NotACharacter:
                    continue
                raise InvariantViolation(
                    "perturbed function still decomposes as a character",
                    {"target": target.label, "degree": r, "sample": s, "point": x},
                )
            per_degree[str(r)] = {"orbits": len(setting.coadjoint_orbits(r)), "samples": SAMPLES}
        console.info("lemma2.2", f"{target.label}: round trip and perturbation on {SAMPLES} samples per piece")
        out[target.label] = per_degree
    return {"targets": out}
