from __future__ import annotations

from .. import console
from ..builders import BUILTINS
from ..errors import InvariantViolation
from .common import check_counting, check_gammas, check_pairings, degrees, triple_counts, wavefront_cone_block
from .lemma3_9 import SAMPLES

DEFAULT_TARGETS = [("sl2", 5), ("gl2", 5), ("gl3", 3), ("gl2-z2", 5), ("gl3-z3", 11)]
GRADED_DEGREE = 1


def expected_order(name: str, q: int) -> int:
    gl2 = (q**2 - 1) * (q**2 - q)
    return {
        "sl2": gl2 // (q - 1),
        "gl2": gl2,
        "gl3": (q**3 - 1) * (q**3 - q) * (q**3 - q**2),
        "gl2-z2": (q - 1) ** 2,
        "gl3-z3": (q - 1) ** 3,
    }[name]


def _builtin_of(label: str):
    name, _, q = label.rpartition("-q")
    if name in BUILTINS and q.isdigit():
        return name, int(q)
    return None


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        entry = {"groupOrder": setting.group.order, "dims": [setting.algebra.dims[i] for i in range(setting.algebra.n)]}
        known = _builtin_of(target.label)
        if known:
            want = expected_order(*known)
            if setting.group.order != want:
                raise InvariantViolation(
                    f"group order {setting.group.order}, expected {want}",
                    {"target": target.label},
                )
        for r in degrees(setting):
            setting.group.check_coadjoint_contragredient(r)
        if setting.algebra.n == 3 and setting.algebra.dims[GRADED_DEGREE]:
            r = GRADED_DEGREE
            entry["graded"] = {
                "gammas": check_gammas(setting, r),
                "pairings": check_pairings(setting, r),
                "counting": check_counting(setting, r),
                "tripleCounts": triple_counts(setting, r),
                "wavefront": wavefront_cone_block(setting, r, ctx.rng, SAMPLES),
            }
        console.info("cor5.9build", f"{target.label}: validated, group order {setting.group.order}")
        out[target.label] = entry
    return {"targets": out}
