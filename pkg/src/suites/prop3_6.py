from __future__ import annotations

from .. import console
from .common import check_gammas, check_pairings, degrees

DEFAULT_TARGETS = [("sl2", 5), ("sl2", 7), ("gl2-z2", 5)]


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        per_degree = {}
        for r in degrees(setting):
            per_degree[str(r)] = {"gammas": check_gammas(setting, r), "pairings": check_pairings(setting, r)}
        console.info("prop3.6", f"{target.label}: support, integrality and slice pairings hold")
        out[target.label] = per_degree
    return {"targets": out}
