from __future__ import annotations

from .common import degrees, wavefront_cone_block

DEFAULT_TARGETS = [("sl2", 5), ("sl2", 7), ("gl2-z2", 5)]
SAMPLES = 50


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        out[target.label] = {str(r): wavefront_cone_block(setting, r, ctx.rng, SAMPLES) for r in degrees(setting)}
    return {"targets": out}
