from __future__ import annotations

from .. import console
from .common import check_counting, degrees

DEFAULT_TARGETS = [("sl2", 5), ("sl2", 7), ("gl2-z2", 5)]


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        out[target.label] = {str(r): check_counting(setting, r) for r in degrees(setting)}
        console.info("ftgggg", f"{target.label}: counting formula matches the direct transform")
    return {"targets": out}
