from __future__ import annotations

from .. import console
from .common import degrees, triple_counts

DEFAULT_TARGETS = [("sl2", 5), ("sl2", 7), ("gl2-z2", 5)]


def run(ctx) -> dict:
    out = {}
    for target, setting in ctx.settings():
        out[target.label] = {str(r): triple_counts(setting, r) for r in degrees(setting)}
        console.info("lemma3.4count", f"{target.label}: triple counts match q^dim u")
    return {"targets": out}
