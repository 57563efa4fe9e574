"""Checks shared by several suites, one piece at a time."""

from __future__ import annotations

from typing import Dict, List, Tuple

import numpy as np

from .. import console
from ..errors import InvariantViolation
from ..fchar import PieceFunction, combine, is_invariant_character
from ..gact import ADJOINT
from ..gggr import GradedSetting, orbit_labels
from ..sl2 import all_triples_count


def degrees(setting: GradedSetting) -> List[int]:
    A = setting.algebra
    return [i for i in range(A.n) if A.dims[i]]


def check_gammas(setting: GradedSetting, r: int) -> List[dict]:
    rows = []
    for orbit in setting.nilpotent_coadjoint_orbits(r):
        setting.check_support(orbit)
        setting.check_representative_independence(orbit)
        dec = is_invariant_character(setting.gamma_direct(orbit), setting.group)
        rows.append(
            {
                "orbit": orbit.representative,
                "support": int(setting.gamma_direct(orbit).support().size),
                "ftMultiplicities": dec.to_json()["multiplicities"],
            }
        )
    return rows


def triple_counts(setting: GradedSetting, r: int) -> Dict[str, int]:
    """Triples through each nonzero nilpotent orbit representative of g_r, checked against q^dim u_0^e."""
    A = setting.algebra
    counts = {}
    for orbit in setting.group.nilpotent_orbits(r, ADJOINT):
        e = A.decode(r, orbit.representative)
        if not e.any():
            continue
        count, _ = all_triples_count(A, r, e)
        counts[str(orbit.representative)] = count
    return counts


def check_pairings(setting: GradedSetting, r: int) -> dict:
    rows = setting.pairing_table(r)
    return {"pairs": len(rows), "sliceHits": sum(1 for row in rows if row["sliceHit"])}


def check_counting(setting: GradedSetting, r: int) -> List[int]:
    done = []
    for orbit in setting.nilpotent_coadjoint_orbits(r):
        setting.check_counting_formula(orbit)
        done.append(orbit.representative)
    return done


def random_character(setting: GradedSetting, r: int, rng: np.random.Generator, high: int = 3) -> Tuple[PieceFunction, Dict[int, int]]:
    orbits = setting.coadjoint_orbits(r)
    coeffs = [int(c) for c in rng.integers(0, high + 1, size=len(orbits))]
    f = combine([setting.chi(o) for o in orbits], coeffs)
    return f, {o.representative: c for o, c in zip(orbits, coeffs) if c}


def check_wavefront_cone(setting: GradedSetting, r: int, f: PieceFunction, label: str) -> List[int]:
    wf = orbit_labels(setting.wavefront(f))
    support = setting.support_orbits(f)
    cone = orbit_labels(setting.cone(support, r))
    if wf != cone:
        raise InvariantViolation(
            "WF(f) differs from the cone of supp FT(f)",
            {"function": label, "degree": r, "wavefront": wf, "cone": cone},
        )
    setting.check_cone_negation(support)
    return wf


def wavefront_cone_block(setting: GradedSetting, r: int, rng: np.random.Generator, samples: int) -> dict:
    per_orbit = {}
    for orbit in setting.coadjoint_orbits(r):
        per_orbit[str(orbit.representative)] = check_wavefront_cone(setting, r, setting.chi(orbit), f"chi[{orbit.representative}]")
    for s in range(samples):
        f, _ = random_character(setting, r, rng)
        check_wavefront_cone(setting, r, f, f"random[{s}]")
    console.info("suite", f"degree {r}: WF = cone on {len(per_orbit)} orbit characters and {samples} random characters")
    return {"orbitCharacters": per_orbit, "randomCharacters": samples}
