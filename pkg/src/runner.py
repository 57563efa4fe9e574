import importlib
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from types import ModuleType
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from . import console
from .builders import build_builtin
from .config import RunConfig
from .errors import InvariantViolation, NotACharacter, UsageError
from .gact import FiniteGroupAction
from .gggr import GradedSetting
from .glie import GradedLieAlgebra
from .models import RunReport, SuiteOutcome, sha256_hex
from .report_signing import sign_report


@dataclass(frozen=True)
class Selection:
    """What the user pointed the command at: a builtin or an algebra/generator file pair."""

    builtin: Optional[str] = None
    q: Optional[int] = None
    algebra_path: Optional[str] = None
    group_path: Optional[str] = None

    @property
    def empty(self) -> bool:
        return not self.builtin and not self.algebra_path

    def to_json(self) -> dict:
        out: Dict[str, Any] = {}
        if self.builtin:
            out["builtin"] = self.builtin
            out["q"] = self.q
        if self.algebra_path:
            out["algebra"] = _file_digest(self.algebra_path)
            out["group"] = _file_digest(self.group_path) if self.group_path else None
        return out


def _file_digest(path: str) -> str:
    try:
        return sha256_hex(Path(path).read_bytes())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e


@dataclass
class Target:
    label: str
    algebra: GradedLieAlgebra
    group: FiniteGroupAction

    def describe(self) -> dict:
        return {
            "label": self.label,
            "q": self.algebra.field.q,
            "n": self.algebra.n,
            "dims": {str(i): d for i, d in self.algebra.dims.items()},
            "groupOrder": self.group.order,
        }


def load_target(config: RunConfig, selection: Selection) -> Target:
    if selection.algebra_path:
        algebra = GradedLieAlgebra.load(selection.algebra_path)
        if not selection.group_path:
            raise UsageError("--algebra needs a --group generator file")
        algebra.validate()
        group = FiniteGroupAction.load(algebra, selection.group_path, config.group_cap)
        return Target(algebra.label or Path(selection.algebra_path).stem, algebra, group)
    if not selection.builtin:
        raise UsageError("choose an algebra with --builtin or --algebra/--group")
    if selection.q is None:
        raise UsageError("--builtin needs --q")
    algebra, group = build_builtin(selection.builtin, selection.q, config.group_cap)
    return Target(f"{selection.builtin}-q{selection.q}", algebra, group)


class Timings:
    def __init__(self, enabled: bool) -> None:
        self.enabled = enabled
        self.phases: Dict[str, float] = {}

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        t0 = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.phases[name] = self.phases.get(name, 0.0) + time.perf_counter() - t0

    def as_dict(self) -> Optional[Dict[str, float]]:
        return dict(self.phases) if self.enabled else None


@dataclass
class RunContext:
    suite_name: str
    config: RunConfig
    targets: List[Target]
    rng: np.random.Generator
    timings: Timings
    metadata: Dict[str, Any] = field(default_factory=dict)
    _settings: Dict[int, GradedSetting] = field(default_factory=dict, repr=False)

    def setting(self, target: Target) -> GradedSetting:
        key = id(target)
        if key not in self._settings:
            self._settings[key] = GradedSetting(target.algebra, target.group, self.config.threads)
        return self._settings[key]

    def settings(self) -> Iterator[Tuple[Target, GradedSetting]]:
        for target in self.targets:
            yield target, self.setting(target)


def _suite_module_candidates(suite: str) -> List[str]:
    normalized = suite.replace("-", "_").replace(".", "_")
    lowerish = normalized.lower()
    return [
        f"src.suites.{normalized}",
        f"src.suites.{lowerish}",
        f"src.suites.suite_{lowerish}",
    ]


def _resolve_suite_module(suite: str) -> ModuleType:
    last_err = None
    for mod_name in _suite_module_candidates(suite):
        try:
            mod = importlib.import_module(mod_name)
            if hasattr(mod, "run") and callable(getattr(mod, "run")):
                return mod
        except ModuleNotFoundError as e:
            last_err = e

    tried = "\n".join([f"  - {m}" for m in _suite_module_candidates(suite)])
    raise UsageError(
        f"Could not import suite '{suite}'. Tried modules:\n{tried}\n"
        f"Last error: {last_err}\n"
        "Run `suites` for the registered names."
    )


def suite_targets(config: RunConfig, module: ModuleType, selection: Selection) -> List[Target]:
    if not selection.empty:
        return [load_target(config, selection)]
    pairs = getattr(module, "DEFAULT_TARGETS", [])
    return [load_target(config, Selection(builtin=b, q=q)) for b, q in pairs]


def run_suite(suite: str, config: RunConfig, selection: Selection) -> RunReport:
    module = _resolve_suite_module(suite)
    timings = Timings(config.timings)
    with timings.phase("build"):
        targets = suite_targets(config, module, selection)
    ctx = RunContext(
        suite_name=suite,
        config=config,
        targets=targets,
        rng=np.random.default_rng(config.seed),
        timings=timings,
    )
    inputs = {"suite": suite, "selection": selection.to_json(), "config": config.describe()}
    report = RunReport("verify", suite, inputs, algebra={"targets": [t.describe() for t in targets]})
    console.info("verify", f"running {suite} on {', '.join(t.label for t in targets) or 'no targets'}")
    try:
        with timings.phase("suite"):
            detail = module.run(ctx)
        report.suites.append(SuiteOutcome(suite, True, detail))
    except (InvariantViolation, NotACharacter) as e:
        report.suites.append(SuiteOutcome(suite, False, {}, str(e), e.witness))
    report.timings = timings.as_dict()
    return report


def list_suites() -> List[dict]:
    from .suites import SUITES

    out = []
    for name, summary in SUITES.items():
        module = _resolve_suite_module(name)
        defaults = [f"{b} q={q}" for b, q in getattr(module, "DEFAULT_TARGETS", [])]
        out.append({"name": name, "summary": summary, "defaults": defaults})
    return out


def _safe_label(label: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in label) or "run"


def _write_run_artifact(config: RunConfig, report: RunReport, out: Optional[str] = None) -> Optional[Path]:
    payload = report.to_json()
    if config.signing_key_b64:
        payload = sign_report(payload, config.signing_key_b64)
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out == "-":
        print(text)
        return None
    fp = Path(out) if out else config.out_dir / f"{report.command}__{_safe_label(report.label)}.json"
    fp.parent.mkdir(parents=True, exist_ok=True)
    fp.write_text(text + "\n", encoding="utf-8")
    return fp


__all__ = [
    "RunContext",
    "Selection",
    "Target",
    "Timings",
    "list_suites",
    "load_target",
    "run_suite",
]
