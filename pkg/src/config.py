from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from .errors import UsageError
from .gact import DEFAULT_GROUP_CAP


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise UsageError(f"{name} must be positive, got {value}")
    return value


def _env_flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes")


@dataclass(frozen=True)
class RunConfig:
    threads: int
    group_cap: int
    out_dir: Path
    quiet: bool = False
    timings: bool = False
    seed: int = 0
    signing_key_b64: str = ""
    verify_key_b64: str = ""

    def describe(self) -> dict:
        # keys and thread count stay out of reports
        return {"groupCap": self.group_cap, "seed": self.seed}


def load_config(args: Optional[Any] = None) -> RunConfig:
    """Environment first, then any flags set on the argparse namespace."""
    threads = _env_int("WORKBENCH_THREADS", os.cpu_count() or 1)
    cap = _env_int("WORKBENCH_GROUP_CAP", DEFAULT_GROUP_CAP)
    out_dir = Path(os.getenv("WORKBENCH_OUT_DIR", "").strip() or "out")
    quiet = _env_flag("WORKBENCH_QUIET")

    def flag(name: str) -> Any:
        return getattr(args, name, None) if args is not None else None

    if flag("threads") is not None:
        threads = int(flag("threads"))
    if flag("group_cap") is not None:
        cap = int(flag("group_cap"))
    if threads < 1 or cap < 1:
        raise UsageError("--threads and --group-cap must be positive")
    return RunConfig(
        threads=threads,
        group_cap=cap,
        out_dir=out_dir,
        quiet=quiet or bool(flag("quiet")),
        timings=bool(flag("timings")),
        seed=int(flag("seed") or 0),
        signing_key_b64=os.getenv("REPORT_ED25519_PRIVATE_B64", "").strip(),
        verify_key_b64=os.getenv("REPORT_ED25519_PUBLIC_B64", "").strip(),
    )
