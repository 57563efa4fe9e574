"""
Tagged progress lines: `[tag] message` on stderr.

stdout is kept for JSON reports, so nothing here writes to it.
"""

from __future__ import annotations

import os
import sys

_QUIET = os.getenv("WORKBENCH_QUIET", "").strip().lower() in ("1", "true", "yes")


def set_quiet(quiet: bool) -> None:
    global _QUIET
    _QUIET = bool(quiet)


def info(tag: str, message: str) -> None:
    if _QUIET:
        return
    print(f"[{tag}] {message}", file=sys.stderr, flush=True)


def error(tag: str, message: str) -> None:
    print(f"[{tag}] {message}", file=sys.stderr, flush=True)


def done(message: str) -> None:
    print(f"✅ {message}", file=sys.stderr, flush=True)


def failed(message: str) -> None:
    print(f"❌ {message}", file=sys.stderr, flush=True)
