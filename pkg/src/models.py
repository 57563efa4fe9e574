# src/models.py
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

REPORT_VERSION = 1


def canonical_json(obj: Any) -> bytes:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True).encode("utf-8")


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass
class SuiteOutcome:
    name: str
    ok: bool
    detail: Dict[str, Any] = field(default_factory=dict)
    message: str = ""
    witness: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        out: Dict[str, Any] = {"name": self.name, "ok": self.ok, "detail": self.detail}
        if not self.ok:
            out["message"] = self.message
            out["witness"] = self.witness
        return out


@dataclass
class RunReport:
    """
    One CLI invocation. `inputs` is everything that determines the result;
    its digest goes into the report so two reports can be compared without
    diffing payloads.
    """

    command: str
    label: str
    inputs: Dict[str, Any]
    algebra: Dict[str, Any] = field(default_factory=dict)
    result: Any = None
    suites: List[SuiteOutcome] = field(default_factory=list)
    timings: Optional[Dict[str, float]] = None

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    def input_digest(self) -> str:
        return sha256_hex(canonical_json(self.inputs))

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "reportVersion": REPORT_VERSION,
            "command": self.command,
            "label": self.label,
            "inputs": self.inputs,
            "inputDigest": self.input_digest(),
            "algebra": self.algebra,
            "result": self.result,
            "suites": [s.to_json() for s in self.suites],
            "ok": self.ok,
        }
        if self.timings is not None:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


__all__ = ["REPORT_VERSION", "RunReport", "SuiteOutcome", "canonical_json", "sha256_hex"]
