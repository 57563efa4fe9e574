from __future__ import annotations

from typing import Any, Dict, Optional


class WorkbenchError(RuntimeError):
    """Base class for every error the workbench raises on purpose."""

    exit_code = 1


class UsageError(WorkbenchError):
    pass


class ResourceLimitError(WorkbenchError):
    pass


class NoNilpotencyOracle(UsageError):
    def __init__(self, label: str = "") -> None:
        super().__init__(f"no nilpotency oracle for algebra {label!r}" if label else "no nilpotency oracle")


class WindowError(UsageError):
    pass


class InvariantViolation(WorkbenchError):
    """A checked identity failed. `witness` names the orbit or point that broke it."""

    exit_code = 2

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.witness = dict(witness or {})


class JMFailure(InvariantViolation):
    def __init__(self, detail: str, witness: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(f"JM failure: {detail}", witness)


class NotACharacter(WorkbenchError):
    def __init__(self, reason: str, witness: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(f"not a character: {reason}")
        self.reason = reason
        self.witness = dict(witness or {})


__all__ = [
    "WorkbenchError",
    "UsageError",
    "ResourceLimitError",
    "NoNilpotencyOracle",
    "WindowError",
    "InvariantViolation",
    "JMFailure",
    "NotACharacter",
]
