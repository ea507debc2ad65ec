"""Pass/fail results that carry either a certificate or a counterexample."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    ok: bool
    name: str
    checks: int = 0
    witness: dict[str, Any] | None = None
    justification: str = ""
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict[str, Any]:
        out = {"check": self.name, "ok": self.ok, "checks": self.checks}
        if self.justification:
            out["justification"] = self.justification
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"[{status}] {self.name} ({self.checks} checks)"
        if self.justification:
            text += f" -- {self.justification}"
        if self.witness is not None:
            text += f" witness={self.witness}"
        return text
