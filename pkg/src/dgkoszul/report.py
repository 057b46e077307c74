"""Validation reports: counts of checks run and the violations found."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

from .errors import InvariantViolation


@dataclass
class Report:
    subject: str
    checks: Dict[str, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    def record(self, check: str, ok: bool, detail: str = "") -> bool:
        self.checks[check] = self.checks.get(check, 0) + 1
        if not ok:
            self.violations.append(f"{check}: {detail}" if detail else check)
        return ok

    def fail(self, check: str, detail: str = ""):
        self.record(check, False, detail)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "Report") -> "Report":
        for k, n in other.checks.items():
            self.checks[k] = self.checks.get(k, 0) + n
        self.violations.extend(f"{other.subject}: {v}" for v in other.violations)
        return self

    def raise_if_failed(self, exc=InvariantViolation):
        if self.violations:
            more = f" (+{len(self.violations) - 1} more)" if len(self.violations) > 1 else ""
            raise exc(f"{self.subject}: {self.violations[0]}{more}")
        return self

    def __str__(self) -> str:
        total = sum(self.checks.values())
        head = f"{self.subject}: {'ok' if self.ok else 'FAILED'} ({total} checks)"
        return "\n".join([head] + [f"  - {v}" for v in self.violations[:20]])
