"""Validation reports: ordered lists of named checks with optional witnesses."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INDET = "INDET"


@dataclass(frozen=True)
class Check:
    name: str
    status: Status
    witness: str | None = None


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name, ok, witness=None):
        """Append a check; ``ok`` may be a bool or a :class:`Status`."""
        if isinstance(ok, Status):
            status = ok
        else:
            status = Status.PASS if ok else Status.FAIL
        self.checks.append(Check(name, status, witness))
        return self

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness))
        return self

    @property
    def ok(self):
        return all(c.status is not Status.FAIL for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if c.status is Status.FAIL]

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    def render(self, fmt="text"):
        if fmt == "structured":
            payload = [
                {"check": c.name, "status": c.status.value, "witness": c.witness}
                for c in self.checks
            ]
            return json.dumps({"ok": self.ok, "checks": payload}, indent=2) + "\n"
        lines = []
        for c in self.checks:
            line = f"CHECK {c.name} {c.status.value}"
            if c.witness:
                line += " " + c.witness
            lines.append(line)
        return "\n".join(lines) + ("\n" if lines else "")

    def __str__(self):
        return self.render()
