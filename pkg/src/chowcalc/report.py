"""Check-result bookkeeping shared by the verification suites and the CLI."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .errors import ConsistencyError


@dataclass
class CheckResult:
    name: str
    anchor: str
    status: str  # "pass" | "fail"
    witness: str | None = None
    millis: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "millis": round(self.millis, 3),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def add(self, result: CheckResult):
        self.checks.append(result)

    def extend(self, other):
        self.checks.extend(other.checks if isinstance(other, Report) else other)

    def run(self, name: str, anchor: str, fn) -> CheckResult:
        """Run a check function; any ConsistencyError/AssertionError fails it."""
        start = time.perf_counter()
        witness = None
        status = "pass"
        try:
            fn()
        except ConsistencyError as exc:
            status = "fail"
            witness = exc.witness or str(exc)
        except AssertionError as exc:
            status = "fail"
            witness = str(exc) or "assertion failed"
        millis = (time.perf_counter() - start) * 1000.0
        result = CheckResult(name, anchor, status, witness, millis)
        self.add(result)
        return result

    def to_dict(self, **extra) -> dict:
        checks = sorted(self.checks, key=lambda c: c.name)
        return {"ok": self.ok, "checks": [c.to_dict() for c in checks], **extra}

    def to_json(self, **extra) -> str:
        return json.dumps(self.to_dict(**extra), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for c in sorted(self.checks, key=lambda c: c.name):
            line = f"{c.status.upper():4s} {c.name} ({c.millis:.1f} ms)"
            if c.witness:
                line += f"\n     witness: {c.witness}"
            lines.append(line)
        lines.append("all checks passed" if self.ok else "FAILURES present")
        return "\n".join(lines)
