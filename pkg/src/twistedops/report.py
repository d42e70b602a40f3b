"""Structured verification outcomes and their JSON/text forms."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check.

    ``witness`` must be non-empty whenever the check failed; it carries
    the serialized residual or a short description of the mismatch.
    """

    name: str
    status: str  # "pass" | "fail"
    witness: str | None = None
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class Report:
    algebra: str
    suite: str
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def overall(self) -> str:
        return "pass" if all(c.ok for c in self.checks) else "fail"

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "suite": self.suite,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "witness": c.witness,
                    "elapsed_ms": c.elapsed_ms,
                }
                for c in self.checks
            ],
            "overall": self.overall,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = [f"algebra {self.algebra}  suite {self.suite}"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            line = f"  {c.name:<{width}}  {c.status}  ({c.elapsed_ms} ms)"
            if c.witness:
                line += f"  witness: {c.witness}" if not c.ok else f"  -> {c.witness}"
            lines.append(line)
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines) + "\n"


def timed_check(name: str, fn) -> CheckResult:
    """Run ``fn() -> (ok, witness)`` and wrap it with wall-clock timing."""
    start = time.perf_counter()
    ok, witness = fn()
    elapsed = int((time.perf_counter() - start) * 1000)
    if not ok and not witness:
        witness = "failed (no further detail)"
    return CheckResult(name, "pass" if ok else "fail", witness, elapsed)


REPORT_SCHEMA_KEYS = {"algebra", "suite", "checks", "overall"}
CHECK_SCHEMA_KEYS = {"name", "status", "witness", "elapsed_ms"}


def validate_report_dict(data: dict) -> list[str]:
    """Return a list of schema violations (empty when valid)."""
    problems = []
    if set(data) != REPORT_SCHEMA_KEYS:
        problems.append(f"top-level keys {sorted(data)}")
    if data.get("overall") not in ("pass", "fail"):
        problems.append("overall must be pass|fail")
    for c in data.get("checks", []):
        if set(c) != CHECK_SCHEMA_KEYS:
            problems.append(f"check keys {sorted(c)}")
            continue
        if c["status"] not in ("pass", "fail"):
            problems.append(f"bad status {c['status']!r}")
        if not isinstance(c["elapsed_ms"], int):
            problems.append("elapsed_ms must be int")
        if c["witness"] is not None and not isinstance(c["witness"], str):
            problems.append("witness must be str or null")
        if c["status"] == "fail" and not c["witness"]:
            problems.append(f"failed check {c['name']!r} lacks a witness")
    return problems
