"""Check results and their JSON / text rendering."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

__all__ = ["Check", "Report", "timed_check"]


@dataclass
class Check:
    id: str
    description: str
    anchor: str
    passed: bool
    residual: float
    tolerance: float
    duration: float = 0.0
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class Report:
    suite: str
    seed: int
    checks: list = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)

    def add(self, check: Check):
        self.checks.append(check)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "error": self.error,
            "checks": [dict(asdict(c), status=c.status) for c in self.checks],
        }

    def summary_lines(self) -> list:
        head = f"[{'PASS' if self.passed else 'FAIL'}] {self.suite} ({len(self.checks)} checks, seed {self.seed})"
        lines = [head]
        if self.error:
            lines.append(f"    error: {self.error}")
        for c in self.checks:
            lines.append(
                f"    {c.status:4}  {c.id:<28} residual={c.residual:.3g} tol={c.tolerance:.3g} "
                f"({c.duration * 1000:.0f} ms)"
            )
            if c.detail and not c.passed:
                lines.append(f"          {c.detail}")
        return lines


def timed_check(report: Report, id: str, description: str, anchor: str, fn, tolerance: float = 0.0):
    """Run ``fn() -> residual`` (or ``(residual, detail)``) and record the outcome.

    Exact checks use ``tolerance = 0`` and pass only on a zero residual.
    """
    t0 = time.perf_counter()
    try:
        out = fn()
        residual, detail = out if isinstance(out, tuple) else (out, "")
        residual = float(residual)
        passed = residual <= tolerance
    except Exception as exc:  # a crashing check is a failed check
        residual, detail, passed = float("inf"), f"{type(exc).__name__}: {exc}", False
    report.add(Check(id, description, anchor, passed, residual, tolerance, time.perf_counter() - t0, detail))


def write_json(path, reports) -> None:
    with open(path, "w") as fh:
        json.dump({"reports": [r.to_dict() for r in reports]}, fh, indent=2)
