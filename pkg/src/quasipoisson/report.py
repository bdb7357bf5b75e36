"""Verification records and reports shared by every suite and the CLI."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of one verified identity.

    ``anchor`` is the identity being checked, written out as a formula.
    """

    check_id: str
    anchor: str
    max_defect: float
    tolerance: float
    samples: int = 1
    seed: int | None = None
    mean_defect: float | None = None

    @property
    def passed(self) -> bool:
        return math.isfinite(self.max_defect) and self.max_defect < self.tolerance

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["passed"] = self.passed
        return d


@dataclass
class VerificationReport:
    suite: str
    records: list[CheckRecord] = field(default_factory=list)
    environment: dict[str, Any] = field(default_factory=dict)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def check(self, check_id, anchor, defects, tolerance, seed=None) -> CheckRecord:
        """Record the max (and mean) of a collection of defects."""
        values = [float(d) for d in (defects if hasattr(defects, "__iter__") else [defects])]
        if not values:
            raise ValueError(f"check {check_id} has no samples")
        rec = CheckRecord(
            check_id=check_id,
            anchor=anchor,
            max_defect=max(values),
            tolerance=float(tolerance),
            samples=len(values),
            seed=seed,
            mean_defect=sum(values) / len(values),
        )
        return self.add(rec)

    def extend(self, other: "VerificationReport") -> None:
        self.records.extend(other.records)
        self.environment.update(other.environment)

    def __getitem__(self, check_id: str) -> CheckRecord:
        for r in self.records:
            if r.check_id == check_id:
                return r
        raise KeyError(check_id)

    @property
    def passed(self) -> bool:
        return bool(self.records) and all(r.passed for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def sorted_records(self) -> list[CheckRecord]:
        return sorted(self.records, key=lambda r: r.check_id)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "environment": dict(sorted(self.environment.items())),
            "records": [r.to_dict() for r in self.sorted_records()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self, color: bool = False) -> str:
        def mark(ok: bool) -> str:
            word = "PASS" if ok else "FAIL"
            if not color:
                return word
            return f"\033[{32 if ok else 31}m{word}\033[0m"

        width = max((len(r.check_id) for r in self.records), default=10)
        lines = [f"suite: {self.suite}"]
        for r in self.sorted_records():
            status = mark(r.passed)
            lines.append(
                f"{r.check_id:<{width}}  defect={r.max_defect:.3e}  tol={r.tolerance:.1e}  {status}  {r.anchor}"
            )
        lines.append(f"result: {mark(self.passed)} ({len(self.failures())} failing of {len(self.records)})")
        return "\n".join(lines) + "\n"
