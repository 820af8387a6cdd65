"""Results of law-suite runs, with JSON and text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1


@dataclass
class LawResult:
    law: str
    passed: bool
    checked: int = 0
    counterexample: dict[str, Any] | None = None
    asserted: bool = True      # False for laws that are reported, not required
    note: str = ""

    @property
    def verdict(self) -> str:
        if not self.asserted:
            return "info"
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "law": self.law,
            "verdict": self.verdict,
            "passed": self.passed,
            "asserted": self.asserted,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "note": self.note,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LawResult":
        return cls(doc["law"], doc["passed"], doc["checked"], doc["counterexample"],
                   doc["asserted"], doc.get("note", ""))


@dataclass
class Report:
    suite: str
    scale: dict[str, Any]
    results: list[LawResult] = field(default_factory=list)
    elapsed: float = 0.0
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.asserted)

    def get(self, law: str) -> LawResult:
        for r in self.results:
            if r.law == law:
                return r
        raise KeyError(law)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "scale": self.scale,
            "seed": self.seed,
            "elapsed_seconds": round(self.elapsed, 4),
            "passed": self.passed,
            "results": [r.to_json() for r in self.results],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Report":
        return cls(doc["suite"], doc["scale"], [LawResult.from_json(r) for r in doc["results"]],
                   doc["elapsed_seconds"], doc["seed"])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        scale = ", ".join(f"{k}={v}" for k, v in self.scale.items())
        lines = [f"suite {self.suite}  [{scale}]" + (f"  seed={self.seed}" if self.seed is not None else "")]
        width = max((len(r.law) for r in self.results), default=4)
        for r in self.results:
            extra = f"  {r.note}" if r.note else ""
            lines.append(f"  {r.verdict.upper():4}  {r.law:<{width}}  checked={r.checked}{extra}")
            if r.counterexample is not None and not r.passed:
                lines.append(f"        counterexample: {json.dumps(r.counterexample, sort_keys=True)}")
        lines.append(f"  {'PASS' if self.passed else 'FAIL'}  ({self.elapsed:.2f}s)")
        return "\n".join(lines)


def merge(name: str, reports: list[Report]) -> Report:
    """Concatenate reports in the given order, prefixing law names by suite."""
    results = []
    for rep in reports:
        for r in rep.results:
            results.append(LawResult(f"{rep.suite}/{r.law}", r.passed, r.checked,
                                     r.counterexample, r.asserted, r.note))
    seeds = {r.seed for r in reports if r.seed is not None}
    return Report(name, {"suites": [r.suite for r in reports]}, results,
                  sum(r.elapsed for r in reports), seeds.pop() if len(seeds) == 1 else None)
