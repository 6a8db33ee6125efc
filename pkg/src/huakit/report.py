"""Structured verification reports with deterministic JSON serialisation.

A report is an instance descriptor plus one record per check.  Timings
are only recorded on request so that default output is byte-identical
across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    check: str
    statement: str
    status: str                 # pass | fail | skipped
    witness: object = None
    time_ms: float | None = None

    def to_dict(self) -> dict:
        d = {"check": self.check, "statement": self.statement,
             "status": self.status}
        if self.status == "fail" or self.witness is not None:
            d["witness"] = self.witness
        if self.time_ms is not None:
            d["time_ms"] = round(self.time_ms, 1)
        return d


def passed(check, statement, witness=None):
    return CheckResult(check, statement, "pass", witness)


def failed(check, statement, witness):
    return CheckResult(check, statement, "fail", witness)


def skipped(check, statement, witness=None):
    return CheckResult(check, statement, "skipped", witness)


def from_flag(check, statement, ok, witness=None):
    """Failures always carry a witness; passes keep any data handed over."""
    if not ok and witness is None:
        witness = {}
    return CheckResult(check, statement, "pass" if ok else "fail", witness)


@dataclass
class Report:
    instance: dict
    checks: list = field(default_factory=list)

    def add(self, result: CheckResult):
        self.checks.append(result)
        return result

    def extend(self, results):
        self.checks.extend(results)

    @property
    def all_passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] = out.get(c.status, 0) + 1
        return out

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.counts(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def write_report(report: Report, path) -> None:
    with open(path, "w") as fh:
        fh.write(report.to_json())
