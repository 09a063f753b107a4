"""Structured pass/fail records for identity verification sweeps."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass
class Failure:
    key: tuple
    lhs: str
    rhs: str

    def to_json(self):
        return {"key": list(self.key), "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class VerificationReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    mode: str = "exact"
    elapsed: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    def record(self, key, lhs, rhs):
        self.failures.append(Failure(tuple(key), _text(lhs), _text(rhs)))

    def finish(self, started):
        self.elapsed = time.monotonic() - started
        self.failures.sort(key=lambda f: f.key)
        return self

    def to_json(self, include_timing=False):
        data = {
            "name": self.name,
            "checked": self.checked,
            "mode": self.mode,
            "passed": self.passed,
            "failures": [f.to_json() for f in self.failures],
        }
        if self.notes:
            data["notes"] = {k: self.notes[k] for k in sorted(self.notes)}
        if include_timing:
            data["elapsed_seconds"] = round(self.elapsed, 3)
        return data

    def summary_line(self):
        status = "pass" if self.passed else "FAIL"
        extra = "" if self.passed else " (%d failures)" % len(self.failures)
        return "[%s] %-58s checked=%-6d %.2fs%s" % (
            status,
            self.name,
            self.checked,
            self.elapsed,
            extra,
        )


def _text(value):
    if hasattr(value, "text"):
        return value.text()
    return str(value)


def suite_to_json(suite_name, reports, config, include_timing=False):
    """The stable JSON envelope for a suite run (timings off by default
    so identical configurations produce byte-identical documents)."""
    return {
        "suite": suite_name,
        "identities": [
            r.to_json(include_timing)
            for r in sorted(reports, key=lambda r: r.name)
        ],
        "config": {k: config[k] for k in sorted(config)},
    }


def dump_json(document):
    return json.dumps(document, indent=2, sort_keys=True)


def all_passed(reports):
    return all(r.passed for r in reports)
