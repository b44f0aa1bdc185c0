"""Verification reports: one entry per checked instance, stable ordering."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    suite: str
    instance: str
    status: str  # "pass" | "fail" | "skipped"
    residual: str = ""
    seconds: float = 0.0


@dataclass
class Report:
    suite: str
    params: dict = field(default_factory=dict)
    results: list = field(default_factory=list)

    def add(self, instance, ok, residual=""):
        self.results.append(
            CheckResult(self.suite, instance, "pass" if ok else "fail",
                        "" if ok else (residual or "nonzero residual"))
        )

    def add_skip(self, instance, reason):
        self.results.append(CheckResult(self.suite, instance, "skipped", reason))

    def extend(self, other):
        self.results.extend(other.results)

    @property
    def ok(self):
        return all(r.status != "fail" for r in self.results)

    def counts(self):
        c = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.results:
            c[r.status] += 1
        return c

    def sorted_results(self):
        return sorted(self.results, key=lambda r: (r.suite, r.instance))

    def to_dict(self, with_timing=False):
        out = {
            "suite": self.suite,
            "params": self.params,
            "results": [
                {
                    "instance": r.instance,
                    "status": r.status,
                    "residual": r.residual,
                    **({"seconds": round(r.seconds, 6)} if with_timing else {}),
                }
                for r in self.sorted_results()
            ],
            "summary": self.counts(),
        }
        return out

    def to_json(self, with_timing=False):
        return json.dumps(self.to_dict(with_timing), indent=2, sort_keys=True)

    def summary_line(self):
        c = self.counts()
        flag = "OK " if self.ok else "FAIL"
        return "[%s] %-14s pass=%d fail=%d skipped=%d" % (
            flag, self.suite, c["pass"], c["fail"], c["skipped"]
        )


class timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        return False
