"""Structured verdicts: one CheckResult per verified identity, plus
serialisation of whole suite runs to deterministic text/JSON reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

REPORT_VERSION = 1


@dataclass
class CheckResult:
    id: str
    paper_anchor: str
    status: str          # "pass" | "fail" | "skip"
    residual: str = ""   # short summary of the residual, empty when zero
    millis: int = 0

    def as_dict(self):
        return {"id": self.id, "paper_anchor": self.paper_anchor,
                "status": self.status, "residual": self.residual,
                "millis": self.millis}


@dataclass
class Report:
    config: dict
    checks: list = field(default_factory=list)
    version: int = REPORT_VERSION

    def extend(self, results):
        self.checks.extend(results)

    def finalize(self):
        self.checks.sort(key=lambda c: c.id)

    @property
    def totals(self):
        t = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            t[c.status] = t.get(c.status, 0) + 1
        t["total"] = len(self.checks)
        return t

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def as_dict(self):
        return {
            "version": self.version,
            "config": self.config,
            "checks": [c.as_dict() for c in self.checks],
            "totals": self.totals,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        rep = cls(config=data["config"], version=data["version"])
        for c in data["checks"]:
            rep.checks.append(CheckResult(
                id=c["id"], paper_anchor=c["paper_anchor"],
                status=c["status"], residual=c["residual"],
                millis=c["millis"]))
        return rep

    def to_text(self):
        lines = [f"hookw report v{self.version}"]
        for key in sorted(self.config):
            lines.append(f"  {key} = {self.config[key]}")
        lines.append("")
        width = max((len(c.id) for c in self.checks), default=4)
        for c in self.checks:
            line = f"{c.status.upper():4s}  {c.id:<{width}s}  [{c.paper_anchor}]"
            if c.millis:
                line += f"  ({c.millis} ms)"
            if c.residual:
                line += f"\n      residual: {c.residual}"
            lines.append(line)
        t = self.totals
        lines.append("")
        lines.append(f"totals: {t['pass']} pass, {t['fail']} fail, "
                     f"{t['skip']} skip, {t['total']} total")
        return "\n".join(lines) + "\n"

    def strip_timings(self):
        for c in self.checks:
            c.millis = 0
        return self
