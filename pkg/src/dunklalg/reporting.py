"""Report structures shared by the verification suites and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    """Outcome of one identity/relation family."""

    name: str
    instances: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, instance, witness: str | None = None) -> None:
        entry = {"relation": self.name, "instance": str(instance)}
        if witness is not None:
            entry["witness"] = witness
        self.failures.append(entry)


@dataclass
class Report:
    """Aggregated, JSON-serializable verification report."""

    check: str
    family: str
    rank: int
    params: dict = field(default_factory=dict)
    results: list[CheckResult] = field(default_factory=list)
    timing: float | None = None

    @property
    def status(self) -> str:
        return "pass" if all(r.passed for r in self.results) else "fail"

    def add(self, result: CheckResult) -> None:
        self.results.append(result)

    def counts(self) -> dict:
        return {r.name: r.instances for r in self.results}

    def failures(self) -> list[dict]:
        out = []
        for r in self.results:
            out.extend(r.failures)
        return out

    def to_dict(self, include_timing: bool = False) -> dict:
        data = {
            "check": self.check,
            "group": {"family": self.family, "rank": self.rank},
            "params": self.params,
            "status": self.status,
            "failures": self.failures(),
            "counts": self.counts(),
        }
        if include_timing and self.timing is not None:
            data["timing"] = self.timing
        return data

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2) + "\n"

    def to_text(self, include_timing: bool = False) -> str:
        lines = ["check: %s" % self.check,
                 "group: %s rank %d" % (self.family, self.rank)]
        for key in sorted(self.params):
            lines.append("param %s: %s" % (key, self.params[key]))
        for r in self.results:
            lines.append("%-24s instances=%-6d %s" % (r.name, r.instances,
                                                      "pass" if r.passed else "FAIL"))
            for f in r.failures:
                lines.append("  counterexample %s" % f["instance"])
                if "witness" in f:
                    lines.append("    witness: %s" % f["witness"])
        lines.append("status: %s" % self.status)
        if include_timing and self.timing is not None:
            lines.append("timing: %.3fs" % self.timing)
        return "\n".join(lines) + "\n"


def emit_report(report: Report, path: str | None, fmt: str = "text",
                include_timing: bool = False) -> str:
    """Serialize a report; byte-deterministic unless timing is included."""
    if fmt == "json":
        payload = report.to_json(include_timing)
    elif fmt == "text":
        payload = report.to_text(include_timing)
    else:
        raise ValueError("unknown format %r" % fmt)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    return payload
