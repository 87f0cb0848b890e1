"""Check/report containers shared by the verification suites and the CLI.

Reports carry no timing or environment data, so rendering the same inputs
twice gives byte-identical output.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    counterexample: dict | None = None

    def to_dict(self) -> dict:
        data: dict = {"name": self.name, "status": "pass" if self.passed else "fail"}
        if self.detail:
            data["detail"] = self.detail
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return data


@dataclass(frozen=True)
class Report:
    suite: str
    parameters: dict = field(default_factory=dict)
    checks: tuple[Check, ...] = ()

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def summary(self) -> dict:
        passed = sum(1 for check in self.checks if check.passed)
        return {"pass": passed, "fail": len(self.checks) - passed}

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "parameters": self.parameters,
            "checks": [check.to_dict() for check in self.checks],
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_human(self) -> str:
        lines = [f"suite: {self.suite}"]
        for key, value in self.parameters.items():
            lines.append(f"  {key}: {value}")
        for check in self.checks:
            status = "PASS" if check.passed else "FAIL"
            line = f"[{status}] {check.name}"
            if check.detail:
                line += f" -- {check.detail}"
            lines.append(line)
            if check.counterexample is not None:
                lines.append(f"       counterexample: {json.dumps(check.counterexample, sort_keys=False)}")
        counts = self.summary()
        lines.append(f"{counts['pass']} passed, {counts['fail']} failed")
        return "\n".join(lines) + "\n"


def merge(suite: str, parameters: dict, reports: list[Report]) -> Report:
    """Concatenate the checks of several reports under one heading."""
    checks: list[Check] = []
    for report in reports:
        checks.extend(report.checks)
    return Report(suite=suite, parameters=parameters, checks=tuple(checks))
