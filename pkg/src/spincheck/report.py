"""Uniform pass/fail reporting for verification suites.

Every ``verify_*`` entry point returns a :class:`VerificationReport`: a named
list of individual checks, each with a boolean outcome and, when the check
fails, a witness string pinning down the first counterexample (the identity
instance, the matrix entry, the eigenvalue...).  Reports serialize to JSON for
the command line front end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    witness: str | None = None

    def as_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    suite: str
    params: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: str | None = None) -> None:
        if not passed and witness is None:
            witness = "failed (no witness recorded)"
        self.checks.append(Check(name, bool(passed), witness))

    def record(self, name: str, fn) -> None:
        """Run ``fn`` (returning truthy/falsy or raising) as a named check."""
        try:
            result = fn()
        except Exception as exc:  # noqa: BLE001 - the witness is the point
            self.add(name, False, f"{type(exc).__name__}: {exc}")
            return
        if result is None or result is True:
            self.add(name, True)
        elif result is False:
            self.add(name, False, "identity does not hold")
        else:
            self.add(name, False, str(result))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_json(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "params": self.params,
            "checks": [c.as_json() for c in self.checks],
            "pass": self.passed,
        }

    def summary(self) -> str:
        n_ok = sum(c.passed for c in self.checks)
        lines = [f"[{self.suite}] {n_ok}/{len(self.checks)} checks passed"]
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            line = f"  {mark} {c.name}"
            if not c.passed and c.witness:
                line += f"  -- {c.witness}"
            lines.append(line)
        return "\n".join(lines)
