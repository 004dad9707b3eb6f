"""Verification reports."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

from .polynomials import GradedPolynomial


@dataclass
class IdentityReport:
    identity_name: str
    parameters: dict[str, Any]
    residual: GradedPolynomial = field(default_factory=GradedPolynomial)
    failures: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.residual.is_zero() and not self.failures

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "identityName": self.identity_name,
            "parameters": self.parameters,
            "status": self.status,
            "residual": self.residual.to_json(),
        }
        if self.failures:
            out["failures"] = self.failures
        if self.details:
            out["details"] = self.details
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@contextmanager
def timed(report: IdentityReport):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed = time.perf_counter() - start
