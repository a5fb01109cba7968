"""Self-test outcomes."""

from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    failures: Tuple[str, ...] = ()


@dataclass(frozen=True)
class SelfTestReport:
    checks: Tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)
