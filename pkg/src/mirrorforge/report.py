"""Tiny pass/fail report shared by the verification suites."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Report:
    """Outcome of one verification suite.

    ``first_failure`` records the earliest mismatch as an ``{"where",
    "order", "lhs", "rhs"}`` mapping and stays ``None`` on success.
    ``checks`` counts individual comparisons, passed or not.
    """

    suite: str
    status: str = "PASS"
    first_failure: dict | None = None
    checks: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def fail(self, where: str, order, lhs, rhs) -> None:
        if self.first_failure is None:
            self.status = "FAIL"
            self.first_failure = {
                "where": where,
                "order": order,
                "lhs": repr(lhs),
                "rhs": repr(rhs),
            }

    def check_equal(self, where: str, lhs, rhs) -> None:
        self.checks += 1
        if not lhs == rhs:
            self.fail(where, None, lhs, rhs)

    def check_series(self, where: str, lhs, rhs, order: int | None = None) -> None:
        """Coefficientwise comparison through min(orders) or the given order."""
        self.checks += 1
        n = min(lhs.order, rhs.order)
        if order is not None:
            if order > n:
                raise ValueError(
                    f"{where}: comparison order {order} beyond truncation {n}"
                )
            n = order
        for k in range(n + 1):
            if not lhs[k] == rhs[k]:
                self.fail(where, k, lhs[k], rhs[k])
                return

    def absorb(self, other: "Report") -> None:
        """Fold another suite's outcome into this one."""
        self.checks += other.checks
        if not other.passed and self.first_failure is None:
            self.status = "FAIL"
            self.first_failure = dict(other.first_failure)
            self.first_failure["where"] = (
                f"{other.suite}:{self.first_failure.get('where')}"
            )

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "status": self.status,
            "first_failure": self.first_failure,
        }
