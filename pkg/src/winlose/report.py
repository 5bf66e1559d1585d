"""Diagnostic reports returned by every validator."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    where: str  # e.g. "A column", "B^T row", "gate", "player"
    index: object
    clause: str

    def __str__(self) -> str:
        return f"{self.where} {self.index}: {self.clause}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validator: ``ok`` plus every violation found.

    Validators never stop at the first problem, so a failing report lists
    all offending rows, columns, gates or players.
    """

    subject: str
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def clauses(self) -> set[str]:
        return {v.clause for v in self.violations}

    def format(self) -> str:
        if self.ok:
            return f"{self.subject}: pass"
        lines = [f"{self.subject}: FAIL ({len(self.violations)} violations)"]
        lines += [f"  - {v}" for v in self.violations]
        return "\n".join(lines)

    __str__ = format


class ReportBuilder:
    def __init__(self, subject: str):
        self.subject = subject
        self._violations: list[Violation] = []

    def add(self, where: str, index: object, clause: str) -> None:
        self._violations.append(Violation(where, index, clause))

    def extend(self, report: ValidationReport) -> None:
        self._violations.extend(report.violations)

    def build(self) -> ValidationReport:
        return ValidationReport(self.subject, tuple(self._violations))
