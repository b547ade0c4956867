"""Validation records shared by the algebra, algebroid and mode checkers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    lhs: Any
    rhs: Any

    def __str__(self) -> str:
        args = ", ".join(str(w) for w in self.witness)
        return f"{self.axiom} at ({args}): {self.lhs} != {self.rhs}"


@dataclass
class ValidationReport:
    """Outcome of checking a family of identities.

    ``violations`` holds the witnesses that are kept (all of them, or only the
    first per axiom, depending on the checker); ``failures`` counts every
    failing instance per axiom, ``checked`` every evaluated instance.
    """

    subject: str
    violations: list[Violation] = field(default_factory=list)
    failures: Counter = field(default_factory=Counter)
    checked: Counter = field(default_factory=Counter)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def failed_axioms(self) -> set[str]:
        return {a for a, n in self.failures.items() if n}

    def record(self, axiom: str, witness: tuple, lhs, rhs, *, first_only: bool = False) -> None:
        self.checked[axiom] += 1
        if lhs != rhs:
            self.failures[axiom] += 1
            if not first_only or self.failures[axiom] == 1:
                self.violations.append(Violation(axiom, witness, lhs, rhs))

    def summary(self) -> str:
        if self.ok:
            total = sum(self.checked.values())
            return f"{self.subject}: valid ({total} instances checked)"
        lines = [f"{self.subject}: {sum(self.failures.values())} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)
