"""Verification reports.

Every checker returns a :class:`Report`.  Reports are plain data: a verdict,
optional counterexample, nested sub-reports and a few counters.  ``to_dict``
gives the deterministic document printed by the command line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

PASS, FAIL, ERROR = "pass", "fail", "error"


class PreconditionError(ValueError):
    """An operation was called on data violating its precondition."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass
class Report:
    name: str
    verdict: str = PASS
    sub_reports: list = field(default_factory=list)
    counterexample: dict | None = None
    checked: int = 0
    skipped: int = 0
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict == PASS

    @property
    def passed(self):
        return self.verdict == PASS

    @classmethod
    def combine(cls, name, subs, **details):
        """Conjunction of sub-reports; an error anywhere dominates a fail."""
        subs = list(subs)
        verdict = PASS
        if any(s.verdict == ERROR for s in subs):
            verdict = ERROR
        elif any(s.verdict == FAIL for s in subs):
            verdict = FAIL
        return cls(
            name,
            verdict,
            sub_reports=subs,
            checked=sum(s.checked for s in subs),
            skipped=sum(s.skipped for s in subs),
            details=details,
        )

    def sub(self, name):
        for s in self.sub_reports:
            if s.name == name:
                return s
        raise KeyError(name)

    def first_failure(self):
        """Depth-first search for the innermost failing report."""
        if self.passed:
            return None
        for s in self.sub_reports:
            if not s.passed:
                return s.first_failure()
        return self

    def to_dict(self):
        out: dict[str, Any] = {"name": self.name, "verdict": self.verdict}
        if self.checked:
            out["checked"] = self.checked
        if self.skipped:
            out["skipped"] = self.skipped
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        if self.sub_reports:
            out["sub_reports"] = [s.to_dict() for s in self.sub_reports]
        return out

    @classmethod
    def from_dict(cls, doc):
        return cls(
            doc["name"],
            doc["verdict"],
            sub_reports=[cls.from_dict(s) for s in doc.get("sub_reports", [])],
            counterexample=doc.get("counterexample"),
            checked=doc.get("checked", 0),
            skipped=doc.get("skipped", 0),
            details=doc.get("details", {}),
        )

    def lines(self, indent=0):
        pad = "  " * indent
        extra = f" ({self.checked} checked" + (f", {self.skipped} skipped)" if self.skipped else ")")
        out = [f"{pad}{self.verdict.upper():5s} {self.name}{extra if self.checked else ''}"]
        if self.counterexample:
            out.append(f"{pad}      counterexample: {self.counterexample}")
        for s in self.sub_reports:
            out.extend(s.lines(indent + 1))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def error_report(name, message):
    return Report(name, ERROR, details={"error": message})


def check_identity(
    name: str,
    tuples: Iterable[tuple],
    lhs: Callable,
    rhs: Callable,
    *,
    labels: Callable[[tuple], Any] | None = None,
    guard: Callable[[tuple], bool] | None = None,
) -> Report:
    """Compare ``lhs(*t)`` with ``rhs(*t)`` for every basis tuple ``t``.

    Stops at the first mismatch and records it.  Tuples rejected by ``guard``
    are counted as skipped rather than checked.
    """
    checked = skipped = 0
    for t in tuples:
        if guard is not None and not guard(t):
            skipped += 1
            continue
        left, right = lhs(*t), rhs(*t)
        checked += 1
        if left != right:
            cx = {"indices": [i + 1 for i in t], "lhs": str(left), "rhs": str(right)}
            if labels is not None:
                cx["basis"] = labels(t)
            return Report(name, FAIL, counterexample=cx, checked=checked, skipped=skipped)
    return Report(name, PASS, checked=checked, skipped=skipped)


def check_zero(name, value, **details):
    """Pass iff ``value`` (a tensor or element) is zero; the residual is kept."""
    if not value:
        return Report(name, PASS, checked=1, details=details)
    return Report(name, FAIL, counterexample={"residual": str(value)}, checked=1, details=details)


def check_true(name, ok, **details):
    return Report(name, PASS if ok else FAIL, checked=1, details=details)
