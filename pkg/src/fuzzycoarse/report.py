"""Certificates as ordered, line-serializable pass/fail records.

A ``CertReport`` is a list of checks, each one line when rendered:

    PASS disjoint family=blocks r=1/2 t=1 sup=4/9 pair=4~9

Lines carry the exact rational values that witness each verdict, in a
fixed key order, so that two runs over the same input are byte-identical
and reports diff cleanly under version control.  ``NOTE`` lines carry
caveats (sampled-only checks, interpretation scope) and never affect the
overall verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import format_rational

PASS = "PASS"
FAIL = "FAIL"
NOTE = "NOTE"


def fmt_value(value) -> str:
    """Canonical text for report values."""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, tuple):
        return "(" + ",".join(fmt_value(v) for v in value) + ")"
    return str(value)


def fmt_pair(pair) -> str:
    """Canonical text for a witnessing pair of points."""
    if pair is None:
        return "-"
    x, y = pair
    return f"{fmt_value(x)}~{fmt_value(y)}"


@dataclass(frozen=True)
class Check:
    verdict: str
    predicate: str
    details: tuple

    def line(self) -> str:
        parts = [self.verdict, self.predicate]
        parts.extend(f"{k}={v}" for k, v in self.details)
        return " ".join(parts)


class CertReport:
    """Ordered collection of checks under one title."""

    def __init__(self, title: str, **context):
        self.title = title
        self.context = tuple((k, fmt_value(v)) for k, v in context.items())
        self.checks: list[Check] = []

    def add(self, verdict: str, predicate: str, **details) -> None:
        self.checks.append(
            Check(verdict, predicate, tuple((k, fmt_value(v)) for k, v in details.items()))
        )

    def add_pass(self, predicate: str, **details) -> None:
        self.add(PASS, predicate, **details)

    def add_fail(self, predicate: str, **details) -> None:
        self.add(FAIL, predicate, **details)

    def add_note(self, predicate: str, **details) -> None:
        self.add(NOTE, predicate, **details)

    def add_verdict(self, ok: bool, predicate: str, **details) -> None:
        self.add(PASS if ok else FAIL, predicate, **details)

    def absorb(self, other: "CertReport") -> None:
        """Append another report's checks (context dropped)."""
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.verdict != FAIL for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == FAIL]

    def lines(self) -> list[str]:
        head = ["REPORT", self.title]
        head.extend(f"{k}={v}" for k, v in self.context)
        return [" ".join(head)] + [c.line() for c in self.checks]

    def __str__(self) -> str:
        return "\n".join(self.lines())
