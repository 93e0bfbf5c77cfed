"""Structured pass/fail reports shared by every checker in the package."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def to_jsonable(value: Any) -> Any:
    """Convert sieves, points and nested containers into plain JSON values.

    Sets are emitted in canonical order so that reports are byte-stable.
    """
    # local imports avoid a cycle: sieve/fincat import this module
    from .fincat import Point
    from .sieve import Sieve, sieve_key

    if isinstance(value, Sieve):
        return sorted(value.members)
    if isinstance(value, Point):
        return value.carrier
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (set, frozenset)):
        items = list(value)
        if all(isinstance(x, Sieve) for x in items):
            return [to_jsonable(s) for s in sorted(items, key=sieve_key)]
        return sorted((to_jsonable(x) for x in items), key=repr)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(x) for x in value]
    return value


@dataclass(frozen=True)
class Violation:
    law: str
    message: str
    obj: str | None = None
    witnesses: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"law": self.law, "message": self.message}
        if self.obj is not None:
            out["object"] = self.obj
        if self.witnesses:
            out["witnesses"] = to_jsonable(self.witnesses)
        return out


@dataclass
class Report:
    """Outcome of a check: ``ok`` is true iff no violation was recorded.

    ``notes`` carry informational findings that do not fail the check,
    e.g. where a convention was applied.
    """

    subject: str
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, law: str, message: str, obj: str | None = None, **witnesses: Any) -> None:
        self.violations.append(Violation(law, message, obj, witnesses))

    def extend(self, other: Report) -> None:
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.data:
            out["data"] = to_jsonable(self.data)
        return out

    def to_text(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"]
        for v in self.violations:
            where = f" [{v.obj}]" if v.obj is not None else ""
            lines.append(f"  - {v.law}{where}: {v.message}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)
