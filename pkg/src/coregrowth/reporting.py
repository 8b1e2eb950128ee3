"""Structured PASS/FAIL records shared by the verifier suites.

Theorem-grade checks must pass (a FAIL is a bug and flips exit codes);
conjecture-grade checks are findings and never affect exit codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

THEOREM = "theorem"
CONJECTURE = "conjecture"
PROPERTY = "property"


@dataclass
class Report:
    name: str
    kind: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)
    witness: Any = None

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "FAIL" if self.witness is None else "COUNTEREXAMPLE"

    def to_dict(self) -> dict[str, Any]:
        out = {
            "name": self.name,
            "kind": self.kind,
            "status": self.status,
            "details": _jsonable(self.details),
        }
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out

    def line(self) -> str:
        return f"[{self.status}] ({self.kind}) {self.name}"


def _jsonable(obj):
    from fractions import Fraction

    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(_jsonable(k)): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [_jsonable(x) for x in obj]
    return obj


def hard_failures(reports) -> list[Report]:
    return [r for r in reports if r.kind == THEOREM and not r.passed]
