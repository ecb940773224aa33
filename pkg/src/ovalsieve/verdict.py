"""Verdict values shared by every congruence checker."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    PROHIBITED = "Prohibited"
    TYPE_I_ONLY = "TypeIOnly"
    NO_CONSTRAINT = "NoConstraint"
    HYPOTHESIS_NOT_SATISFIED = "HypothesisNotSatisfied"

    def __str__(self) -> str:
        return self.value


# combine() keeps the strongest conclusion
_RANK = {
    Status.PROHIBITED: 3,
    Status.TYPE_I_ONLY: 2,
    Status.NO_CONSTRAINT: 1,
    Status.HYPOTHESIS_NOT_SATISFIED: 0,
}


@dataclass(frozen=True)
class Reason:
    clause: str
    status: Status
    residues: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"clause": self.clause, "status": self.status.value, "residues": dict(self.residues)}


@dataclass(frozen=True)
class Verdict:
    status: Status
    reasons: tuple[Reason, ...] = ()

    @property
    def prohibited(self) -> bool:
        return self.status is Status.PROHIBITED

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.reasons]


def combine(reasons) -> Verdict:
    reasons = tuple(reasons)
    if not reasons:
        return Verdict(Status.NO_CONSTRAINT, ())
    status = max((r.status for r in reasons), key=_RANK.__getitem__)
    return Verdict(status, reasons)


def congruent(a: int, b: int, m: int) -> bool:
    return (a - b) % m == 0
