"""Exception types and the falsy search verdicts shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class PreconditionError(DomainError):
    """A checked hypothesis of a construction does not hold on the input."""


class CapacityError(ValueError):
    """An exact method was asked to run beyond its size cap."""


@dataclass(frozen=True)
class NotFound:
    """A search ended without a result.

    ``proved`` is True only when the search space was exhausted, so the
    object exists nowhere; constructive searches leave it False.
    """

    reason: str
    proved: bool = False
    info: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> dict[str, Any]:
        return {"verdict": "not_found", "reason": self.reason, "proved": self.proved, **self.info}


@dataclass(frozen=True)
class Unknown:
    """A bounded search ran out of budget before reaching a verdict."""

    reason: str
    nodes: int = 0

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> dict[str, Any]:
        return {"verdict": "unknown", "reason": self.reason, "nodes": self.nodes}
