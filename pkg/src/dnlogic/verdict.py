"""Logics, search bounds and the three-valued verdict."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .formula import Formula


class Logic(enum.Enum):
    CL = "CL"
    IL = "IL"
    MINIMAL = "Minimal"
    S4 = "S4"

    @classmethod
    def parse(cls, text: str) -> "Logic":
        for member in cls:
            if member.value.lower() == text.lower():
                return member
        raise ValueError(f"unknown logic {text!r}")


class Outcome(enum.Enum):
    VALID = "Valid"
    INVALID = "Invalid"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SearchBounds:
    max_worlds: int = 4
    max_domain: int = 3
    note: str = (
        "countermodels are enumerated up to max_worlds worlds; first-order "
        "domains hold at most max_domain individuals"
    )

    def __post_init__(self) -> None:
        if self.max_worlds < 1 or self.max_domain < 1:
            raise ValueError("search bounds must be positive")


DEFAULT_BOUNDS = SearchBounds()
DEFAULT_DEPTH = 12


@dataclass
class Verdict:
    outcome: Outcome
    logic: Logic
    formula: Formula
    proof: Any = None
    countermodel: Any = None
    bounds: SearchBounds | None = None
    depth: int | None = None
    exact: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.outcome is Outcome.VALID

    @property
    def invalid(self) -> bool:
        return self.outcome is Outcome.INVALID

    @property
    def unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "outcome": self.outcome.value,
            "logic": self.logic.value,
            "formula": str(self.formula),
            "exact": self.exact,
        }
        if self.proof is not None:
            out["proof"] = self.proof.trace_lines()
        if self.countermodel is not None:
            out["countermodel"] = self.countermodel.to_dict()
        if self.outcome is Outcome.UNKNOWN:
            if self.bounds is not None:
                out["bounds"] = {
                    "max_worlds": self.bounds.max_worlds,
                    "max_domain": self.bounds.max_domain,
                }
            out["depth"] = self.depth
        if self.notes:
            out["notes"] = list(self.notes)
        return out
