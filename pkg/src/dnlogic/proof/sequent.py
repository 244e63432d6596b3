"""Sequents, proof trees and their text trace."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from ..formula import Formula, QUANTIFIERS, free_vars, iter_nodes
from ..verdict import Logic


def _sorted(fs: Iterable[Formula]) -> list[Formula]:
    return sorted(fs, key=str)


@dataclass(frozen=True)
class Sequent:
    """``ante |- succ``; intuitionistic calculi keep exactly one succedent formula."""

    ante: frozenset
    succ: frozenset

    @classmethod
    def of(cls, ante: Iterable[Formula], succ: Iterable[Formula] | Formula) -> "Sequent":
        if isinstance(succ, Formula):
            succ = (succ,)
        return cls(frozenset(ante), frozenset(succ))

    @property
    def goal(self) -> Formula:
        (g,) = self.succ
        return g

    def names(self) -> set[str]:
        """Every individual name occurring free or bound."""
        out: set[str] = set()
        for f in self.ante | self.succ:
            out |= free_vars(f)
            out |= {g.var for g in iter_nodes(f) if isinstance(g, QUANTIFIERS)}
        return out

    def free_names(self) -> set[str]:
        out: set[str] = set()
        for f in self.ante | self.succ:
            out |= free_vars(f)
        return out

    def __str__(self) -> str:
        left = ", ".join(map(str, _sorted(self.ante)))
        right = ", ".join(map(str, _sorted(self.succ)))
        return f"{left} |- {right}".strip()


def fresh_name(seq: Sequent, prefix: str = "a") -> str:
    used = seq.names()
    i = 1
    while f"{prefix}{i}" in used:
        i += 1
    return f"{prefix}{i}"


@dataclass(frozen=True)
class ProofNode:
    rule: str
    conclusion: Sequent
    premises: tuple["ProofNode", ...] = ()
    principal: Formula | None = None
    term: str | None = None

    def walk(self, depth: int = 0) -> Iterator[tuple[int, "ProofNode"]]:
        yield depth, self
        for p in self.premises:
            yield from p.walk(depth + 1)

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)


@dataclass(frozen=True)
class Proof:
    root: ProofNode
    calculus: str
    logic: Logic
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def conclusion(self) -> Sequent:
        return self.root.conclusion

    def trace_lines(self) -> list[str]:
        out = []
        for depth, node in self.root.walk():
            label = node.rule if node.term is None else f"{node.rule}[{node.term}]"
            out.append(f"{'  ' * depth}{label}: {node.conclusion}")
        return out

    def trace(self) -> str:
        return "\n".join(self.trace_lines()) + "\n"

    def formulas(self) -> set[Formula]:
        """Every formula occurring in some sequent of the proof."""
        out: set[Formula] = set()
        for _, node in self.root.walk():
            out |= node.conclusion.ante | node.conclusion.succ
        return out
