"""Depth-bounded sequent search for monadic first-order formulas.

G3i (single succedent) serves IL and minimal logic; G3c (multi-succedent)
serves classical logic.  Forall-right and exists-left introduce the smallest
unused parameter ``a1, a2, ...``.  Forall-left and exists-right keep their
principal formula and may fire at most ``max_instances`` times per formula.
Depth counts proof height, a single axiom having height 1.  Besides atomic
axioms, a leaf may close by identity when its goal already occurs on the left.

A proof found here is sound.  Failing to find one says nothing beyond the
depth and instance bounds.
"""
from __future__ import annotations

import sys
from typing import Iterator

from ..errors import UnsupportedFragment
from ..formula import (
    And, Atom, Exists, Falsum, FALSUM, Forall, Formula, Iff, Imp, Neg, Or, PredApp,
    has_modalities, substitute,
)
from ..verdict import DEFAULT_DEPTH, Logic
from .sequent import Proof, ProofNode, Sequent, fresh_name


def _count(used: frozenset, p: Formula) -> int:
    return sum(1 for q, _ in used if q == p)


def _terms(s: Sequent) -> list[str]:
    names = sorted(s.free_names())
    return names or [fresh_name(s)]


class _Search:
    def __init__(self, logic: Logic, max_instances: int):
        self.logic = logic
        self.minimal = logic is Logic.MINIMAL
        self.classical = logic is Logic.CL
        self.max_instances = max_instances
        self.failed: dict[tuple, int] = {}
        self.proved: dict[tuple, ProofNode] = {}

    # ``used`` records the (quantified formula, term) instantiations made on
    # the current branch, so an instance is never re-added after being
    # decomposed.
    def prove(self, s: Sequent, used: frozenset, depth: int | None) -> ProofNode | None:
        key = (s, used)
        if depth is not None:
            if depth <= 0 or self.failed.get(key, 0) >= depth:
                return None
        hit = self.proved.get(key)
        if hit is not None and (depth is None or hit.height() <= depth):
            return hit
        node = self._search(s, used, None if depth is None else depth - 1)
        if node is None:
            if depth is not None:
                self.failed[key] = max(self.failed.get(key, 0), depth)
        else:
            self.proved[key] = node
        return node

    def _build(self, step, used, depth) -> ProofNode | None:
        rule, s, principal, premises = step[:4]
        term = step[4] if len(step) > 4 else None
        if rule in ("forall_L", "exists_R"):
            used = used | {(principal, term)}
        nodes = []
        for p in premises:
            n = self.prove(p, used, depth)
            if n is None:
                return None
            nodes.append(n)
        return ProofNode(rule, s, tuple(nodes), principal, term)

    def _search(self, s: Sequent, used: frozenset, depth: int | None) -> ProofNode | None:
        closing = self._closing(s)
        if closing is not None:
            return closing
        step = self._invertible(s, used)
        if step is not None:
            return self._build(step, used, depth)
        for step in self._choices(s, used):
            node = self._build(step, used, depth)
            if node is not None:
                return node
        return None

    def _closing(self, s: Sequent) -> ProofNode | None:
        for f in sorted(s.ante & s.succ, key=str):
            if isinstance(f, (Atom, PredApp)) or (isinstance(f, Falsum) and self.minimal):
                return ProofNode("axiom", s, (), f)
        if FALSUM in s.ante and not self.minimal:
            return ProofNode("falsum_L", s, (), FALSUM)
        for f in sorted(s.ante & s.succ, key=str):
            return ProofNode("id", s, (), f)
        return None

    # premises are returned as (rule, conclusion, principal, [sequents], term?)
    def _invertible(self, s: Sequent, used: frozenset):
        ante, succ = s.ante, s.succ
        for p in sorted(ante, key=str):
            rest = ante - {p}
            if isinstance(p, And):
                return "and_L", s, p, [Sequent(rest | {p.left, p.right}, succ)]
            if isinstance(p, Or):
                return "or_L", s, p, [Sequent(rest | {p.left}, succ), Sequent(rest | {p.right}, succ)]
            if isinstance(p, Iff):
                return "iff_L", s, p, [Sequent(rest | {Imp(p.left, p.right), Imp(p.right, p.left)}, succ)]
            if isinstance(p, Exists):
                a = fresh_name(s)
                return "exists_L", s, p, [Sequent(rest | {substitute(p.body, p.var, a)}, succ)], a
            if self.classical and isinstance(p, Imp):
                return "imp_L", s, p, [Sequent(rest, succ | {p.left}), Sequent(rest | {p.right}, succ)]
            if self.classical and isinstance(p, Neg):
                return "neg_L", s, p, [Sequent(rest, succ | {p.body})]
        for c in sorted(succ, key=str):
            rest = succ - {c}
            if isinstance(c, Imp):
                return "imp_R", s, c, [Sequent(ante | {c.left}, rest | {c.right})]
            if isinstance(c, Neg):
                new = rest if self.classical else frozenset({FALSUM})
                return "neg_R", s, c, [Sequent(ante | {c.body}, new)]
            if isinstance(c, And):
                return "and_R", s, c, [Sequent(ante, rest | {c.left}), Sequent(ante, rest | {c.right})]
            if isinstance(c, Iff):
                return "iff_R", s, c, [
                    Sequent(ante, rest | {Imp(c.left, c.right)}),
                    Sequent(ante, rest | {Imp(c.right, c.left)}),
                ]
            if isinstance(c, Forall):
                a = fresh_name(s)
                return "forall_R", s, c, [Sequent(ante, rest | {substitute(c.body, c.var, a)})], a
            if self.classical and isinstance(c, Or):
                return "or_R", s, c, [Sequent(ante, rest | {c.left, c.right})]
        if self.classical:
            return self._classical_instance(s, used)
        return None

    def _classical_instance(self, s: Sequent, used: frozenset):
        # instantiation is invertible in G3c: take the first one that adds something
        for p in sorted(s.ante, key=str):
            if isinstance(p, Forall) and _count(used, p) < self.max_instances:
                for t in _terms(s):
                    inst = substitute(p.body, p.var, t)
                    if (p, t) not in used and inst not in s.ante:
                        return "forall_L", s, p, [Sequent(s.ante | {inst}, s.succ)], t
        for c in sorted(s.succ, key=str):
            if isinstance(c, Exists) and _count(used, c) < self.max_instances:
                for t in _terms(s):
                    inst = substitute(c.body, c.var, t)
                    if (c, t) not in used and inst not in s.succ:
                        return "exists_R", s, c, [Sequent(s.ante, s.succ | {inst})], t
        return None

    def _choices(self, s: Sequent, used: frozenset) -> Iterator[tuple]:
        if self.classical:
            return
        ante = s.ante
        goal = s.goal
        if isinstance(goal, Or):
            yield "or_R1", s, goal, [Sequent(ante, frozenset({goal.left}))]
            yield "or_R2", s, goal, [Sequent(ante, frozenset({goal.right}))]
        if isinstance(goal, Exists):
            for t in _terms(s):
                yield "exists_R", s, goal, [Sequent(ante, frozenset({substitute(goal.body, goal.var, t)}))], t
        for p in sorted(ante, key=str):
            rest = ante - {p}
            if isinstance(p, Imp) and p.right not in ante:
                yield "imp_L", s, p, [
                    Sequent(ante, frozenset({p.left})), Sequent(rest | {p.right}, s.succ)
                ]
            elif isinstance(p, Neg) and FALSUM not in ante:
                yield "neg_L", s, p, [
                    Sequent(ante, frozenset({p.body})), Sequent(rest | {FALSUM}, s.succ)
                ]
            elif isinstance(p, Forall) and _count(used, p) < self.max_instances:
                for t in _terms(s):
                    inst = substitute(p.body, p.var, t)
                    if (p, t) not in used and inst not in ante:
                        yield "forall_L", s, p, [Sequent(ante | {inst}, s.succ)], t


CALCULUS = {Logic.IL: "G3i", Logic.MINIMAL: "G3i", Logic.CL: "G3c"}


def prove_sequent_fo(
    f: Formula,
    depth: int | None = DEFAULT_DEPTH,
    logic: Logic = Logic.IL,
    max_instances: int = 3,
    assumptions=(),
) -> Proof | None:
    """Bounded backward search for ``assumptions |- f``.

    ``depth=None`` removes the height bound, which terminates only for
    classical propositional input.
    """
    if logic not in CALCULUS:
        raise UnsupportedFragment(f"no first-order sequent calculus for {logic.value}")
    if has_modalities(f):
        raise UnsupportedFragment("modal operators are not first-order")
    if depth is not None and depth < 1:
        raise ValueError("depth must be positive")
    engine = _Search(logic, max_instances)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        node = engine.prove(Sequent.of(assumptions, f), frozenset(), depth)
    finally:
        sys.setrecursionlimit(limit)
    return None if node is None else Proof(node, CALCULUS[logic], logic)
