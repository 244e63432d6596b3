"""Propositional S4 sequent search (G3c plus modal rules, loop-checked).

box_L and dia_R keep their principal formula and fire once per formula and
world: the search state records which of them were unpacked since the last
modal jump, so a decomposed instance is never re-added.  box_R and dia_L
discard everything but boxed antecedents and diamond succedents; they are the
only choice points.  A state repeated on the current branch fails, which
together with the subformula property makes the search terminate.
"""
from __future__ import annotations

import sys

from ..errors import UnsupportedFragment
from ..formula import (
    And, Atom, Box, Dia, Falsum, FALSUM, Formula, Iff, Imp, Neg, Or, has_quantifiers, predicates,
)
from ..verdict import Logic
from .sequent import Proof, ProofNode, Sequent


class _S4:
    def __init__(self) -> None:
        self.proved: dict[tuple, ProofNode] = {}
        self.refuted: set[tuple] = set()

    def prove(self, s: Sequent, done: frozenset, history: frozenset) -> ProofNode | None:
        key = (s, done)
        hit = self.proved.get(key)
        if hit is not None:
            return hit
        if key in history or key in self.refuted:
            return None
        node, loop_free = self._search(s, done, history | {key})
        if node is not None:
            self.proved[key] = node
        elif loop_free:
            self.refuted.add(key)
        return node

    def _all(self, rule, s, p, premises, done, history):
        if rule in ("box_L", "dia_R"):
            done = done | {p}
        elif rule in ("box_R", "dia_L"):
            done = frozenset()
        nodes = []
        for q in premises:
            n = self.prove(q, done, history)
            if n is None:
                return None
            nodes.append(n)
        return ProofNode(rule, s, tuple(nodes), p)

    def _search(self, s: Sequent, done: frozenset, history: frozenset) -> tuple[ProofNode | None, bool]:
        ante, succ = s.ante, s.succ
        for f in sorted(ante & succ, key=str):
            if isinstance(f, Atom):
                return ProofNode("axiom", s, (), f), True
        if FALSUM in ante:
            return ProofNode("falsum_L", s, (), FALSUM), True
        step = self._invertible(s, done)
        if step is not None:
            node = self._all(*step, done, history)
            after = done | {step[2]} if step[0] in ("box_L", "dia_R") else done
            return node, node is None and self._clean(step[3], after)
        ordered_r = [c for c in sorted(succ, key=str) if isinstance(c, Box)]
        ordered_l = [p for p in sorted(ante, key=str) if isinstance(p, Dia)]
        boxes = frozenset(f for f in ante if isinstance(f, Box))
        dias = frozenset(f for f in succ if isinstance(f, Dia))
        clean = True
        for c in ordered_r:
            q = Sequent(boxes, dias | {c.body})
            node = self._all("box_R", s, c, [q], done, history)
            if node is not None:
                return node, True
            clean = clean and (q, frozenset()) in self.refuted
        for p in ordered_l:
            q = Sequent(boxes | {p.body}, dias)
            node = self._all("dia_L", s, p, [q], done, history)
            if node is not None:
                return node, True
            clean = clean and (q, frozenset()) in self.refuted
        return None, clean

    def _clean(self, premises, done) -> bool:
        # a failure is history-independent when some premise failed history-independently
        return any((q, done) in self.refuted for q in premises)

    def _invertible(self, s: Sequent, done: frozenset):
        ante, succ = s.ante, s.succ
        for p in sorted(ante, key=str):
            rest = ante - {p}
            if isinstance(p, And):
                return "and_L", s, p, [Sequent(rest | {p.left, p.right}, succ)]
            if isinstance(p, Or):
                return "or_L", s, p, [Sequent(rest | {p.left}, succ), Sequent(rest | {p.right}, succ)]
            if isinstance(p, Imp):
                return "imp_L", s, p, [Sequent(rest, succ | {p.left}), Sequent(rest | {p.right}, succ)]
            if isinstance(p, Neg):
                return "neg_L", s, p, [Sequent(rest, succ | {p.body})]
            if isinstance(p, Iff):
                return "iff_L", s, p, [Sequent(rest | {Imp(p.left, p.right), Imp(p.right, p.left)}, succ)]
        for c in sorted(succ, key=str):
            rest = succ - {c}
            if isinstance(c, And):
                return "and_R", s, c, [Sequent(ante, rest | {c.left}), Sequent(ante, rest | {c.right})]
            if isinstance(c, Or):
                return "or_R", s, c, [Sequent(ante, rest | {c.left, c.right})]
            if isinstance(c, Imp):
                return "imp_R", s, c, [Sequent(ante | {c.left}, rest | {c.right})]
            if isinstance(c, Neg):
                return "neg_R", s, c, [Sequent(ante | {c.body}, rest)]
            if isinstance(c, Iff):
                return "iff_R", s, c, [
                    Sequent(ante, rest | {Imp(c.left, c.right)}),
                    Sequent(ante, rest | {Imp(c.right, c.left)}),
                ]
        for p in sorted(ante, key=str):
            if isinstance(p, Box) and p not in done:
                return "box_L", s, p, [Sequent(ante | {p.body}, succ)]
        for c in sorted(succ, key=str):
            if isinstance(c, Dia) and c not in done:
                return "dia_R", s, c, [Sequent(ante, succ | {c.body})]
        return None


def prove_s4(f: Formula) -> Proof | None:
    if has_quantifiers(f) or predicates(f):
        raise UnsupportedFragment("S4 proof search is propositional")
    engine = _S4()
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        node = engine.prove(Sequent.of((), f), frozenset(), frozenset())
    finally:
        sys.setrecursionlimit(limit)
    return None if node is None else Proof(node, "G3s4", Logic.S4)
