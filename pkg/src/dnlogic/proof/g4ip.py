"""Terminating proof search for propositional intuitionistic and minimal logic.

Contraction-free sequent calculus with set antecedents.  Every left rule
replaces its principal formula by strictly lighter ones, so backward search
terminates without loop checking.  Negation has its own rules, mirroring the
implication rules with absurdity as consequent.  In minimal logic absurdity is
an atom: there is no falsum_L and it may close an axiom.

Strategy: axioms first; then the first applicable invertible rule (no
backtracking over it, one-premise rules before branching ones); then the
non-invertible rules in order, leftmost antecedent formula first.  Sequents
falsified by a two-valued valuation are dropped before any rule is tried.
"""
from __future__ import annotations

import sys
from typing import Iterable

from ..errors import UnsupportedFragment
from ..formula import (
    And, Atom, Falsum, FALSUM, Formula, Iff, Imp, Neg, Or, atoms, is_propositional,
)
from ..verdict import Logic
from .sequent import Proof, ProofNode, Sequent


def _atomic(f: Formula) -> bool:
    return isinstance(f, (Atom, Falsum))


MAX_FILTER_ATOMS = 12


class _G4ip:
    def __init__(self, minimal: bool, atom_names: Iterable[str] | None = None):
        self.minimal = minimal
        self.memo: dict[tuple[frozenset, Formula], ProofNode | None] = {}
        self.masks: dict[Formula, int] = {}
        names = sorted(atom_names) if atom_names is not None else None
        if names is not None and minimal:
            names.append("#false")
        if names is None or len(names) > MAX_FILTER_ATOMS:
            self.rows = 0
            return
        # bit r of an atom's mask is its value in valuation r
        self.rows = 1 << len(names)
        self.full = (1 << self.rows) - 1
        for i, n in enumerate(names):
            mask = sum(1 << r for r in range(self.rows) if r >> i & 1)
            self.masks[FALSUM if n == "#false" else Atom(n)] = mask
        self.masks.setdefault(FALSUM, 0)

    def _mask(self, f: Formula) -> int:
        m = self.masks.get(f)
        if m is None:
            if isinstance(f, Neg):
                # ~A is A -> false; falsum may be true in minimal logic
                m = (self.full & ~self._mask(f.body)) | self._mask(FALSUM)
            elif isinstance(f, And):
                m = self._mask(f.left) & self._mask(f.right)
            elif isinstance(f, Or):
                m = self._mask(f.left) | self._mask(f.right)
            elif isinstance(f, Imp):
                m = (self.full & ~self._mask(f.left)) | self._mask(f.right)
            else:  # Iff
                m = self.full & ~(self._mask(f.left) ^ self._mask(f.right))
            self.masks[f] = m
        return m

    def _refuted(self, ante: frozenset, goal: Formula) -> bool:
        """Some two-valued valuation makes every antecedent true and the goal false."""
        if not self.rows:
            return False
        m = self.full
        for p in ante:
            m &= self._mask(p)
        return bool(m & ~self._mask(goal))

    def prove(self, ante: frozenset, goal: Formula) -> ProofNode | None:
        key = (ante, goal)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = None
        node = self._search(ante, goal)
        self.memo[key] = node
        return node

    def _node(self, rule, ante, goal, principal, subgoals) -> ProofNode | None:
        if any(self._refuted(a, g) for a, g in subgoals):
            return None
        premises = []
        for a, g in subgoals:
            p = self.prove(a, g)
            if p is None:
                return None
            premises.append(p)
        return ProofNode(rule, Sequent.of(ante, goal), tuple(premises), principal)

    def _search(self, ante: frozenset, goal: Formula) -> ProofNode | None:
        concl = Sequent.of(ante, goal)
        if goal in ante and (isinstance(goal, Atom) or (isinstance(goal, Falsum) and self.minimal)):
            return ProofNode("axiom", concl, (), goal)
        if FALSUM in ante and not self.minimal:
            return ProofNode("falsum_L", concl, (), FALSUM)
        if self._refuted(ante, goal):
            return None

        ordered = sorted(ante, key=str)
        step = (
            self._linear_left(ante, goal, ordered)
            or self._linear_right(ante, goal)
            or self._branching(ante, goal, ordered)
        )
        if step is not None:
            return self._node(*step)

        for step in self._noninvertible(ante, goal, ordered):
            node = self._node(*step)
            if node is not None:
                return node
        return None

    # Invertible rules, one-premise rules before branching ones.

    def _linear_left(self, ante, goal, ordered):
        for p in ordered:
            rest = ante - {p}
            if isinstance(p, And):
                return "and_L", ante, goal, p, [(rest | {p.left, p.right}, goal)]
            if isinstance(p, Iff):
                both = {Imp(p.left, p.right), Imp(p.right, p.left)}
                return "iff_L", ante, goal, p, [(rest | both, goal)]
            if isinstance(p, Imp):
                a, d = p.left, p.right
                if _atomic(a) and a in ante:
                    return "imp_atom_L", ante, goal, p, [(rest | {d}, goal)]
                if isinstance(a, And):
                    return "and_imp_L", ante, goal, p, [(rest | {Imp(a.left, Imp(a.right, d))}, goal)]
                if isinstance(a, Or):
                    return "or_imp_L", ante, goal, p, [(rest | {Imp(a.left, d), Imp(a.right, d)}, goal)]
                if isinstance(a, Iff):
                    conj = And(Imp(a.left, a.right), Imp(a.right, a.left))
                    return "iff_imp_L", ante, goal, p, [(rest | {Imp(conj, d)}, goal)]
            if isinstance(p, Neg):
                b = p.body
                if _atomic(b) and b in ante:
                    return "neg_atom_L", ante, goal, p, [(rest | {FALSUM}, goal)]
                if isinstance(b, And):
                    return "neg_and_L", ante, goal, p, [(rest | {Imp(b.left, Neg(b.right))}, goal)]
                if isinstance(b, Or):
                    return "neg_or_L", ante, goal, p, [(rest | {Neg(b.left), Neg(b.right)}, goal)]
                if isinstance(b, Iff):
                    conj = And(Imp(b.left, b.right), Imp(b.right, b.left))
                    return "neg_iff_L", ante, goal, p, [(rest | {Neg(conj)}, goal)]
        return None

    def _linear_right(self, ante, goal):
        if isinstance(goal, Imp):
            return "imp_R", ante, goal, goal, [(ante | {goal.left}, goal.right)]
        if isinstance(goal, Neg):
            return "neg_R", ante, goal, goal, [(ante | {goal.body}, FALSUM)]
        return None

    def _branching(self, ante, goal, ordered):
        for p in ordered:
            if isinstance(p, Or):
                rest = ante - {p}
                return "or_L", ante, goal, p, [(rest | {p.left}, goal), (rest | {p.right}, goal)]
        if isinstance(goal, And):
            return "and_R", ante, goal, goal, [(ante, goal.left), (ante, goal.right)]
        if isinstance(goal, Iff):
            return "iff_R", ante, goal, goal, [
                (ante, Imp(goal.left, goal.right)), (ante, Imp(goal.right, goal.left))
            ]
        return None

    def _noninvertible(self, ante, goal, ordered) -> Iterable[tuple]:
        if isinstance(goal, Or):
            yield "or_R1", ante, goal, goal, [(ante, goal.left)]
            yield "or_R2", ante, goal, goal, [(ante, goal.right)]
        for p in ordered:
            rest = ante - {p}
            if isinstance(p, Imp) and isinstance(p.left, Imp):
                a, b, d = p.left.left, p.left.right, p.right
                yield "imp_imp_L", ante, goal, p, [(rest | {Imp(b, d)}, p.left), (rest | {d}, goal)]
            elif isinstance(p, Imp) and isinstance(p.left, Neg):
                yield "neg_imp_L", ante, goal, p, [
                    (rest | {Imp(FALSUM, p.right)}, p.left), (rest | {p.right}, goal)
                ]
            elif isinstance(p, Neg) and isinstance(p.body, Imp):
                yield "neg_impl_L", ante, goal, p, [
                    (rest | {Neg(p.body.right)}, p.body), (rest | {FALSUM}, goal)
                ]
            elif isinstance(p, Neg) and isinstance(p.body, Neg):
                yield "neg_neg_L", ante, goal, p, [(rest, p.body), (rest | {FALSUM}, goal)]


def prove_il_prop(
    f: Formula,
    logic: Logic = Logic.IL,
    lemmas: Iterable[Formula] = (),
    assumptions: Iterable[Formula] = (),
    prune: bool = True,
) -> Proof | None:
    """Proof of ``assumptions |- f`` in propositional IL (or minimal logic), or None.

    Each lemma is proved first and then introduced by a cut at the root, so
    a named theorem can be made to appear in the proof.  Returns None if the
    sequent or any lemma is unprovable.

    With ``prune`` the search drops any sequent refuted by a two-valued
    valuation (falsum counts as an atom in minimal logic).  Such a sequent
    has no proof, so the result is the same; only the time differs.
    """
    if logic not in (Logic.IL, Logic.MINIMAL):
        raise UnsupportedFragment(f"prove_il_prop handles IL and Minimal, not {logic.value}")
    lemmas = list(lemmas)
    assumptions = frozenset(assumptions)
    for g in [f, *lemmas, *assumptions]:
        if not is_propositional(g):
            raise UnsupportedFragment("prove_il_prop needs propositional formulas")
    names = None
    if prune:
        names = set()
        for g in [f, *lemmas, *assumptions]:
            names.update(atoms(g))
    engine = _G4ip(logic is Logic.MINIMAL, names)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        return _with_cuts(engine, assumptions, f, lemmas, logic)
    finally:
        sys.setrecursionlimit(limit)


def _with_cuts(engine, ante, goal, lemmas, logic) -> Proof | None:
    if not lemmas:
        node = engine.prove(ante, goal)
        return None if node is None else Proof(node, "G4ip", logic)
    lemma, rest = lemmas[0], lemmas[1:]
    left = engine.prove(ante, lemma)
    if left is None:
        return None
    right = _with_cuts(engine, ante | {lemma}, goal, rest, logic)
    if right is None:
        return None
    node = ProofNode("cut", Sequent.of(ante, goal), (left, right.root), lemma)
    return Proof(node, "G4ip", logic)
