"""Classical validity by exhaustive valuation.

Propositional formulas are checked with a bit-parallel truth table: every
atom becomes an integer whose i-th bit is its value in the i-th valuation, so
one pass over the formula evaluates all 2**n rows at once.  Rows are ordered
lexicographically over the alphabetically sorted atoms with false < true,
which makes the reported counterexample the lexicographically first one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .errors import UnsupportedFragment
from .formula import (
    And, Atom, Box, Dia, Exists, Falsum, Forall, Formula, Iff, Imp, Neg, Or, PredApp,
    atoms, free_vars, has_modalities, has_quantifiers, predicates,
)
from .verdict import Logic, Outcome, Verdict

MAX_ATOMS = 20


@dataclass(frozen=True)
class Valuation:
    """A classical interpretation; ``domain`` is empty for propositional ones."""

    atoms: tuple[tuple[str, bool], ...]
    domain: tuple[str, ...] = ()
    predicates: tuple[tuple[str, str, bool], ...] = ()
    assignment: tuple[tuple[str, str], ...] = ()

    def atom_map(self) -> dict[str, bool]:
        return dict(self.atoms)

    def describe(self) -> str:
        parts = [f"{a}={'true' if v else 'false'}" for a, v in self.atoms]
        if self.domain:
            parts.append("domain={" + ", ".join(self.domain) + "}")
            parts += [f"{p}({d})={'true' if v else 'false'}" for p, d, v in self.predicates]
            parts += [f"{x}:={d}" for x, d in self.assignment]
        return ", ".join(parts)

    def to_dict(self) -> dict:
        out: dict = {"atoms": {a: v for a, v in self.atoms}}
        if self.domain:
            out["domain"] = list(self.domain)
            out["predicates"] = [[p, d, v] for p, d, v in self.predicates]
            out["assignment"] = {x: d for x, d in self.assignment}
        return out

    def satisfies(self, f: Formula) -> bool:
        preds = {(p, d): v for p, d, v in self.predicates}
        return cl_eval(f, self.atom_map(), self.domain, preds, dict(self.assignment))


def cl_eval(
    f: Formula,
    atom_values: Mapping[str, bool],
    domain: tuple[str, ...] = (),
    preds: Mapping[tuple[str, str], bool] | None = None,
    env: Mapping[str, str] | None = None,
) -> bool:
    """Reference classical evaluator (recursive, one valuation at a time)."""
    preds = preds or {}
    env = env or {}
    if isinstance(f, Atom):
        return atom_values[f.name]
    if isinstance(f, PredApp):
        return preds[(f.pred, env.get(f.var, f.var))]
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Neg):
        return not cl_eval(f.body, atom_values, domain, preds, env)
    if isinstance(f, (And, Or, Imp, Iff)):
        a = cl_eval(f.left, atom_values, domain, preds, env)
        b = cl_eval(f.right, atom_values, domain, preds, env)
        if isinstance(f, And):
            return a and b
        if isinstance(f, Or):
            return a or b
        if isinstance(f, Imp):
            return (not a) or b
        return a == b
    if isinstance(f, (Forall, Exists)):
        results = (
            cl_eval(f.body, atom_values, domain, preds, {**env, f.var: d}) for d in domain
        )
        return all(results) if isinstance(f, Forall) else any(results)
    raise UnsupportedFragment(f"classical evaluation does not handle {type(f).__name__}")


def _atom_mask(index: int, n: int) -> int:
    # bit i of the result is the value of atom `index` in row i
    half = 1 << (n - 1 - index)
    unit = ((1 << half) - 1) << half
    length = 2 * half
    total = 1 << n
    while length < total:
        unit |= unit << length
        length *= 2
    return unit


def _truth_mask(f: Formula, masks: dict[str, int], full: int) -> int:
    if isinstance(f, Atom):
        return masks[f.name]
    if isinstance(f, Falsum):
        return 0
    if isinstance(f, Neg):
        return full & ~_truth_mask(f.body, masks, full)
    a = _truth_mask(f.left, masks, full)
    b = _truth_mask(f.right, masks, full)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    if isinstance(f, Imp):
        return (full & ~a) | b
    return full & ~(a ^ b)


def _require_propositional(f: Formula) -> None:
    if has_modalities(f) or has_quantifiers(f) or predicates(f):
        raise UnsupportedFragment("cl_decide_prop needs a propositional formula")


def cl_decide_prop(f: Formula) -> Verdict:
    _require_propositional(f)
    names = atoms(f)
    n = len(names)
    if n > MAX_ATOMS:
        raise UnsupportedFragment(f"{n} atoms exceeds the truth-table limit of {MAX_ATOMS}")
    full = (1 << (1 << n)) - 1
    masks = {a: _atom_mask(i, n) for i, a in enumerate(names)}
    truth = _truth_mask(f, masks, full)
    if truth == full:
        return Verdict(Outcome.VALID, Logic.CL, f, notes=[f"truth table: {1 << n} rows"])
    missing = full & ~truth
    row = (missing & -missing).bit_length() - 1
    values = tuple((a, bool((row >> (n - 1 - i)) & 1)) for i, a in enumerate(names))
    return Verdict(Outcome.INVALID, Logic.CL, f, countermodel=Valuation(values))


def cl_decide_monadic(f: Formula, max_domain: int) -> Verdict:
    """Check ``f`` in every interpretation over domains of size 1..max_domain.

    Domains are tried smallest first; within a domain, atoms run false-first
    and predicate extensions true-first.  Free individual variables are read
    universally.  A Valid verdict is exact
    when ``max_domain >= 2**k`` for the k predicates of ``f``: without equality
    any countermodel collapses onto its at most 2**k predicate types.
    """
    if has_modalities(f):
        raise UnsupportedFragment("cl_decide_monadic does not handle modalities")
    if max_domain < 1:
        raise ValueError("max_domain must be positive")
    names = atoms(f)
    preds = predicates(f)
    free = sorted(free_vars(f))
    for size in range(1, max_domain + 1):
        domain = tuple(f"d{i}" for i in range(size))
        slots = [(p, d) for p in preds for d in domain]
        for atom_bits in itertools.product((False, True), repeat=len(names)):
            atom_values = dict(zip(names, atom_bits))
            # extensions true-first, so earlier individuals satisfy the predicate
            for pred_bits in itertools.product((True, False), repeat=len(slots)):
                ext = dict(zip(slots, pred_bits))
                for chosen in itertools.product(domain, repeat=len(free)):
                    env = dict(zip(free, chosen))
                    if not cl_eval(f, atom_values, domain, ext, env):
                        witness = Valuation(
                            tuple(atom_values.items()),
                            domain,
                            tuple((p, d, ext[(p, d)]) for p, d in slots),
                            tuple(env.items()),
                        )
                        return Verdict(Outcome.INVALID, Logic.CL, f, countermodel=witness)
    exact = max_domain >= 2 ** len(preds)
    notes = [] if exact else [f"valid within bound: domains up to {max_domain}"]
    return Verdict(Outcome.VALID, Logic.CL, f, exact=exact, notes=notes)
