"""Verdicts from proof search plus countermodel search, and the law battery."""
from __future__ import annotations

from dataclasses import dataclass

from ..classical import cl_decide_monadic, cl_decide_prop
from ..errors import UnsupportedFragment
from ..formula import Formula, has_modalities, has_quantifiers, predicates
from ..kripke.search import filtration_countermodel, search_countermodel
from ..syntax import parse_formula
from ..verdict import DEFAULT_BOUNDS, DEFAULT_DEPTH, Logic, Outcome, SearchBounds, Verdict
from .g3 import prove_sequent_fo
from .g4ip import prove_il_prop
from .s4 import prove_s4


def _first_order(f: Formula) -> bool:
    return has_quantifiers(f) or bool(predicates(f))


def check_fragment(f: Formula, logic: Logic) -> None:
    if has_modalities(f) and logic is not Logic.S4:
        raise UnsupportedFragment(f"modal operators are only handled in S4, not {logic.value}")
    if logic is Logic.S4 and _first_order(f):
        raise UnsupportedFragment("S4 is handled propositionally only")


def decide(
    f: Formula,
    logic: Logic,
    bounds: SearchBounds = DEFAULT_BOUNDS,
    depth: int = DEFAULT_DEPTH,
) -> Verdict:
    check_fragment(f, logic)
    if logic is Logic.CL:
        return _decide_cl(f, bounds, depth)
    if logic is Logic.S4:
        return _decide_s4(f, bounds)
    return _decide_int(f, logic, bounds, depth)


def _unknown(f, logic, bounds, depth, notes) -> Verdict:
    return Verdict(Outcome.UNKNOWN, logic, f, bounds=bounds, depth=depth, exact=False, notes=notes)


def _decide_cl(f: Formula, bounds: SearchBounds, depth: int) -> Verdict:
    if not _first_order(f):
        proof = prove_sequent_fo(f, None, Logic.CL)
        if proof is not None:
            return Verdict(Outcome.VALID, Logic.CL, f, proof=proof)
        table = cl_decide_prop(f)
        if table.valid:
            raise RuntimeError(f"truth table and sequent search disagree on {f}")
        return table
    proof = prove_sequent_fo(f, depth, Logic.CL, bounds.max_domain)
    if proof is not None:
        return Verdict(Outcome.VALID, Logic.CL, f, proof=proof, depth=depth)
    semantic = cl_decide_monadic(f, bounds.max_domain)
    if semantic.invalid:
        return semantic
    return _unknown(f, Logic.CL, bounds, depth, [
        f"no proof within depth {depth}",
        f"no counterexample over domains up to {bounds.max_domain}",
    ])


def _decide_int(f: Formula, logic: Logic, bounds: SearchBounds, depth: int) -> Verdict:
    if not _first_order(f):
        proof = prove_il_prop(f, logic)
        if proof is not None:
            return Verdict(Outcome.VALID, logic, f, proof=proof)
        model = search_countermodel(f, logic, bounds)
        notes = []
        if model is None:
            model = filtration_countermodel(f, logic)
            notes.append(f"countermodel exceeds {bounds.max_worlds} worlds; built by filtration")
        if model is None:
            raise RuntimeError(f"prover and filtration disagree on {f}")
        return Verdict(Outcome.INVALID, logic, f, countermodel=model, bounds=bounds, notes=notes)
    proof = prove_sequent_fo(f, depth, logic, bounds.max_domain)
    if proof is not None:
        return Verdict(Outcome.VALID, logic, f, proof=proof, depth=depth)
    model = search_countermodel(f, logic, bounds)
    if model is not None:
        return Verdict(Outcome.INVALID, logic, f, countermodel=model, bounds=bounds)
    return _unknown(f, logic, bounds, depth, [
        f"no proof within depth {depth}",
        f"no countermodel with at most {bounds.max_worlds} worlds and {bounds.max_domain} individuals",
        "first-order IL lacks the finite model property, so finite search cannot settle this",
    ])


def _decide_s4(f: Formula, bounds: SearchBounds) -> Verdict:
    proof = prove_s4(f)
    if proof is not None:
        return Verdict(Outcome.VALID, Logic.S4, f, proof=proof)
    model = search_countermodel(f, Logic.S4, bounds)
    notes = []
    if model is None:
        try:
            model = filtration_countermodel(f, Logic.S4)
        except UnsupportedFragment as exc:
            return _unknown(f, Logic.S4, bounds, None, [str(exc)])
        notes.append(f"countermodel exceeds {bounds.max_worlds} worlds; built by type elimination")
    if model is None:
        raise RuntimeError(f"S4 prover and type elimination disagree on {f}")
    return Verdict(Outcome.INVALID, Logic.S4, f, countermodel=model, bounds=bounds, notes=notes)


LAWS: list[tuple[str, str]] = [
    ("DNL", "~~p -> p"),
    ("LEM", "p | ~p"),
    ("triple negation", "~~~p <-> ~p"),
    ("ex falso", "false -> p"),
    ("contraposition", "(p -> q) -> ~q -> ~p"),
    ("Peirce", "((p -> q) -> p) -> p"),
    ("DN introduction", "p -> ~~p"),
]
LAW_LOGICS = (Logic.CL, Logic.IL, Logic.MINIMAL)


@dataclass
class LawRow:
    name: str
    formula: Formula
    verdicts: dict[Logic, Verdict]


@dataclass
class LawMatrix:
    rows: list[LawRow]

    def outcome(self, name: str, logic: Logic) -> Outcome:
        for row in self.rows:
            if row.name == name:
                return row.verdicts[logic].outcome
        raise KeyError(name)

    def to_text(self) -> str:
        width = max(len(r.name) for r in self.rows)
        fwidth = max(len(str(r.formula)) for r in self.rows)
        head = f"{'law':<{width}}  {'formula':<{fwidth}}  " + "  ".join(
            f"{lg.value:<8}" for lg in LAW_LOGICS
        )
        lines = [head.rstrip()]
        for r in self.rows:
            cells = "  ".join(f"{r.verdicts[lg].outcome.value:<8}" for lg in LAW_LOGICS)
            lines.append(f"{r.name:<{width}}  {str(r.formula):<{fwidth}}  {cells}".rstrip())
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "laws": [
                {
                    "name": r.name,
                    "formula": str(r.formula),
                    "verdicts": {lg.value: r.verdicts[lg].to_dict() for lg in LAW_LOGICS},
                }
                for r in self.rows
            ]
        }


def law_battery(bounds: SearchBounds = DEFAULT_BOUNDS) -> LawMatrix:
    rows = []
    for name, text in LAWS:
        f = parse_formula(text)
        rows.append(LawRow(name, f, {lg: decide(f, lg, bounds) for lg in LAW_LOGICS}))
    return LawMatrix(rows)
