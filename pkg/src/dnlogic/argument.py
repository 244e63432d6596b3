"""Problem-based theories: chains of ad absurdum arguments closed by one PSR step.

Records mix formal and informal content.  A claim or step may carry a formula,
a text, or both; invariants are checked on formulas when they are present and
structurally otherwise.  Documents are JSON; see ``docs/argument_format.md``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .dnp.detector import DNP, annotate_sentence
from .errors import DnLogicError, NotPsrEligible, ParseError
from .formula import FALSUM, Exists, Forall, Formula, Imp, Neg, conjoin, is_dnp_formula
from .proof.decide import decide
from .syntax import parse_formula
from .translations import psr_apply
from .verdict import DEFAULT_BOUNDS, DEFAULT_DEPTH, Logic, Outcome, SearchBounds

IL_INFERENCE = "IL-inference"
JUSTIFICATIONS = ("hypothesis", "premise", IL_INFERENCE, "text")

CONCLUSION_NOT_DN = "conclusion must be double negation of thesis"
HYPOTHESIS_NOT_NEG = "hypothesis must be the negation of the thesis"
NO_ABSURDITY = "chain must end in absurdity"
EMPTY_CHAIN = "chain must not be empty"
NOT_ONE_PSR = "exactly one PSR step"
FINAL_NOT_DNP = "final predicate must be a DNP"
FINAL_NOT_LAST = "final predicate must be the conclusion of the last AAA"
PSR_INPUT = "PSR input must be the final predicate"
PSR_OUTPUT = "PSR output must be what psr_apply gives"


class DocumentError(DnLogicError):
    """Malformed theory or AAA document."""


@dataclass(frozen=True)
class Claim:
    text: str = ""
    formula: Formula | None = None

    def label(self) -> str:
        return str(self.formula) if self.formula is not None else self.text

    def to_dict(self) -> dict:
        return {"text": self.text, "formula": None if self.formula is None else str(self.formula)}


@dataclass(frozen=True)
class Step:
    statement: str = ""
    formula: Formula | None = None
    justification: str = "text"
    absurdity: bool = False

    def to_dict(self) -> dict:
        return {
            "statement": self.statement,
            "formula": None if self.formula is None else str(self.formula),
            "justification": self.justification,
            "absurdity": self.absurdity,
        }


@dataclass(frozen=True)
class AaaRecord:
    thesis: Claim
    hypothesis: Claim
    chain: tuple[Step, ...]
    conclusion: Claim
    premises: tuple[Formula, ...] = ()
    name: str = ""

    @property
    def absurdity_reached(self) -> bool:
        if not self.chain:
            return False
        last = self.chain[-1]
        return last.absurdity or last.formula == FALSUM


@dataclass(frozen=True)
class PsrRecord:
    input: Claim
    output: Claim


@dataclass(frozen=True)
class Consequence:
    formula: Formula
    justification: str = ""


@dataclass(frozen=True)
class PoTheory:
    problem: str
    background: tuple[Claim, ...]
    aaas: tuple[AaaRecord, ...]
    final_predicate: Claim
    psr_steps: tuple[PsrRecord, ...]
    classical_consequences: tuple[Consequence, ...] = ()
    name: str = ""

    @property
    def background_formulas(self) -> list[Formula]:
        return [c.formula for c in self.background if c.formula is not None]


@dataclass
class ValidationReport:
    subject: str
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    checks: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors

    def absorb(self, other: "ValidationReport", prefix: str) -> None:
        self.errors += [f"{prefix}: {e}" for e in other.errors]
        self.warnings += [f"{prefix}: {w}" for w in other.warnings]
        self.checks += [f"{prefix}: {c}" for c in other.checks]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "errors": list(self.errors),
            "warnings": list(self.warnings),
            "checks": list(self.checks),
        }

    def to_text(self) -> str:
        lines = [f"{self.subject}: {'pass' if self.passed else 'FAIL'}"]
        lines += [f"  error: {e}" for e in self.errors]
        lines += [f"  warning: {w}" for w in self.warnings]
        lines += [f"  check: {c}" for c in self.checks]
        return "\n".join(lines) + "\n"


# --- validation -------------------------------------------------------------

def _hypothesis_ok(thesis: Formula, hypothesis: Formula) -> bool:
    if hypothesis == Neg(thesis):
        return True
    # counterexample form of a universal thesis: forall x. G is denied by exists x. ~G
    return (
        isinstance(thesis, Forall)
        and hypothesis == Exists(thesis.var, Neg(thesis.body))
    )


def _conclusion_ok(thesis: Formula, conclusion: Formula) -> bool:
    if conclusion == Neg(Neg(thesis)):
        return True
    return isinstance(thesis, Forall) and conclusion == Neg(Exists(thesis.var, Neg(thesis.body)))


def validate_aaa(
    a: AaaRecord, depth: int = DEFAULT_DEPTH, bounds: SearchBounds = DEFAULT_BOUNDS
) -> ValidationReport:
    """Structural invariants, then an IL check of each formal inference step.

    A step tagged ``IL-inference`` is checked as ``premises & F_i -> F_i+1``;
    an Invalid verdict is an error and an Unknown one a warning.
    """
    report = ValidationReport(a.name or "AAA")
    th, hy, co = a.thesis.formula, a.hypothesis.formula, a.conclusion.formula
    for label, claim in (("thesis", a.thesis), ("hypothesis", a.hypothesis), ("conclusion", a.conclusion)):
        if claim.formula is None and not claim.text.strip():
            report.errors.append(f"{label} is missing")
    if th is not None and hy is not None and not _hypothesis_ok(th, hy):
        report.errors.append(HYPOTHESIS_NOT_NEG)
    if th is not None and co is not None and not _conclusion_ok(th, co):
        report.errors.append(CONCLUSION_NOT_DN)
    if not a.chain:
        report.errors.append(EMPTY_CHAIN)
    elif not a.absurdity_reached or (a.chain[-1].formula not in (None, FALSUM)):
        report.errors.append(NO_ABSURDITY)
    for i, step in enumerate(a.chain, 1):
        if step.justification not in JUSTIFICATIONS:
            report.errors.append(f"step {i}: unknown justification {step.justification!r}")
        if step.justification == "hypothesis" and hy is not None and step.formula is not None and step.formula != hy:
            report.errors.append(f"step {i}: hypothesis step must restate the hypothesis")

    for i in range(1, len(a.chain)):
        prev, step = a.chain[i - 1], a.chain[i]
        if step.justification != IL_INFERENCE or prev.formula is None or step.formula is None:
            continue
        antecedent = conjoin([*a.premises, prev.formula])
        verdict = decide(Imp(antecedent, step.formula), Logic.IL, bounds, depth)
        what = f"step {i + 1} ({prev.formula} => {step.formula})"
        report.checks.append(f"{what}: IL {verdict.outcome.value}")
        if verdict.outcome is Outcome.INVALID:
            report.errors.append(f"{what} is not IL-derivable")
        elif verdict.outcome is Outcome.UNKNOWN:
            report.warnings.append(f"{what} unresolved at the search bounds")
    return report


def _is_dnp(claim: Claim) -> bool:
    if claim.formula is not None:
        return is_dnp_formula(claim.formula)
    return annotate_sentence(claim.text).classification == DNP


def validate_po_theory(
    t: PoTheory, depth: int = DEFAULT_DEPTH, bounds: SearchBounds = DEFAULT_BOUNDS
) -> ValidationReport:
    report = ValidationReport(t.name or "theory")
    for i, a in enumerate(t.aaas, 1):
        report.absorb(validate_aaa(a, depth, bounds), f"AAA {i}" + (f" ({a.name})" if a.name else ""))

    background = set(t.background_formulas)
    for i in range(1, len(t.aaas)):
        before, after = t.aaas[i - 1].conclusion.formula, t.aaas[i]
        if before is None or after.thesis.formula is None:
            continue  # linkage is checked between formal AAAs only
        if before not in set(after.premises) | background:
            report.errors.append(f"AAA {i + 1} must build on the conclusion of AAA {i}")

    final = t.final_predicate
    if not _is_dnp(final):
        report.errors.append(FINAL_NOT_DNP)
    if t.aaas:
        last = t.aaas[-1].conclusion.formula
        if last is not None and final.formula is not None and last != final.formula:
            report.errors.append(FINAL_NOT_LAST)

    if len(t.psr_steps) != 1:
        report.errors.append(f"{NOT_ONE_PSR} (found {len(t.psr_steps)})")
        return report
    psr = t.psr_steps[0]
    if psr.input.formula is not None and final.formula is not None:
        if psr.input.formula != final.formula:
            report.errors.append(PSR_INPUT)
        try:
            expected = psr_apply(final.formula).output
        except NotPsrEligible as exc:
            report.errors.append(str(exc))
        else:
            report.checks.append(f"psr_apply: {final.formula} => {expected}")
            if psr.output.formula is not None and psr.output.formula != expected:
                report.errors.append(PSR_OUTPUT)
    elif psr.input.text and final.text and psr.input.text.strip() != final.text.strip():
        report.errors.append(PSR_INPUT)

    hypothesis = psr.output.formula
    for c in t.classical_consequences:
        if hypothesis is None:
            report.warnings.append(f"{c.formula}: PSR output has no formula, consequence not checked")
            continue
        verdict = decide(Imp(conjoin([hypothesis, *t.background_formulas]), c.formula), Logic.CL, bounds, depth)
        report.checks.append(f"consequence {c.formula}: CL {verdict.outcome.value}")
        if verdict.outcome is Outcome.INVALID:
            report.errors.append(f"consequence {c.formula} does not follow classically")
        elif verdict.outcome is Outcome.UNKNOWN:
            report.warnings.append(f"consequence {c.formula} unresolved at the search bounds")
    return report


# --- documents --------------------------------------------------------------

def _formula(text: Any, where: str) -> Formula | None:
    if text is None:
        return None
    if not isinstance(text, str):
        raise DocumentError(f"{where}: formula must be a string")
    try:
        return parse_formula(text)
    except ParseError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def _claim(raw: Any, where: str) -> Claim:
    if raw is None:
        return Claim()
    if isinstance(raw, str):
        return Claim(formula=_formula(raw, where))
    if not isinstance(raw, dict):
        raise DocumentError(f"{where}: expected a string or an object")
    return Claim(str(raw.get("text", "")), _formula(raw.get("formula"), where))


def _aaa(raw: Any, where: str) -> AaaRecord:
    if not isinstance(raw, dict):
        raise DocumentError(f"{where}: expected an object")
    chain = []
    for j, s in enumerate(raw.get("chain", []), 1):
        if not isinstance(s, dict):
            raise DocumentError(f"{where}.chain[{j}]: expected an object")
        chain.append(Step(
            str(s.get("statement", "")),
            _formula(s.get("formula"), f"{where}.chain[{j}]"),
            str(s.get("justification", "text")),
            bool(s.get("absurdity", False)),
        ))
    return AaaRecord(
        thesis=_claim(raw.get("thesis"), f"{where}.thesis"),
        hypothesis=_claim(raw.get("hypothesis"), f"{where}.hypothesis"),
        chain=tuple(chain),
        conclusion=_claim(raw.get("conclusion"), f"{where}.conclusion"),
        premises=tuple(_formula(p, f"{where}.premises") for p in raw.get("premises", [])),
        name=str(raw.get("name", "")),
    )


def aaa_from_dict(raw: dict) -> AaaRecord:
    return _aaa(raw, "aaa")


def theory_from_dict(raw: dict) -> PoTheory:
    if not isinstance(raw, dict):
        raise DocumentError("theory: expected an object")
    psr = []
    for i, p in enumerate(raw.get("psr_steps", []), 1):
        if not isinstance(p, dict):
            raise DocumentError(f"psr_steps[{i}]: expected an object")
        psr.append(PsrRecord(_claim(p.get("input"), f"psr_steps[{i}].input"),
                             _claim(p.get("output"), f"psr_steps[{i}].output")))
    consequences = []
    for i, c in enumerate(raw.get("classical_consequences", []), 1):
        f = _formula(c.get("formula") if isinstance(c, dict) else c, f"classical_consequences[{i}]")
        if f is None:
            raise DocumentError(f"classical_consequences[{i}]: formula is required")
        consequences.append(Consequence(f, str(c.get("justification", "")) if isinstance(c, dict) else ""))
    return PoTheory(
        problem=str(raw.get("problem", "")),
        background=tuple(_claim(b, f"background[{i}]") for i, b in enumerate(raw.get("background", []), 1)),
        aaas=tuple(_aaa(a, f"aaas[{i}]") for i, a in enumerate(raw.get("aaas", []), 1)),
        final_predicate=_claim(raw.get("final_predicate"), "final_predicate"),
        psr_steps=tuple(psr),
        classical_consequences=tuple(consequences),
        name=str(raw.get("name", "")),
    )


@dataclass(frozen=True)
class AaaChain:
    """A bare sequence of AAAs, for sources that give the arguments but no PSR step."""

    name: str
    aaas: tuple[AaaRecord, ...]


def load_document(source: str | Path) -> PoTheory | AaaChain:
    """Parse a theory file (``kind: po-theory``) or an AAA chain (``kind: aaa-chain``)."""
    path = Path(source)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON: {exc}") from exc
    return document_from_dict(raw)


def document_from_dict(raw: Any) -> PoTheory | AaaChain:
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    kind = raw.get("kind", "po-theory")
    if kind == "aaa-chain":
        aaas = tuple(_aaa(a, f"aaas[{i}]") for i, a in enumerate(raw.get("aaas", []), 1))
        return AaaChain(str(raw.get("name", "")), aaas)
    if kind != "po-theory":
        raise DocumentError(f"unknown document kind {kind!r}")
    return theory_from_dict(raw)


def validate_document(
    doc: PoTheory | AaaChain, depth: int = DEFAULT_DEPTH, bounds: SearchBounds = DEFAULT_BOUNDS
) -> ValidationReport:
    if isinstance(doc, PoTheory):
        return validate_po_theory(doc, depth, bounds)
    report = ValidationReport(doc.name or "AAA chain")
    if not doc.aaas:
        report.errors.append("chain has no AAAs")
    for i, a in enumerate(doc.aaas, 1):
        report.absorb(validate_aaa(a, depth, bounds), f"AAA {i}" + (f" ({a.name})" if a.name else ""))
    report.checks.append(f"AAA count: {len(doc.aaas)}")
    return report
