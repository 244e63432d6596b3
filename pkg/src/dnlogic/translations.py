"""Double-negation translations, the S4 embedding, and the PSR and Markov moves.

Translations apply no simplification: their output is exactly the recursive
definition unrolled.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AttestationRequired, NotMarkovEligible, NotPsrEligible, UnsupportedFragment
from .formula import (
    And, Atom, Box, Dia, Exists, Falsum, FALSUM, Forall, Formula, Iff, Imp, Neg, Or, PredApp,
    has_modalities, has_quantifiers, predicates,
)
from .proof.decide import decide
from .syntax import parse_formula
from .verdict import DEFAULT_BOUNDS, DEFAULT_DEPTH, Logic, Outcome, SearchBounds, Verdict

HYPOTHESIS_NOT_INFERENCE = "hypothesis, not inference"


def _dn(f: Formula) -> Formula:
    return Neg(Neg(f))


def _no_modal(f: Formula, what: str) -> None:
    if has_modalities(f):
        raise UnsupportedFragment(f"{what} is not defined on modal formulas")


def glivenko(f: Formula) -> Formula:
    _no_modal(f, "glivenko")
    if has_quantifiers(f) or predicates(f):
        raise UnsupportedFragment(
            "Glivenko's theorem fails for first-order formulas; use negative_translation"
        )
    return _dn(f)


def negative_translation(f: Formula) -> Formula:
    """Goedel-Gentzen negative translation."""
    _no_modal(f, "negative_translation")
    return _gg(f)


def _gg(f: Formula) -> Formula:
    if isinstance(f, (Atom, PredApp)):
        return _dn(f)
    if isinstance(f, Falsum):
        return f
    if isinstance(f, Neg):
        return Neg(_gg(f.body))
    if isinstance(f, Or):
        return Neg(And(Neg(_gg(f.left)), Neg(_gg(f.right))))
    if isinstance(f, (And, Imp, Iff)):
        return type(f)(_gg(f.left), _gg(f.right))
    if isinstance(f, Forall):
        return Forall(f.var, _gg(f.body))
    if isinstance(f, Exists):
        return Neg(Forall(f.var, Neg(_gg(f.body))))
    raise UnsupportedFragment(f"cannot translate {type(f).__name__}")


def kolmogorov_translation(f: Formula) -> Formula:
    """Double negation in front of every subformula, the whole formula included."""
    _no_modal(f, "kolmogorov_translation")
    return _kol(f)


def _kol(f: Formula) -> Formula:
    if isinstance(f, (Atom, PredApp, Falsum)):
        return _dn(f)
    if isinstance(f, Neg):
        return _dn(Neg(_kol(f.body)))
    if isinstance(f, (Forall, Exists)):
        return _dn(type(f)(f.var, _kol(f.body)))
    return _dn(type(f)(_kol(f.left), _kol(f.right)))


def gmt_translation(f: Formula) -> Formula:
    """Goedel-McKinsey-Tarski embedding of propositional IL into S4."""
    if has_modalities(f) or has_quantifiers(f) or predicates(f):
        raise UnsupportedFragment("gmt_translation needs a non-modal propositional formula")
    return _gmt(f)


def _gmt(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return Box(f)
    if isinstance(f, Falsum):
        return f
    if isinstance(f, Neg):
        return Box(Neg(_gmt(f.body)))
    if isinstance(f, (And, Or)):
        return type(f)(_gmt(f.left), _gmt(f.right))
    if isinstance(f, Imp):
        return Box(Imp(_gmt(f.left), _gmt(f.right)))
    if isinstance(f, Iff):
        return Box(Iff(_gmt(f.left), _gmt(f.right)))
    raise UnsupportedFragment(f"cannot translate {type(f).__name__}")


# --- PSR and Markov ---------------------------------------------------------

OUTER_DOUBLE_NEGATION = "OuterDoubleNegation"
NEG_EXISTS_NEG = "NegExistsNeg"


@dataclass(frozen=True)
class PsrStep:
    input: Formula
    output: Formula
    justification: str
    epistemic_status: str = HYPOTHESIS_NOT_INFERENCE

    def to_dict(self) -> dict:
        return {
            "input": str(self.input),
            "output": str(self.output),
            "justification": self.justification,
            "epistemic_status": self.epistemic_status,
        }


def psr_apply(f: Formula) -> PsrStep:
    """Turn a doubly negated predicate into its affirmative counterpart.

    Accepts only ``~~G`` (giving G) and ``~(exists x. ~G)`` (giving
    ``forall x. G``).  The result is a recorded hypothesis: the step is not
    valid in IL.
    """
    if isinstance(f, Neg) and isinstance(f.body, Neg):
        return PsrStep(f, f.body.body, OUTER_DOUBLE_NEGATION)
    if isinstance(f, Neg) and isinstance(f.body, Exists) and isinstance(f.body.body, Neg):
        inner = f.body
        return PsrStep(f, Forall(inner.var, inner.body.body), NEG_EXISTS_NEG)
    raise NotPsrEligible(f"PSR applies to '~~G' or '~(exists x. ~G)', not to {f}")


@dataclass(frozen=True)
class MarkovAttestation:
    is_aaa_conclusion: bool
    decidability_witness: str

    @property
    def complete(self) -> bool:
        return self.is_aaa_conclusion and bool(self.decidability_witness.strip())


@dataclass(frozen=True)
class MarkovStep:
    input: Formula
    output: Formula
    attestation: MarkovAttestation

    def to_dict(self) -> dict:
        return {
            "input": str(self.input),
            "output": str(self.output),
            "is_aaa_conclusion": self.attestation.is_aaa_conclusion,
            "decidability_witness": self.attestation.decidability_witness,
        }


def markov_apply(f: Formula, attestation: MarkovAttestation) -> MarkovStep:
    if not (isinstance(f, Neg) and isinstance(f.body, Neg) and isinstance(f.body.body, Exists)):
        raise NotMarkovEligible(f"Markov's principle needs '~~(exists x. G)', not {f}")
    if not attestation.is_aaa_conclusion:
        raise AttestationRequired("the premise must be attested as the conclusion of an AAA")
    if not attestation.decidability_witness.strip():
        raise AttestationRequired("the predicate must come with a decidability witness")
    return MarkovStep(f, f.body.body, attestation)


# --- Dummett battery --------------------------------------------------------

DUMMETT_FORMULAS: list[tuple[str, str]] = [
    ("forall-dn", "forall x. ~~f(x)"),
    ("dn-forall", "~~(forall x. f(x))"),
    ("neg-exists-neg", "~(exists x. ~f(x))"),
    ("dn-exists", "~~(exists x. f(x))"),
    ("exists-dn", "exists x. ~~f(x)"),
]
# the equivalence asserted in the analysed text
CLAIMED_PAIR = ("dn-forall", "neg-exists-neg")
DISCREPANCY_FLAG = (
    "unresolved at finite bounds; standard metatheory: unprovable; "
    "claimed equivalent in the analysed text"
)


@dataclass
class BatteryEntry:
    antecedent: str
    consequent: str
    formula: Formula
    verdict: Verdict
    flag: str | None = None


@dataclass
class BatteryReport:
    entries: list[BatteryEntry]
    claimed: tuple[BatteryEntry, BatteryEntry]
    bounds: SearchBounds
    depth: int
    notes: list[str] = field(default_factory=list)

    def entry(self, antecedent: str, consequent: str) -> BatteryEntry:
        for e in self.entries:
            if (e.antecedent, e.consequent) == (antecedent, consequent):
                return e
        raise KeyError((antecedent, consequent))

    def to_text(self) -> str:
        width = max(len(str(e.formula)) for e in self.entries)
        lines = [f"{'implication':<{width}}  {'IL':<8}  flag"]
        for e in self.entries:
            flag = e.flag or ""
            lines.append(f"{str(e.formula):<{width}}  {e.verdict.outcome.value:<8}  {flag}".rstrip())
        fwd, back = self.claimed
        lines.append("")
        lines.append(
            f"claimed equivalence {fwd.antecedent} <-> {fwd.consequent}: "
            f"forward {fwd.verdict.outcome.value}, backward {back.verdict.outcome.value}"
        )
        lines.append(f"bounds: {self.bounds.max_worlds} worlds, {self.bounds.max_domain} individuals; depth {self.depth}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        fwd, back = self.claimed
        return {
            "bounds": {"max_worlds": self.bounds.max_worlds, "max_domain": self.bounds.max_domain},
            "depth": self.depth,
            "entries": [
                {
                    "antecedent": e.antecedent,
                    "consequent": e.consequent,
                    "formula": str(e.formula),
                    "verdict": e.verdict.to_dict(),
                    "flag": e.flag,
                }
                for e in self.entries
            ],
            "claimed_equivalence": {
                "left": fwd.antecedent,
                "right": fwd.consequent,
                "forward": fwd.verdict.outcome.value,
                "backward": back.verdict.outcome.value,
            },
        }


def dummett_battery(bounds: SearchBounds = DEFAULT_BOUNDS, depth: int = DEFAULT_DEPTH) -> BatteryReport:
    parsed = [(name, parse_formula(text)) for name, text in DUMMETT_FORMULAS]
    entries = []
    for a_name, a in parsed:
        for b_name, b in parsed:
            if a_name == b_name:
                continue
            f = Imp(a, b)
            verdict = decide(f, Logic.IL, bounds, depth)
            flag = DISCREPANCY_FLAG if verdict.outcome is Outcome.UNKNOWN else None
            entries.append(BatteryEntry(a_name, b_name, f, verdict, flag))
    by_pair = {(e.antecedent, e.consequent): e for e in entries}
    left, right = CLAIMED_PAIR
    claimed = (by_pair[(left, right)], by_pair[(right, left)])
    return BatteryReport(entries, claimed, bounds, depth)
