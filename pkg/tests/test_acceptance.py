"""Acceptance criteria 1-10, one test class per criterion.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary
prints one PASS/FAIL line per criterion.
"""
from __future__ import annotations

import json
import time

import pytest

from dnlogic.argument import (
    FINAL_NOT_DNP, NOT_ONE_PSR, AaaChain, PoTheory, load_document, validate_document,
)
from dnlogic.classical import cl_decide_prop
from dnlogic.dnp import DNP, RHETORICAL, annotate_text, default_lexicon
from dnlogic.errors import AttestationRequired
from dnlogic.formula import Atom, Imp, Neg, subformulas
from dnlogic.generators import exhaustive, random_formulas
from dnlogic.kripke import check_model, force, make_model, search_countermodel
from dnlogic.proof import check_proof, decide, law_battery, prove_il_prop
from dnlogic.syntax import parse_formula
from dnlogic.translations import (
    DISCREPANCY_FLAG, MarkovAttestation, dummett_battery, glivenko, gmt_translation,
    kolmogorov_translation, markov_apply, negative_translation, psr_apply,
)
from dnlogic.verdict import Logic, Outcome, SearchBounds

from conftest import FIXTURES
from oracles import kripke_refutable, tt_falsifier, tt_valid

P = parse_formula


@pytest.fixture(scope="module")
def space():
    return exhaustive()


def one_world_certificate(f, valuation: dict):
    """One-world IL model built from a classical valuation; fails ``~~f`` when it falsifies ``f``."""
    m = make_model(Logic.IL, ["w0"], [], {"w0": [a for a, v in valuation.items() if v]})
    assert check_model(m).ok
    assert not force(m, "w0", Neg(Neg(f)))
    return m


# --- 1 ----------------------------------------------------------------------

EXPECTED_LAWS = {
    "DNL": ("Valid", "Invalid", "Invalid"),
    "LEM": ("Valid", "Invalid", "Invalid"),
    "ex falso": ("Valid", "Valid", "Invalid"),
    "triple negation": ("Valid", "Valid", "Valid"),
    "contraposition": ("Valid", "Valid", "Valid"),
    "DN introduction": ("Valid", "Valid", "Valid"),
    "Peirce": ("Valid", "Invalid", "Invalid"),
}
LAW_LOGICS = (Logic.CL, Logic.IL, Logic.MINIMAL)


@pytest.mark.criterion(1, "law-separation matrix")
class TestLawMatrix:
    def test_matrix_and_certificates(self):
        start = time.perf_counter()
        matrix = law_battery()
        elapsed = time.perf_counter() - start
        got = {r.name: tuple(r.verdicts[lg].outcome.value for lg in LAW_LOGICS) for r in matrix.rows}
        assert got == EXPECTED_LAWS
        for row in matrix.rows:
            for lg in LAW_LOGICS:
                v = row.verdicts[lg]
                if v.valid:
                    assert v.proof is not None and check_proof(v.proof)
                    continue
                m = v.countermodel
                assert m is not None
                if lg is Logic.CL:
                    assert not m.satisfies(row.formula)
                else:
                    assert len(m.worlds) <= 2
                    assert check_model(m).ok
                    assert not force(m, m.root, row.formula)
        assert elapsed < 1.0

    def test_invalid_entries_agree_with_brute_force(self):
        for row in law_battery().rows:
            assert row.verdicts[Logic.CL].valid == tt_valid(row.formula)
            for lg in (Logic.IL, Logic.MINIMAL):
                refutable = kripke_refutable(row.formula, 2, minimal=lg is Logic.MINIMAL)
                assert row.verdicts[lg].invalid == refutable


# --- 2 ----------------------------------------------------------------------

def glivenko_agrees(f, prune: bool = True) -> bool:
    classical = cl_decide_prop(f)
    falsifier = tt_falsifier(f)
    if classical.valid != (falsifier is None):
        return False
    proof = prove_il_prop(glivenko(f), prune=prune)
    if classical.valid:
        return proof is not None and check_proof(proof)
    if proof is not None:
        return False
    one_world_certificate(f, falsifier)
    return True


@pytest.mark.criterion(2, "Glivenko suite")
class TestGlivenko:
    def test_exhaustive_space(self, space):
        assert len(space) == 56842
        bad = [f for f in space if not glivenko_agrees(f)]
        assert bad == []

    def test_exhaustive_space_without_pruning(self, space):
        bad = [f for f in space if (prove_il_prop(glivenko(f), prune=False) is not None) != tt_valid(f)]
        assert bad == []

    def test_random_formulas(self):
        start = time.perf_counter()
        sample = random_formulas(10000, seed=2024)
        assert len(sample) == 10000
        bad = [f for f in sample if not glivenko_agrees(f)]
        assert bad == []
        assert time.perf_counter() - start < 300


# --- 3 ----------------------------------------------------------------------

@pytest.mark.criterion(3, "prover/semantics agreement")
class TestProverSemantics:
    def test_exhaustive_space(self, space):
        bad = []
        for f in space:
            proof = prove_il_prop(f)
            model = search_countermodel(f, Logic.IL, SearchBounds(max_worlds=len(subformulas(f))))
            if (proof is None) == (model is None):
                bad.append(f)
            elif proof is not None and not check_proof(proof):
                bad.append(f)
            elif model is not None and (not check_model(model).ok or force(model, model.root, f)):
                bad.append(f)
        assert bad == []

    def test_brute_force_oracle_sample(self, space):
        # every countermodel found over the space has at most 3 worlds
        bad = [f for f in space[::37] if (prove_il_prop(f) is None) != kripke_refutable(f, 3)]
        assert bad == []


# --- 4 ----------------------------------------------------------------------

@pytest.mark.criterion(4, "negative/Kolmogorov translation adequacy")
class TestNegativeTranslations:
    @pytest.mark.parametrize("translate", [negative_translation, kolmogorov_translation])
    def test_exhaustive_space(self, space, translate):
        bad = []
        for f in space:
            proof = prove_il_prop(translate(f))
            if (proof is not None) != tt_valid(f):
                bad.append(f)
        assert bad == []

    @pytest.mark.parametrize("translate", [negative_translation, kolmogorov_translation])
    def test_proofs_check_on_sample(self, space, translate):
        for f in space[::23]:
            proof = prove_il_prop(translate(f))
            assert proof is None or check_proof(proof)


# --- 5 ----------------------------------------------------------------------

@pytest.mark.criterion(5, "GMT/S4 adequacy")
class TestGmt:
    def test_exhaustive_space(self, space):
        bad = []
        for f in space:
            il = decide(f, Logic.IL)
            s4 = decide(gmt_translation(f), Logic.S4)
            if s4.unknown or il.valid != s4.valid:
                bad.append(f)
            elif s4.invalid:
                m = s4.countermodel
                if not check_model(m).ok or force(m, m.root, s4.formula):
                    bad.append(f)
        assert bad == []

    def test_brute_force_s4_oracle_sample(self, space):
        bad = [
            f for f in space[::211]
            if decide(gmt_translation(f), Logic.S4).invalid != kripke_refutable(gmt_translation(f), 3, modal=True)
        ]
        assert bad == []


# --- 6 ----------------------------------------------------------------------

@pytest.mark.criterion(6, "Dummett battery")
class TestDummett:
    def test_battery(self):
        start = time.perf_counter()
        report = dummett_battery()
        elapsed = time.perf_counter() - start

        fwd = report.entry("dn-forall", "neg-exists-neg")
        assert fwd.verdict.valid and check_proof(fwd.verdict.proof)

        for a, b in [("neg-exists-neg", "forall-dn"), ("forall-dn", "neg-exists-neg")]:
            e = report.entry(a, b)
            assert e.verdict.valid and check_proof(e.verdict.proof)

        dns = report.entry("forall-dn", "dn-forall")
        assert dns.verdict.outcome is Outcome.UNKNOWN
        assert dns.flag == DISCREPANCY_FLAG
        assert DISCREPANCY_FLAG in report.to_text()

        # the claimed equivalence is reported with both directions
        left, right = report.claimed
        assert (left.antecedent, left.consequent) == ("dn-forall", "neg-exists-neg")
        assert left.verdict.valid
        assert right.verdict.outcome is Outcome.UNKNOWN
        assert elapsed < 30


# --- 7 ----------------------------------------------------------------------

def contraposition_instance(a, b):
    return Imp(Imp(a, b), Imp(Neg(b), Neg(a)))


@pytest.mark.criterion(7, "triple-negation theorem")
class TestTripleNegation:
    def test_proof_uses_contraposition_with_b_as_double_negation(self):
        a = Atom("a")
        goal = P("~~~a <-> ~a")
        lemma = contraposition_instance(a, Neg(Neg(a)))
        assert lemma == P("(a -> ~~a) -> ~~~a -> ~a")
        proof = prove_il_prop(goal, lemmas=[lemma])
        assert proof is not None and check_proof(proof)
        assert proof.conclusion.ante == frozenset() and goal in proof.conclusion.succ
        assert lemma in proof.formulas()
        assert any(str(lemma) in line for line in proof.trace_lines())

    def test_plain_search_also_proves_it(self):
        proof = prove_il_prop(P("~~~a <-> ~a"))
        assert proof is not None and check_proof(proof)


# --- 8 ----------------------------------------------------------------------

@pytest.mark.criterion(8, "PSR contract")
class TestPsrContract:
    @pytest.mark.parametrize("src, out", [
        ("~~(forall x. f(x))", "forall x. f(x)"),
        ("~(exists X. ~f(X))", "forall X. f(X)"),
    ])
    def test_psr_shapes(self, src, out):
        step = psr_apply(P(src))
        assert step.output == P(out)
        assert step.epistemic_status == "hypothesis, not inference"

    def test_step_is_not_an_il_inference(self):
        step = psr_apply(P("~~p"))
        v = decide(Imp(step.input, step.output), Logic.IL)
        assert v.invalid
        assert check_model(v.countermodel).ok
        assert not force(v.countermodel, v.countermodel.root, v.formula)

    @pytest.mark.parametrize("attestation", [
        MarkovAttestation(False, "finite check"),
        MarkovAttestation(True, ""),
        MarkovAttestation(False, ""),
    ])
    def test_markov_needs_both_attestations(self, attestation):
        with pytest.raises(AttestationRequired):
            markov_apply(P("~~(exists x. f(x))"), attestation)

    def test_markov_with_both(self):
        step = markov_apply(P("~~(exists x. f(x))"), MarkovAttestation(True, "finite check"))
        assert step.output == P("exists x. f(x)")


# --- 9 ----------------------------------------------------------------------

EXPECTED_SENTENCES = [
    ("First, do not harm.", DNP, ("R6",)),
    ("Thou do not kill.", DNP, ("R6",)),
    ("Nothing is without reason.", DNP, ()),
    ("A motion without an end is impossible.", DNP, ("R6",)),
    ("Negation may partake absurdity.", DNP, ("R3",)),
    ("I have nothing else than 10$.", RHETORICAL, ("R1",)),
]


@pytest.mark.criterion(9, "detector golden file")
class TestDetectorGolden:
    def test_classifications(self):
        text = (FIXTURES / "paper_examples.txt").read_text(encoding="utf-8")
        records = annotate_text(text, default_lexicon())
        got = [(r.text, r.classification, r.rules_fired) for r in records]
        assert got == EXPECTED_SENTENCES
        assert sum(r.classification == DNP for r in records) == 5
        assert sum(r.classification == RHETORICAL for r in records) == 1
        words = {r.text: {m.text.lower() for m in r.markers} for r in records}
        assert {"not", "harm"} <= words["First, do not harm."]
        assert {"nothing", "without"} <= words["Nothing is without reason."]
        assert {"without", "impossible"} <= words["A motion without an end is impossible."]

    def test_json_byte_identical_and_golden(self):
        from dnlogic.cli import run

        path = str(FIXTURES / "paper_examples.txt")
        first = run(["detect", "--json", path])
        second = run(["detect", "--json", path])
        assert first == second and first[2] == 0
        golden = (FIXTURES.parent / "tests" / "golden" / "detect_paper_examples.jsonl").read_text(encoding="utf-8")
        assert first[0] == golden
        for line in first[0].splitlines():
            json.loads(line)


# --- 10 ---------------------------------------------------------------------

ARGS = FIXTURES / "arguments"


@pytest.mark.criterion(10, "argument fixtures")
class TestArgumentFixtures:
    def test_toy_theory_passes(self):
        doc = load_document(ARGS / "toy_theory.json")
        assert isinstance(doc, PoTheory)
        report = validate_document(doc)
        assert report.passed, report.errors

    @pytest.mark.parametrize("name, error", [
        ("mutant_two_psr.json", NOT_ONE_PSR),
        ("mutant_affirmative_final.json", FINAL_NOT_DNP),
    ])
    def test_mutants_fail_with_named_error(self, name, error):
        report = validate_document(load_document(ARGS / name))
        assert not report.passed
        assert any(e.startswith(error) for e in report.errors)

    @pytest.mark.parametrize("name, count", [("lobachevsky.json", 5), ("carnot.json", 7)])
    def test_historical_chains(self, name, count):
        doc = load_document(ARGS / name)
        assert isinstance(doc, AaaChain)
        assert len(doc.aaas) == count
        report = validate_document(doc)
        assert report.passed, report.errors
