import copy
import pickle

import pytest
from hypothesis import given, settings

from dnlogic.errors import ParseError
from dnlogic.formula import (
    FALSUM, And, Atom, Box, Dia, Exists, Forall, Iff, Imp, Neg, NegationClass, Or, PredApp,
    classify_negation_profile, collapsed_representative, conjoin, connective_count, depth,
    free_vars, is_dnp_formula, is_propositional, negate, substitute, subformulas,
    universal_closure,
)
from dnlogic.proof import check_proof, prove_il_prop
from dnlogic.syntax import parse_formula, render_formula

from strategies import any_formula, propositional

p, q, r = Atom("p"), Atom("q"), Atom("r")
fx = PredApp("f", "x")

PARSE_CASES = [
    ("~~p -> p", Imp(Neg(Neg(p)), p)),
    ("forall x. ~~f(x)", Forall("x", Neg(Neg(fx)))),
    ("p | ~p", Or(p, Neg(p))),
    ("p -> q -> p", Imp(p, Imp(q, p))),
    ("p & q | r", Or(And(p, q), r)),
    ("p | q & r", Or(p, And(q, r))),
    ("p <-> q <-> r", Iff(Iff(p, q), r)),
    ("p -> q <-> r", Iff(Imp(p, q), r)),
    ("¬p", Neg(p)),
    ("_|_ -> p", Imp(FALSUM, p)),
    ("false", FALSUM),
    ("[]p -> <>p", Imp(Box(p), Dia(p))),
    ("~(exists x. ~f(x))", Neg(Exists("x", Neg(fx)))),
    ("forall x. f(x) -> p", Imp(Forall("x", fx), p)),
    ("  ( p )  ", p),
    ("exists x. f(x) -> forall x. f(x)", Imp(Exists("x", fx), Forall("x", fx))),
]

RENDER_CASES = [
    (Neg(Neg(p)), "~~p"),
    (Imp(p, Imp(q, p)), "p -> q -> p"),
    (Imp(Imp(p, q), p), "(p -> q) -> p"),
    (Forall("x", fx), "forall x. f(x)"),
    (Neg(Exists("x", Neg(fx))), "~(exists x. ~f(x))"),
    (And(Or(p, q), r), "(p | q) & r"),
    (Iff(p, Iff(q, r)), "p <-> (q <-> r)"),
    (Neg(And(p, q)), "~(p & q)"),
    (Box(Neg(Box(p))), "[]~[]p"),
    (FALSUM, "false"),
]


class TestParse:
    @pytest.mark.parametrize("text, expected", PARSE_CASES)
    def test_parse(self, text, expected):
        assert parse_formula(text) == expected

    @pytest.mark.parametrize("text, position", [
        ("p ->", 4),
        ("(p", 2),
        ("p q", 2),
        ("p $ q", 2),
        ("forall . f(x)", 7),
        ("", 0),
    ])
    def test_errors_carry_position(self, text, position):
        with pytest.raises(ParseError) as info:
            parse_formula(text)
        assert info.value.position == position
        assert info.value.expected

    def test_expected_set_names_tokens(self):
        with pytest.raises(ParseError) as info:
            parse_formula("p &")
        assert "IDENT" in info.value.expected


class TestRender:
    @pytest.mark.parametrize("f, text", RENDER_CASES)
    def test_render(self, f, text):
        assert render_formula(f) == text
        assert str(f) == text

    @given(any_formula())
    @settings(max_examples=400, deadline=None)
    def test_round_trip(self, f):
        assert parse_formula(render_formula(f)) == f

    @given(propositional())
    def test_render_is_canonical(self, f):
        text = render_formula(f)
        assert render_formula(parse_formula(text)) == text


class TestValues:
    def test_interning(self):
        assert Imp(Atom("p"), Atom("q")) is Imp(Atom("p"), Atom("q"))

    @given(any_formula())
    def test_copy_and_pickle(self, f):
        assert copy.deepcopy(f) == f
        assert pickle.loads(pickle.dumps(f)) == f
        assert hash(pickle.loads(pickle.dumps(f))) == hash(f)

    def test_distinct_kinds_differ(self):
        assert And(p, q) != Or(p, q)
        assert Box(p) != Dia(p)
        assert Forall("x", fx) != Exists("x", fx)

    def test_immutable(self):
        with pytest.raises(Exception):
            p.name = "q"


class TestNegation:
    @pytest.mark.parametrize("f", [p, Neg(p), FALSUM])
    def test_negate_wraps_once(self, f):
        assert negate(f) == Neg(f)

    @pytest.mark.parametrize("text, cls, n", [
        ("p", NegationClass.AFFIRMATIVE, 0),
        ("~p", NegationClass.NEGATIVE, 1),
        ("~~p", NegationClass.DOUBLY_NEGATED, 2),
        ("~~~p", NegationClass.NEGATIVE, 3),
        ("~~~~p", NegationClass.DOUBLY_NEGATED, 4),
        ("~p -> p", NegationClass.AFFIRMATIVE, 0),
    ])
    def test_profile(self, text, cls, n):
        prof = classify_negation_profile(parse_formula(text))
        assert (prof.cls, prof.raw_prefix_count) == (cls, n)

    @given(any_formula())
    def test_double_negation_adds_two(self, f):
        before = classify_negation_profile(f).raw_prefix_count
        assert classify_negation_profile(negate(negate(f))).raw_prefix_count == before + 2

    @pytest.mark.parametrize("n", range(3, 9))
    @pytest.mark.parametrize("core", ["p", "p -> q", "p | ~q"])
    def test_collapse_is_il_equivalent(self, n, core):
        f = parse_formula(core)
        for _ in range(n):
            f = Neg(f)
        rep = collapsed_representative(f)
        assert classify_negation_profile(rep).raw_prefix_count == (1 if n % 2 else 2)
        proof = prove_il_prop(Iff(f, rep))
        assert proof is not None and check_proof(proof)

    @pytest.mark.parametrize("text, expected", [
        ("~~p", True),
        ("~~~~(forall x. f(x))", True),
        ("~(exists x. ~f(x))", True),
        ("~p", False),
        ("~~~p", False),
        ("~(exists x. f(x))", False),
        ("forall x. f(x)", False),
    ])
    def test_is_dnp_formula(self, text, expected):
        assert is_dnp_formula(parse_formula(text)) is expected


class TestStructure:
    def test_subformulas_post_order(self):
        f = parse_formula("p -> p & q")
        assert subformulas(f) == [p, q, And(p, q), f]

    def test_counts(self):
        f = parse_formula("~(p & q) -> r")
        assert connective_count(f) == 3
        assert depth(f) == 3

    def test_free_vars_and_closure(self):
        f = parse_formula("f(x) & forall y. g(y)")
        assert free_vars(f) == {"x"}
        assert universal_closure(f) == Forall("x", f)

    def test_substitute_respects_binding(self):
        f = parse_formula("f(x) & forall x. f(x)")
        assert substitute(f, "x", "c") == parse_formula("f(c) & forall x. f(x)")

    @pytest.mark.parametrize("text, expected", [
        ("p -> q", True), ("[]p", False), ("f(x)", False), ("forall x. p", False),
    ])
    def test_is_propositional(self, text, expected):
        assert is_propositional(parse_formula(text)) is expected

    def test_conjoin(self):
        assert conjoin([]) is None
        assert conjoin([p]) == p
        assert conjoin([p, q, r]) == And(And(p, q), r)
