import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnlogic.errors import UnsupportedFragment
from dnlogic.formula import subformulas
from dnlogic.generators import exhaustive
from dnlogic.kripke import (
    check_model, filtration_countermodel, force, make_model, model_from_dict,
    model_from_text, search_countermodel,
)
from dnlogic.kripke.search import frames
from dnlogic.proof import prove_il_prop
from dnlogic.syntax import parse_formula as P
from dnlogic.verdict import Logic, SearchBounds

from oracles import kforce
from strategies import propositional


def chain(valuation, logic=Logic.IL):
    return make_model(logic, ["w0", "w1"], [("w0", "w1")], valuation)


class TestCheckModel:
    def test_upper_world_atom_is_well_formed(self):
        assert check_model(chain({"w1": ["p"]})).ok

    def test_heredity_violation_reported(self):
        report = check_model(chain({"w0": ["p"]}))
        assert not report.ok
        assert any("heredity" in v and "w0" in v and "w1" in v for v in report.violations)

    def test_single_reflexive_s4_world(self):
        assert check_model(make_model(Logic.S4, ["w0"], [], {})).ok

    def test_s4_has_no_heredity_constraint(self):
        assert check_model(chain({"w0": ["p"]}, Logic.S4)).ok

    def test_symmetric_pair_is_fine_in_s4_only(self):
        worlds, order = ["w0", "w1", "w2"], [("w0", "w1"), ("w0", "w2"), ("w1", "w2"), ("w2", "w1")]
        assert check_model(make_model(Logic.S4, worlds, order, {})).ok
        assert not check_model(make_model(Logic.IL, worlds, order, {})).ok

    def test_transitivity_and_root(self):
        m = make_model(Logic.IL, ["w0", "w1", "w2"], [("w0", "w1"), ("w1", "w2")], {})
        report = check_model(m)
        assert any("transitive" in v for v in report.violations)
        assert any("not above the root" in v for v in report.violations)

    def test_falsum_forced_only_in_minimal(self):
        assert not check_model(chain({"w1": ["false"]})).ok
        assert check_model(chain({"w1": ["false"]}, Logic.MINIMAL)).ok

    def test_domains_must_expand(self):
        m = make_model(Logic.IL, ["w0", "w1"], [("w0", "w1")], {}, {"w0": ["a", "b"], "w1": ["a"]})
        assert any("expand" in v for v in check_model(m).violations)

    def test_instance_outside_domain(self):
        m = make_model(Logic.IL, ["w0"], [], {"w0": ["f(b)"]}, {"w0": ["a"]})
        assert not check_model(m).ok


class TestForce:
    def test_chain_examples(self):
        m = chain({"w1": ["p"]})
        assert force(m, "w0", P("~~p"))
        assert not force(m, "w0", P("p"))
        assert not force(m, "w0", P("p | ~p"))
        assert force(m, "w1", P("p | ~p"))

    def test_minimal_ex_falso_fails(self):
        m = chain({"w1": ["false"]}, Logic.MINIMAL)
        assert not force(m, "w0", P("false -> p"))

    def test_first_order_clauses(self):
        m = make_model(
            Logic.IL, ["w0", "w1"], [("w0", "w1")],
            {"w0": ["f(a)"], "w1": ["f(a)"]},
            {"w0": ["a"], "w1": ["a", "b"]},
        )
        assert check_model(m).ok
        assert force(m, "w0", P("exists x. f(x)"))
        # every individual at w0 satisfies f, but b appears later
        assert not force(m, "w0", P("forall x. f(x)"))
        assert force(m, "w0", P("~(forall x. f(x))"))
        assert force(m, "w1", P("exists x. ~f(x)"))

    def test_s4_box(self):
        m = make_model(Logic.S4, ["w0", "w1"], [("w0", "w1")], {"w0": ["p"]})
        assert not force(m, "w0", P("[]p"))
        assert force(m, "w0", P("<>p"))
        assert force(m, "w1", P("~p"))

    def test_fragment_errors(self):
        with pytest.raises(UnsupportedFragment):
            force(chain({}), "w0", P("[]p"))
        with pytest.raises(UnsupportedFragment):
            force(make_model(Logic.S4, ["w0"], [], {}), "w0", P("forall x. f(x)"))


@st.composite
def il_models(draw):
    k = draw(st.integers(1, 4))
    frame_list = list(frames(k, Logic.IL))
    _, up = draw(st.sampled_from(frame_list))
    worlds = [f"w{i}" for i in range(k)]
    order = [(worlds[i], worlds[j]) for i in range(k) for j in range(k) if up[i] >> j & 1 and i != j]
    val = {}
    for atom in ("p", "q", "r"):
        start = draw(st.integers(0, (1 << k) - 1))
        closed = 0
        for w in range(k):
            if start >> w & 1:
                closed |= up[w]
        val[atom] = closed
    valuation = {worlds[w]: [a for a, m in val.items() if m >> w & 1] for w in range(k)}
    return make_model(Logic.IL, worlds, order, valuation)


class TestProperties:
    @given(il_models(), propositional())
    @settings(max_examples=300, deadline=None)
    def test_heredity(self, m, f):
        assert check_model(m).ok
        for g in subformulas(f):
            for w in m.worlds:
                if force(m, w, g):
                    assert all(force(m, u, g) for u in m.successors(w))

    @given(il_models(), propositional())
    @settings(max_examples=200, deadline=None)
    def test_force_matches_oracle(self, m, f):
        index = {w: i for i, w in enumerate(m.worlds)}
        rel = {(index[a], index[b]) for a, b in m.order}
        val = {a: frozenset(index[w] for w, key in m.valuation if key == a) for a in ("p", "q", "r")}
        for w in m.worlds:
            assert force(m, w, f) == kforce(rel, val, index[w], f, modal=False)

    def test_bounds_are_monotone(self):
        for f in exhaustive(3)[::7]:
            found = [search_countermodel(f, Logic.IL, SearchBounds(max_worlds=n)) is not None for n in (1, 2, 3)]
            assert found == sorted(found)


class TestSearch:
    def test_dnl_minimal_countermodel(self):
        m = search_countermodel(P("~~p -> p"), Logic.IL, SearchBounds(max_worlds=2))
        assert m.worlds == ("w0", "w1")
        assert ("w0", "w1") in m.order
        assert sorted(m.valuation) == [("w1", "p")]

    def test_lem_same_frame(self):
        m = search_countermodel(P("p | ~p"), Logic.IL, SearchBounds(max_worlds=2))
        assert m.worlds == ("w0", "w1") and sorted(m.valuation) == [("w1", "p")]

    def test_one_world_is_classical(self):
        assert search_countermodel(P("~~p -> p"), Logic.IL, SearchBounds(max_worlds=1)) is None

    def test_minimal_ex_falso(self):
        m = search_countermodel(P("false -> p"), Logic.MINIMAL)
        assert m is not None and check_model(m).ok
        assert ("w0", "false") in m.valuation

    def test_s4_countermodel(self):
        m = search_countermodel(P("[]p | []~[]p"), Logic.S4)
        assert m is not None and check_model(m).ok
        assert not force(m, m.root, P("[]p | []~[]p"))

    def test_first_order_countermodel(self):
        f = P("~~(exists x. f(x)) -> exists x. f(x)")
        m = search_countermodel(f, Logic.IL)
        assert m is not None and check_model(m).ok
        assert not force(m, m.root, f)

    def test_dns_has_no_finite_countermodel(self):
        f = P("forall x. ~~f(x) -> ~~(forall x. f(x))")
        assert search_countermodel(f, Logic.IL, SearchBounds(max_worlds=3, max_domain=2)) is None

    def test_completeness_on_small_space(self):
        for f in exhaustive(3):
            m = search_countermodel(f, Logic.IL, SearchBounds(max_worlds=len(subformulas(f))))
            assert (m is None) == (prove_il_prop(f) is not None)

    @pytest.mark.parametrize("text", ["p | ~p", "~~p -> p", "((p -> q) -> p) -> p", "(p -> q) | (q -> p)"])
    def test_filtration_agrees(self, text):
        f = P(text)
        m = filtration_countermodel(f, Logic.IL)
        assert m is not None and check_model(m).ok and not force(m, m.root, f)

    def test_filtration_none_for_theorem(self):
        assert filtration_countermodel(P("~~~p -> ~p"), Logic.IL) is None


class TestFormats:
    MODEL = "flavor IL\nworld w0\nworld w1\nle w0 w1\nval w1 p\n"

    def test_text_round_trip(self):
        m = model_from_text(self.MODEL)
        assert m.to_text() == self.MODEL
        assert model_from_text(m.to_text()) == m

    def test_json_round_trip(self):
        m = model_from_text(self.MODEL + "dom w0 a\ndom w1 a\n")
        again = model_from_dict(json.loads(m.to_json()))
        assert again == m

    @pytest.mark.parametrize("text", ["world w0\n", "flavor IL\n", "flavor IL\nworld\n", "flavor K\nworld w0\n"])
    def test_bad_text(self, text):
        with pytest.raises(ValueError):
            model_from_text(text)
