import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cl1play.formulas import (
    And, Atom, Bot, Cand, Cor, EvaluationError, Formula, FormulaSyntaxError,
    Impl, Neg, Or, PathError, Polarity, Top,
    children, elementarize, evaluate, is_elementary, parse_formula,
    parse_path, path_str, render, resolve, substitute, surface_occurrences,
)
from oracles import polarity_by_rewriting, random_formula

P, Q, R = Atom("p"), Atom("q"), Atom("r")
MERGE_CONCLUSION = Impl(And((Cand((P, Q)), Cand((P, Q)))), Cand((P, Q)))


def occ_map(f: Formula):
    return {o.path: o for o in surface_occurrences(f)}


formulas_st = st.recursive(
    st.sampled_from([P, Q, R, Atom("s"), Top(), Bot()]),
    lambda kids: st.one_of(
        st.builds(Neg, kids),
        st.builds(Impl, kids, kids),
        st.lists(kids, min_size=2, max_size=3).map(lambda cs: And(tuple(cs))),
        st.lists(kids, min_size=2, max_size=3).map(lambda cs: Or(tuple(cs))),
        st.lists(kids, min_size=2, max_size=3).map(lambda cs: Cand(tuple(cs))),
        st.lists(kids, min_size=2, max_size=3).map(lambda cs: Cor(tuple(cs))),
    ),
    max_leaves=20,
)


class TestParsing:
    def test_seven_line_conclusion(self):
        assert parse_formula("((p?&q)&(p?&q))->(p?&q)") == MERGE_CONCLUSION

    def test_single_atom(self):
        assert parse_formula("p") == P

    def test_flat_run_is_one_node(self):
        f = parse_formula("p ?| q ?| r")
        assert f == Cor((P, Q, R))
        assert len(children(f)) == 3

    def test_parenthesized_run_stays_nested(self):
        f = parse_formula("(p ?| q) ?| r")
        assert f == Cor((Cor((P, Q)), R))

    def test_mixing_same_precedence_is_error(self):
        with pytest.raises(FormulaSyntaxError) as err:
            parse_formula("p & q ?& r")
        assert err.value.position == 6

    def test_mixing_or_level_is_error(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("p | q ?| r")

    def test_different_levels_mix_fine(self):
        assert parse_formula("p ?& q | r") == Or((Cand((P, Q)), R))

    def test_impl_right_associative(self):
        assert parse_formula("p->q->r") == Impl(P, Impl(Q, R))

    def test_impl_binary_only(self):
        assert parse_formula("(p->q)->r") == Impl(Impl(P, Q), R)

    def test_negation_binds_tightest(self):
        assert parse_formula("~p & q") == And((Neg(P), Q))

    def test_constants(self):
        assert parse_formula("T -> F") == Impl(Top(), Bot())

    def test_unicode_aliases(self):
        assert parse_formula("¬(p∧q)→⊤") == Impl(Neg(And((P, Q))), Top())
        assert parse_formula("p⊓q") == parse_formula("p?&q")
        assert parse_formula("p⊔q") == parse_formula("p?|q")
        assert parse_formula("⊥") == Bot()

    def test_atom_names(self):
        assert parse_formula("p1_x") == Atom("p1_x")

    @pytest.mark.parametrize("text,offset", [
        ("p $ q", 2),       # unknown token
        ("Px", 0),          # uppercase start is not an atom
        ("p & ", 4),        # missing operand
        ("(p & q", 6),      # unbalanced open
        ("p)", 1),          # unbalanced close
        ("p q", 2),         # two formulas
        ("p -| q", 2),      # half an arrow
        ("?q", 0),          # half a choice operator
        ("", 0),            # empty input
    ])
    def test_errors_carry_offsets(self, text, offset):
        with pytest.raises(FormulaSyntaxError) as err:
            parse_formula(text)
        assert err.value.position == offset

    def test_arity_enforced_on_construction(self):
        with pytest.raises(ValueError):
            And((P,))
        with pytest.raises(ValueError):
            Cor(())
        with pytest.raises(ValueError):
            Atom("P")


class TestRendering:
    def test_atom(self):
        assert render(P) == "p"

    def test_negation(self):
        assert render(Neg(P)) == "~p"

    def test_conclusion_round_trip(self):
        assert parse_formula(render(MERGE_CONCLUSION)) == MERGE_CONCLUSION

    def test_nested_same_operator_keeps_parens(self):
        f = Or((Or((P, Q)), R))
        assert render(f) == "(p|q)|r"
        assert parse_formula(render(f)) == f

    def test_choice_under_plain_keeps_parens(self):
        f = Or((Cor((P, Q)), R))
        assert parse_formula(render(f)) == f

    @given(formulas_st)
    def test_round_trip(self, f):
        assert parse_formula(render(f)) == f

    def test_round_trip_seeded_sweep(self):
        rng = random.Random(20240601)
        for _ in range(10_000):
            f = random_formula(rng, depth=5)
            assert parse_formula(render(f)) == f


class TestSurfaceOccurrences:
    def test_conclusion_polarity(self):
        occs = occ_map(MERGE_CONCLUSION)
        assert occs[(1, 1)].polarity is Polarity.NEGATIVE
        assert isinstance(occs[(1, 1)].subformula, Cand)
        assert occs[(2,)].polarity is Polarity.POSITIVE
        assert (2, 1) not in occs  # inside a choice operator

    def test_single_atom(self):
        occs = surface_occurrences(P)
        assert len(occs) == 1
        assert occs[0].path == ()
        assert occs[0].polarity is Polarity.POSITIVE

    def test_negated_choice(self):
        occs = occ_map(parse_formula("~(p ?| q)"))
        assert occs[(1,)].polarity is Polarity.NEGATIVE
        assert isinstance(occs[(1,)].subformula, Cor)
        assert (1, 1) not in occs

    def test_preorder(self):
        paths = [o.path for o in surface_occurrences(parse_formula("(p&q)->~r"))]
        assert paths == [(), (1,), (1, 1), (1, 2), (2,), (2, 1)]

    def test_path_round_trip_property(self):
        rng = random.Random(7)
        for _ in range(300):
            f = random_formula(rng, depth=4)
            for o in surface_occurrences(f):
                assert resolve(f, o.path) == o.subformula

    def test_polarity_matches_negation_counting(self):
        rng = random.Random(8)
        for _ in range(300):
            f = random_formula(rng, depth=4)
            expected = polarity_by_rewriting(f)
            for o in surface_occurrences(f):
                assert (o.polarity is Polarity.POSITIVE) == expected[o.path]


class TestResolveSubstitute:
    def test_resolve_consequent(self):
        assert resolve(MERGE_CONCLUSION, (2,)) == Cand((P, Q))

    def test_resolve_root(self):
        assert resolve(MERGE_CONCLUSION, ()) == MERGE_CONCLUSION

    def test_resolve_into_atom_fails(self):
        with pytest.raises(PathError):
            resolve(P, (1,))

    def test_substitute_consequent(self):
        expected = parse_formula("((p?&q)&(p?&q))->p")
        assert substitute(MERGE_CONCLUSION, (2,), 1) == expected

    def test_substitute_intro_conclusion(self):
        f = parse_formula("p->(r?&q)")
        assert substitute(f, (2,), 2) == parse_formula("p->q")

    def test_substitute_root(self):
        assert substitute(parse_formula("p?|q"), (), 2) == Q

    def test_substitute_non_choice_fails(self):
        with pytest.raises(PathError):
            substitute(MERGE_CONCLUSION, (1,), 1)

    def test_substitute_component_out_of_range(self):
        with pytest.raises(PathError):
            substitute(MERGE_CONCLUSION, (2,), 3)

    def test_substitute_under_choice_fails(self):
        f = parse_formula("(p?&q)?&r")
        with pytest.raises(PathError):
            substitute(f, (1,), 1)

    def test_substitution_locality(self):
        rng = random.Random(9)
        tried = 0
        while tried < 200:
            f = random_formula(rng, depth=4)
            choices = [o for o in surface_occurrences(f)
                       if isinstance(o.subformula, (Cand, Cor))]
            if not choices:
                continue
            tried += 1
            occ = rng.choice(choices)
            i = rng.randrange(1, len(children(occ.subformula)) + 1)
            g = substitute(f, occ.path, i)
            assert resolve(g, occ.path) == children(occ.subformula)[i - 1]
            before = occ_map(f)
            after = occ_map(g)
            for path, o in before.items():
                ancestor = path == occ.path[:len(path)]
                inside = path[:len(occ.path)] == occ.path
                if ancestor or inside:
                    continue
                assert after[path].subformula == o.subformula
                assert after[path].polarity == o.polarity


class TestElementarize:
    def test_conclusion(self):
        assert elementarize(MERGE_CONCLUSION) == parse_formula("(T&T)->T")

    def test_negative_cor(self):
        assert elementarize(parse_formula("p -> (r?|q)")) == parse_formula("p->F")

    def test_elementary_unchanged(self):
        f = parse_formula("(p&p)->p")
        assert elementarize(f) == f

    def test_idempotent(self):
        rng = random.Random(10)
        for _ in range(300):
            f = random_formula(rng, depth=4)
            once = elementarize(f)
            assert is_elementary(once)
            assert elementarize(once) == once


class TestIsElementary:
    def test_plain(self):
        assert is_elementary(parse_formula("(p&p)->p"))

    def test_choice(self):
        assert not is_elementary(parse_formula("p?&q"))

    def test_choice_under_negation_counts(self):
        assert not is_elementary(parse_formula("~(p?|q)"))


class TestEvaluate:
    def test_tautology_both_ways(self):
        f = parse_formula("(p&p)->p")
        assert evaluate(f, {"p": True})
        assert evaluate(f, {"p": False})

    def test_false_atom(self):
        assert evaluate(P, {"p": False}) is False

    def test_constants_need_no_atoms(self):
        assert evaluate(parse_formula("(T&T)->T"), {})

    def test_missing_atom(self):
        with pytest.raises(EvaluationError):
            evaluate(P, {})

    def test_non_elementary(self):
        with pytest.raises(EvaluationError):
            evaluate(parse_formula("p?&q"), {"p": True, "q": True})


class TestPaths:
    def test_parse_and_render(self):
        assert parse_path("") == ()
        assert parse_path("1.2.10") == (1, 2, 10)
        assert path_str((1, 2, 10)) == "1.2.10"
        assert path_str(()) == ""

    @pytest.mark.parametrize("text", ["0", "1..2", "a", "-1", "1.", ".1"])
    def test_bad_paths(self, text):
        with pytest.raises(PathError):
            parse_path(text)
