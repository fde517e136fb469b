import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defarg.arguments import (
    Argument,
    all_arguments,
    arguments_for,
    counterarguments,
    is_consistent,
    subarguments,
)
from defarg.consequence import cumulativity_holds
from defarg.generate import theory_corpus
from defarg.lang import Literal, parse_literal, parse_rule, parse_theory
from oracles import brute_arguments, brute_arguments_for

CORPUS = theory_corpus(3, 120)


def arg(conclusion, *rules):
    return Argument(frozenset(parse_rule(r) for r in rules), parse_literal(conclusion))


def test_named_arguments_exist(engine, named):
    for name in "ABCDE":
        a = named[name]
        assert a in arguments_for(engine, a.conclusion), name


def test_engine_ok_arguments(engine, named):
    found = arguments_for(engine, parse_literal("engine_ok"))
    assert named["A"] in found
    assert found == brute_arguments_for(engine, parse_literal("engine_ok"))


def test_fuel_ok_has_two_arguments(engine, named):
    found = arguments_for(engine, parse_literal("fuel_ok"))
    assert found == {
        named["D"],
        arg("fuel_ok", "pump_fuel_ok -< sw1", "fuel_ok -< pump_fuel_ok"),
    }


def test_b_and_c_are_unique(engine, named):
    assert arguments_for(engine, parse_literal("~fuel_ok")) == {named["B"]}
    assert arguments_for(engine, parse_literal("~low_speed")) == {named["C"]}


def test_strict_conclusions_have_empty_support(engine):
    assert arguments_for(engine, parse_literal("sw1")) == {Argument(frozenset(), Literal("sw1"))}


def test_no_argument_for_unknown_atom(engine):
    assert arguments_for(engine, parse_literal("unicorn")) == frozenset()


def test_inconsistent_support_is_not_an_argument():
    t = parse_theory("a. b -< a. ~c <- b. c -< a. d -< b, c.")
    assert arguments_for(t, parse_literal("d")) == frozenset()


def test_minimality():
    # {b -< a, c} plus {c -< a} would also derive b, but {b -< a} does it alone
    t = parse_theory("a. c. b -< a. b -< a, c. c -< a.")
    assert arguments_for(t, parse_literal("b")) == {arg("b", "b -< a"), arg("b", "b -< a, c")}
    t = parse_theory("a. b -< a. d -< a. b -< d, a.")
    found = arguments_for(t, parse_literal("b"))
    assert arg("b", "b -< a") in found
    assert all(len(a.support) == 1 or not a.support >= {parse_rule("b -< a")} for a in found)


@pytest.mark.parametrize("index", range(len(CORPUS)))
def test_matches_subset_enumeration(index):
    t = CORPUS[index]
    assert set(all_arguments(t)) == brute_arguments(t)


def test_subarguments_of_a(engine, named):
    subs = subarguments(named["A"], engine)
    assert arg("fuel_ok", "pump_fuel_ok -< sw1", "fuel_ok -< pump_fuel_ok") in subs
    assert arg("pump_oil_ok", "pump_oil_ok -< sw2") in subs
    assert named["A"] not in subs
    assert all(s.support < named["A"].support for s in subs)


def test_counterarguments_of_a(engine, named):
    hits = counterarguments(engine, named["A"], [named[n] for n in "ABCDE"])
    assert {h.attacker for h in hits} == {named["B"], named["E"]}
    at_b = {h.disagreement.conclusion for h in hits if h.attacker == named["B"]}
    assert at_b == {parse_literal("fuel_ok")}
    at_e = {h.disagreement for h in hits if h.attacker == named["E"]}
    assert at_e == {named["A"]}


@pytest.mark.parametrize("index", range(0, len(CORPUS), 3))
def test_disagreement_is_a_subargument(index):
    t = CORPUS[index]
    for target in all_arguments(t):
        for hit in counterarguments(t, target):
            assert hit.disagreement.support <= target.support
            assert is_consistent(t, hit.attacker.support)


@pytest.mark.parametrize("index", range(0, len(CORPUS), 2))
def test_conclusion_attacks_are_answered(index):
    t = CORPUS[index]
    args = all_arguments(t)
    for target in args:
        for hit in counterarguments(t, target, args):
            if hit.disagreement == target:
                back = counterarguments(t, hit.attacker, [target] + sorted(subarguments(target, t)))
                assert back


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(CORPUS) - 1), st.data())
def test_reasserting_an_argument_changes_nothing(index, data):
    t = CORPUS[index]
    args = all_arguments(t)
    extra = data.draw(st.sampled_from(args))
    ok, msg = cumulativity_holds(t, extra)
    assert ok, msg
