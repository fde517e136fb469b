"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line with its timing; the lines are printed
at the end of the pytest run and when this file is executed directly.
"""

import time
from statistics import mean

import pytest

from defarg.arguments import Argument, all_arguments, arguments_for
from defarg.certainty import weigh_argument
from defarg.consequence import cumulativity_holds, right_weakening_holds, supraclassicality_holds
from defarg.dialectics import Dialectic, Mark, Status, mark_tree
from defarg.generate import theory_corpus
from defarg.lang import Literal, Rule, parse_literal, parse_rule, parse_theory
from defarg.preference import PreferencePolicy, compare
from conftest import ENGINE_PATH, NAMED_PATH
from oracles import LineOracle

SPEC = PreferencePolicy.specificity()
COUNT = PreferencePolicy.rule_count()
RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, seconds: float, limit: float | None, detail: str = ""):
    within = limit is None or seconds < limit
    status = "PASS" if ok and within else "FAIL"
    bound = f" (limit {limit:g} s)" if limit is not None else ""
    line = f"[{status}] {number}. {title}: {seconds:.2f} s{bound}"
    RESULTS.append(line + (f" - {detail}" if detail else ""))
    print(RESULTS[-1])
    assert ok, detail
    assert within, f"took {seconds:.2f} s, limit {limit} s"


def engine_setup():
    from defarg.cli import load_arguments

    theory = parse_theory(ENGINE_PATH.read_text(encoding="utf-8"))
    args, names = load_arguments(NAMED_PATH)
    return theory, {names[a]: a for a in args}


def test_1_engine_golden_suite():
    start = time.perf_counter()
    theory, named = engine_setup()
    five = Dialectic(theory, SPEC, arguments=list(named.values()), concordance=True)
    inv = {a: n for n, a in named.items()}

    def shape(tree):
        return (inv[tree.argument], tree.mark.value, tuple(shape(c) for c in tree.children))

    fuel = arguments_for(theory, parse_literal("fuel_ok"))
    checks = {
        "counts": (len(theory.strict), len(theory.defeasible)) == (5, 11),
        "A": named["A"] in arguments_for(theory, parse_literal("engine_ok")),
        "B": arguments_for(theory, parse_literal("~fuel_ok")) == {named["B"]},
        "C": arguments_for(theory, parse_literal("~low_speed")) == {named["C"]},
        "E": named["E"] in arguments_for(theory, parse_literal("~engine_ok")),
        "fuel_ok": len(fuel) == 2 and named["D"] in fuel,
        "defeaters(A)": {inv[a] for a in five.defeaters_of(named["A"])} == {"B", "E"},
        "defeaters(B)": {inv[a] for a in five.defeaters_of(named["B"])} == {"C", "D"},
        "exhaustive": shape(mark_tree(five.build_tree(named["A"])))
        == ("A", "D", (("E", "U", ()), ("B", "D", (("D", "U", ()), ("C", "U", ()))))),
        "pruned": shape(five.pruned_tree(named["A"])) == ("A", "D", (("E", "U", ()),)),
        "verdict": five.warrant_topdown(parse_literal("engine_ok")).status is Status.NOT_WARRANTED
        and Dialectic(theory, SPEC).warrant_topdown(parse_literal("engine_ok")).status
        is Status.NOT_WARRANTED,
    }
    failed = [k for k, v in checks.items() if not v]
    record(1, "engine golden suite", not failed, time.perf_counter() - start, 1.0,
           f"failed: {failed}" if failed else f"{len(checks)} checks")


def test_2_derivation_trace():
    start = time.perf_counter()
    theory, named = engine_setup()
    inv = {a: n for n, a in named.items()}
    sat = Dialectic(theory, SPEC, arguments=list(named.values()), concordance=True).saturate()
    expected = [
        ("Intro-1D", "A", "*"), ("Intro-1D", "B", "*"), ("Intro-1D", "C", "*"),
        ("Intro-1D", "D", "*"), ("Intro-1D", "E", "*"), ("Intro-ND", "B", "*"),
        ("Intro-ND", "A", "*"), ("Mark-Atom", "E", "U"), ("Mark-1D", "A", "D"),
    ]
    seen = {(e.rule, inv[e.argument], e.mark.value) for e in sat.log}
    missing = [s for s in expected if s not in seen]
    final = [e for e in sat.log if e.path == (named["A"],) and e.mark is Mark.D]
    ok = not missing and len(final) == 1 and final[0].rule == "Mark-1D"
    record(2, "derivation trace", ok, time.perf_counter() - start, 1.0,
           f"missing {missing}" if missing else f"{len(sat.log)} formulas, 9 steps found")


def test_3_three_engines_and_line_oracle():
    start = time.perf_counter()
    corpus = theory_corpus(2024, 500)
    assert all(len(t.atoms()) <= 8 and len(t.rules) <= 12 for t in corpus)
    checked = disagreements = 0
    for t in corpus:
        for policy in (SPEC, COUNT):
            d = Dialectic(t, policy)
            sat = d.saturate()
            oracle = LineOracle(t, policy, compare)
            for a in d.universe:
                checked += 1
                marks = {
                    mark_tree(d.build_tree(a)).mark is Mark.U,
                    d.pruned_tree(a).mark is Mark.U,
                    sat.root_mark(a) is Mark.U,
                    oracle.undefeated(a),
                }
                disagreements += len(marks) > 1
    record(3, "three engines and line oracle", disagreements == 0, time.perf_counter() - start,
           60.0, f"{checked} arguments, {disagreements} disagreements")


def test_4_strict_inclusions():
    start = time.perf_counter()
    theory, _ = engine_setup()
    corpus = theory_corpus(404, 200) + [theory]
    failures = [msg for t in corpus for ok, msg in [supraclassicality_holds(t, SPEC)] if not ok]
    record(4, "strict consequences included", not failures, time.perf_counter() - start, 30.0,
           failures[0] if failures else f"{len(corpus)} theories")


def test_5_argument_cumulativity():
    start = time.perf_counter()
    corpus = theory_corpus(505, 200)
    checked, failures = 0, []
    for t in corpus:
        for a in all_arguments(t):
            checked += 1
            ok, msg = cumulativity_holds(t, a)
            if not ok:
                failures.append(msg)
    record(5, "argument-level cumulativity", not failures, time.perf_counter() - start, None,
           failures[0] if failures else f"{checked} re-assertions on 200 theories")


def test_6_right_weakening():
    start = time.perf_counter()
    corpus = theory_corpus(606, 200)
    failures = [msg for t in corpus for ok, msg in [right_weakening_holds(t, SPEC)] if not ok]
    record(6, "right weakening", not failures, time.perf_counter() - start, None,
           failures[0] if failures else "200 theories")


def test_7_pruning_economy():
    start = time.perf_counter()
    theory, named = engine_setup()
    five = Dialectic(theory, SPEC, arguments=list(named.values()), concordance=True)
    golden = (mark_tree(five.build_tree(named["A"])).size(), five.pruned_tree(named["A"]).size())
    full, pruned = [], []
    for t in theory_corpus(707, 300):
        d = Dialectic(t, SPEC)
        for a in d.universe:
            full.append(d.build_tree(a).size())
            pruned.append(d.pruned_tree(a).size())
    ok = golden == (5, 2) and mean(pruned) <= mean(full)
    record(7, "pruning economy", ok, time.perf_counter() - start, None,
           f"golden {golden[0]} -> {golden[1]} nodes, corpus mean {mean(full):.2f} -> {mean(pruned):.2f}")


def test_8_certainty_factors():
    import random

    start = time.perf_counter()
    theory, named = engine_setup()
    ann = {r: 0.9 for r in theory.defeasible}
    ann[parse_rule("~engine_ok -< fuel_ok, oil_ok, heat")] = 0.95
    policy = PreferencePolicy.certainty(ann)
    verdict = Dialectic(theory, policy).warrant_topdown(parse_literal("engine_ok")).status
    rng = random.Random(8)
    rules = [Rule(Literal(f"h{i}"), (Literal("a"),), True) for i in range(16)]
    monotone = 0
    for _ in range(1000):
        cfs = {r: rng.uniform(0.01, 0.99) for r in rules}
        small = frozenset(rng.sample(rules, rng.randint(0, 8)))
        big = small | frozenset(rng.sample(rules, rng.randint(0, 8)))
        a, b = Argument(small, Literal("x")), Argument(big, Literal("x"))
        monotone += weigh_argument(b, cfs).cf <= weigh_argument(a, cfs).cf
    ok = verdict is Status.NOT_WARRANTED and monotone == 1000
    record(8, "certainty-factor extension", ok, time.perf_counter() - start, None,
           f"engine_ok {verdict.value}, monotone on {monotone}/1000 supports")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
