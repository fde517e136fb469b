"""Consequence operators over a theory and checks of their properties.

``th_sld`` collects what the strict rules alone derive, ``c_arg`` every
minimal argument and ``c_war`` every warranted literal.  Materialising them
is exponential, so :func:`check_limits` refuses theories above the
configured size.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field

from .arguments import Argument, all_arguments, arguments_for
from .dialectics import Dialectic, Status
from .generate import TheoryShape, random_theory
from .lang import Literal, Rule, Theory, closure
from .preference import PreferencePolicy

__all__ = [
    "Operator",
    "ConsequenceSet",
    "PropertyResult",
    "PropertyReport",
    "SampleBudgetExceeded",
    "TheoryTooLarge",
    "th_sld",
    "c_arg",
    "c_war",
    "check_properties",
    "cumulativity_holds",
    "right_weakening_holds",
    "supraclassicality_holds",
    "search_warrant_noncumulativity",
]

MAX_ATOMS = 12
MAX_RULES = 16
MAX_SAMPLES = 10_000


class Operator(enum.Enum):
    TH_SLD = "sld"
    C_ARG = "arg"
    C_WAR = "war"


class SampleBudgetExceeded(ValueError):
    pass


class TheoryTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ConsequenceSet:
    operator: Operator
    members: frozenset[tuple[frozenset[Rule], Literal]]

    def literals(self) -> set[Literal]:
        return {lit for _, lit in self.members}

    def to_json(self) -> list:
        rows = sorted(
            self.members, key=lambda m: (str(m[1]), sorted(str(r) for r in m[0]))
        )
        if self.operator is Operator.C_ARG:
            return [Argument(label, lit).to_json() for label, lit in rows]
        return [str(lit) for _, lit in rows]


def check_limits(theory: Theory, max_atoms: int = MAX_ATOMS, max_rules: int = MAX_RULES) -> None:
    if len(theory.atoms()) > max_atoms or len(theory.rules) > max_rules:
        raise TheoryTooLarge(
            f"theory has {len(theory.atoms())} atoms and {len(theory.rules)} rules; "
            f"materialisation is limited to {max_atoms} atoms and {max_rules} rules"
        )


def th_sld(theory: Theory) -> ConsequenceSet:
    members = frozenset((frozenset(), lit) for lit in closure(theory.strict))
    return ConsequenceSet(Operator.TH_SLD, members)


def c_arg(theory: Theory) -> ConsequenceSet:
    members = frozenset((a.support, a.conclusion) for a in all_arguments(theory))
    return ConsequenceSet(Operator.C_ARG, members)


def c_war(theory: Theory, policy: PreferencePolicy | None = None, **options) -> ConsequenceSet:
    d = Dialectic(theory, policy, **options)
    members = frozenset(
        (frozenset(), lit)
        for lit in theory.literals()
        if d.warrant_topdown(lit).status is Status.WARRANTED
    )
    return ConsequenceSet(Operator.C_WAR, members)


# --- properties ---------------------------------------------------------------


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int = 0
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked, "detail": self.detail}


@dataclass
class PropertyReport:
    results: list[PropertyResult] = field(default_factory=list)
    seed: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "seed": self.seed,
            "properties": [r.to_json() for r in self.results],
            "notes": list(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def supraclassicality_holds(theory: Theory, policy: PreferencePolicy | None = None, **options) -> tuple[bool, str]:
    strict = th_sld(theory).literals()
    missing_arg = strict - c_arg(theory).literals()
    missing_war = strict - c_war(theory, policy, **options).literals()
    if missing_arg or missing_war:
        return False, (
            f"not arguable: {sorted(map(str, missing_arg))}; "
            f"not warranted: {sorted(map(str, missing_war))}"
        )
    return True, ""


def cumulativity_holds(theory: Theory, extra: Argument, goals: list[Literal] | None = None) -> tuple[bool, str]:
    """Asserting an already derivable argument as a labelled unit changes no argument set."""
    extended = theory.with_derived(extra.support, extra.conclusion)
    for goal in goals if goals is not None else theory.literals():
        before = arguments_for(theory, goal)
        after = arguments_for(extended, goal)
        if before != after:
            return False, f"adding {extra} changes the arguments for {goal}"
    return True, ""


def right_weakening_holds(theory: Theory, policy: PreferencePolicy | None = None, **options) -> tuple[bool, str]:
    links = [r for r in theory.strict if len(r.body) == 1]
    for arg in all_arguments(theory):
        for rule in links:
            if rule.body[0] != arg.conclusion:
                continue
            if not any(b.support <= arg.support for b in arguments_for(theory, rule.head)):
                return False, f"{arg} gives no argument for {rule.head} through '{rule}'"
    warranted = c_war(theory, policy, **options).literals()
    for rule in links:
        if rule.body[0] in warranted and rule.head not in warranted:
            return False, f"{rule.body[0]} is warranted but {rule.head} is not ('{rule}')"
    return True, ""


def search_warrant_noncumulativity(
    theories: list[Theory], policy: PreferencePolicy | None = None
) -> tuple[Theory, Literal, Literal] | None:
    """Look for a theory where adding a warranted literal as a strict fact
    changes the warrant status of another literal."""
    for theory in theories:
        before = c_war(theory, policy).literals()
        for lit in sorted(before):
            if any(r.head == lit and not r.body for r in theory.strict):
                continue
            grown = Theory(theory.strict | {Rule(lit)}, theory.defeasible, theory.annotations)
            after = c_war(grown, policy).literals()
            changed = sorted(before ^ after)
            if changed:
                return theory, lit, changed[0]
    return None


def check_properties(
    theory: Theory,
    policy: PreferencePolicy | None = None,
    samples: int = 50,
    seed: int = 0,
    **options,
) -> PropertyReport:
    """Cumulativity, Horn supraclassicality and right weakening on ``theory``,
    plus a seeded search for a theory where warrant is not cumulative."""
    if samples > MAX_SAMPLES:
        raise SampleBudgetExceeded(f"{samples} samples exceed the limit of {MAX_SAMPLES}")
    check_limits(theory)
    rng = random.Random(seed)
    report = PropertyReport(seed=seed)

    args = [a for a in all_arguments(theory)]
    chosen = args if len(args) <= samples else rng.sample(args, samples)
    failures = [msg for a in chosen for ok, msg in [cumulativity_holds(theory, a)] if not ok]
    report.results.append(
        PropertyResult("cumulativity", not failures, len(chosen), "; ".join(failures[:3]))
    )

    ok, msg = supraclassicality_holds(theory, policy, **options)
    report.results.append(PropertyResult("supraclassicality", ok, 1, msg))

    ok, msg = right_weakening_holds(theory, policy, **options)
    report.results.append(PropertyResult("right_weakening", ok, 1, msg))

    corpus = [random_theory(rng, TheoryShape(atoms=4, strict=3, defeasible=6)) for _ in range(samples)]
    witness = search_warrant_noncumulativity(corpus, policy)
    if witness is None:
        report.notes.append(
            f"no theory among {samples} samples where warrant fails to be cumulative"
        )
    else:
        t, added, changed = witness
        report.notes.append(
            f"warrant is not cumulative: adding '{added}.' changes the status of {changed} in "
            + " ".join(f"{r}." for r in sorted(t.rules))
        )
    return report
