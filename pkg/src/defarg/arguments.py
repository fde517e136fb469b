"""Argument construction, subarguments and counterarguments.

An argument ``<A, h>`` is a minimal set ``A`` of defeasible rules that,
together with the strict rules, consistently derives ``h``.  Supports are
collected by backward chaining: every rule application unions the supports
of its body literals and adds the rule itself when it is defeasible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable

from .lang import Literal, Rule, Theory, closure, is_contradictory

__all__ = [
    "Argument",
    "CounterargumentHit",
    "arguments_for",
    "all_arguments",
    "is_consistent",
    "subarguments",
    "counterarguments",
    "contradicts",
]


@dataclass(frozen=True)
class Argument:
    support: frozenset[Rule]
    conclusion: Literal

    @property
    def rules(self) -> list[Rule]:
        return sorted(self.support)

    def support_text(self) -> str:
        return "{" + "; ".join(str(r) for r in self.rules) + "}"

    def sort_key(self) -> tuple[int, str, str]:
        return (len(self.support), self.support_text(), str(self.conclusion))

    def __lt__(self, other: Argument) -> bool:
        return self.sort_key() < other.sort_key()

    def to_json(self) -> dict:
        return {"support": [str(r) for r in self.rules], "conclusion": str(self.conclusion)}

    def __str__(self) -> str:
        return f"<{self.support_text()}, {self.conclusion}>"


@dataclass(frozen=True)
class CounterargumentHit:
    attacker: Argument
    target: Argument
    disagreement: Argument


def is_consistent(theory: Theory, support: Iterable[Rule]) -> bool:
    return is_contradictory(theory.strict | frozenset(support)) is None


def contradicts(theory: Theory, *literals: Literal) -> bool:
    """True when the strict rules plus ``literals`` as facts are contradictory."""
    return is_contradictory(theory.strict, literals) is not None


def _minimal(supports: Iterable[frozenset[Rule]]) -> set[frozenset[Rule]]:
    ordered = sorted(set(supports), key=len)
    kept: list[frozenset[Rule]] = []
    for s in ordered:
        if not any(k <= s for k in kept):
            kept.append(s)
    return set(kept)


@lru_cache(maxsize=256)
def _support_table(theory: Theory):
    by_head: dict[Literal, list[Rule]] = {}
    for rule in sorted(theory.rules):
        by_head.setdefault(rule.head, []).append(rule)
    derived: dict[Literal, list[frozenset[Rule]]] = {}
    for support, lit in theory.derived:
        derived.setdefault(lit, []).append(support)
    memo: dict[tuple[Literal, frozenset[Literal]], set[frozenset[Rule]]] = {}

    def supports(goal: Literal, above: frozenset[Literal]) -> set[frozenset[Rule]]:
        # Minimal label sets for goal; literals in `above` are still being
        # proved, so using them again would only build a cyclic proof.
        key = (goal, above)
        if key in memo:
            return memo[key]
        found: list[frozenset[Rule]] = []
        below = above | {goal}
        for rule in by_head.get(goal, ()):
            if any(b in below for b in rule.body):
                continue
            partial = {frozenset([rule]) if rule.defeasible else frozenset()}
            for b in rule.body:
                options = supports(b, below)
                if not options:
                    partial = set()
                    break
                partial = _minimal(p | o for p, o in product(partial, options))
            found.extend(partial)
        found.extend(derived.get(goal, ()))
        result = _minimal(found)
        memo[key] = result
        return result

    return supports


@lru_cache(maxsize=4096)
def _arguments_for(theory: Theory, goal: Literal) -> frozenset[Argument]:
    supports = _support_table(theory)(goal, frozenset())
    return frozenset(
        Argument(s, goal) for s in supports if is_consistent(theory, s)
    )


def arguments_for(theory: Theory, goal: Literal) -> frozenset[Argument]:
    """All minimal arguments for ``goal`` (empty when there is none)."""
    return _arguments_for(theory, goal)


def all_arguments(theory: Theory) -> list[Argument]:
    """Every minimal argument of the theory, sorted."""
    found: list[Argument] = []
    for lit in theory.literals():
        found.extend(arguments_for(theory, lit))
    return sorted(found)


@lru_cache(maxsize=4096)
def _subarguments(arg: Argument, theory: Theory) -> frozenset[Argument]:
    if not arg.support:
        return frozenset()
    reachable = closure(theory.strict | arg.support)
    found = set()
    for lit in reachable:
        for sub in arguments_for(theory, lit):
            if sub.support < arg.support:
                found.add(sub)
    return frozenset(found)


def subarguments(arg: Argument, theory: Theory) -> frozenset[Argument]:
    """Arguments whose support is a proper subset of ``arg.support``."""
    return _subarguments(arg, theory)


def counterarguments(
    theory: Theory, target: Argument, attackers: Iterable[Argument] | None = None
) -> set[CounterargumentHit]:
    """Every (attacker, disagreement) pair against ``target``.

    The disagreement point ranges over the proper subarguments of the target
    and the target itself.  ``attackers`` defaults to every argument of the
    theory.
    """
    if attackers is None:
        attackers = all_arguments(theory)
    points = [target, *subarguments(target, theory)]
    hits = set()
    for attacker in attackers:
        for point in points:
            if contradicts(theory, attacker.conclusion, point.conclusion):
                hits.add(CounterargumentHit(attacker, target, point))
    return hits
