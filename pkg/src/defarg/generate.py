"""Seeded random theories for property and differential testing."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .lang import Literal, Rule, Theory, is_contradictory


@dataclass(frozen=True)
class TheoryShape:
    atoms: int = 6
    strict: int = 4
    defeasible: int = 6
    max_body: int = 3
    negation: float = 0.3
    facts: int = 2


def _literal(rng: random.Random, atoms: list[str], negation: float) -> Literal:
    return Literal(rng.choice(atoms), rng.random() < negation)


def random_theory(rng: random.Random, shape: TheoryShape = TheoryShape(), tries: int = 1000) -> Theory:
    """Draw a theory with a consistent strict part (rejection sampling).

    ``shape.strict`` counts strict rules including ``shape.facts`` facts;
    facts are always positive so that strict conflicts stay rare.
    """
    atoms = [f"a{i}" for i in range(shape.atoms)]
    for _ in range(tries):
        rules: set[Rule] = set()
        pool: list[Literal] = []
        for _ in range(min(shape.facts, shape.strict)):
            fact = Rule(Literal(rng.choice(atoms)))
            rules.add(fact)
            pool.append(fact.head)
        drafts = [False] * (shape.strict - shape.facts) + [True] * shape.defeasible
        rng.shuffle(drafts)
        for defeasible in drafts:
            rule = _random_rule(rng, atoms, shape, defeasible, pool)
            rules.add(rule)
            pool.append(rule.head)
        theory = Theory.from_rules(rules)
        if is_contradictory(theory.strict) is None:
            return theory
    raise RuntimeError("could not draw a theory with a consistent strict part")


def _random_rule(
    rng: random.Random, atoms: list[str], shape: TheoryShape, defeasible: bool, pool: list[Literal]
) -> Rule:
    # bodies lean on literals that already head a rule, so that rules fire
    head = _literal(rng, atoms, shape.negation)
    size = rng.randint(0 if defeasible else 1, shape.max_body)
    body = []
    for _ in range(size):
        if pool and rng.random() < 0.7:
            lit = rng.choice(pool)
        else:
            lit = _literal(rng, atoms, shape.negation)
        if lit.atom != head.atom and lit not in body:
            body.append(lit)
    if not body and not defeasible:
        return Rule(head)
    return Rule(head, tuple(body), defeasible)


def theory_corpus(seed: int, count: int, shape: TheoryShape | None = None) -> list[Theory]:
    """``count`` theories from one seed; shapes vary within the default bounds when none is given."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        if shape is None:
            atoms = rng.randint(3, 5)
            strict = rng.randint(1, 4)
            s = TheoryShape(
                atoms=atoms,
                strict=strict,
                defeasible=rng.randint(2, 12 - strict),
                facts=min(strict, rng.randint(1, 3)),
            )
        else:
            s = shape
        out.append(random_theory(rng, s))
    return out
