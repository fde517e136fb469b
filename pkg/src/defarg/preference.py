"""Preference orders between arguments.

Specificity is decided by brute force over activation sets.  Every subset
``H`` of the theory's body literals is one bit position of a Python int, so
"which sets ``H`` let these rules derive ``h``" is a single big-int bitmask
obtained by forward chaining on masks instead of on truth values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .arguments import Argument
from .lang import Literal, Rule, Theory

__all__ = [
    "Verdict",
    "PolicyKind",
    "PreferencePolicy",
    "ActivationSpaceExceeded",
    "MissingAnnotation",
    "compare",
    "activation_literals",
]


class Verdict(enum.Enum):
    STRICTLY_PREFERRED = "StrictlyPreferred"
    STRICTLY_DISPREFERRED = "StrictlyDispreferred"
    EQUIVALENT = "Equivalent"
    INCOMPARABLE = "Incomparable"

    def flipped(self) -> Verdict:
        return _FLIP[self]


_FLIP = {
    Verdict.STRICTLY_PREFERRED: Verdict.STRICTLY_DISPREFERRED,
    Verdict.STRICTLY_DISPREFERRED: Verdict.STRICTLY_PREFERRED,
    Verdict.EQUIVALENT: Verdict.EQUIVALENT,
    Verdict.INCOMPARABLE: Verdict.INCOMPARABLE,
}


class PolicyKind(enum.Enum):
    SPECIFICITY = "specificity"
    RULE_COUNT = "rulecount"
    CERTAINTY = "cf"


class ActivationSpaceExceeded(RuntimeError):
    def __init__(self, size: int, cap: int) -> None:
        super().__init__(f"{size} activation literals exceed the cap of {cap}")
        self.size = size
        self.cap = cap


class MissingAnnotation(KeyError):
    def __init__(self, rule: Rule) -> None:
        super().__init__(f"no certainty factor for defeasible rule '{rule}'")
        self.rule = rule


@dataclass(frozen=True)
class PreferencePolicy:
    kind: PolicyKind = PolicyKind.SPECIFICITY
    cap: int = 20
    annotations: Mapping[Rule, float] = field(
        default_factory=lambda: MappingProxyType({}), compare=False, hash=False
    )
    propagation: str = "min"
    epsilon: float = 1e-9

    @classmethod
    def specificity(cls, cap: int = 20) -> PreferencePolicy:
        return cls(PolicyKind.SPECIFICITY, cap=cap)

    @classmethod
    def rule_count(cls) -> PreferencePolicy:
        return cls(PolicyKind.RULE_COUNT)

    @classmethod
    def certainty(
        cls, annotations: Mapping[Rule, float], propagation: str = "min", epsilon: float = 1e-9
    ) -> PreferencePolicy:
        if propagation not in ("min", "product"):
            raise ValueError(f"unknown propagation {propagation!r}")
        return cls(
            PolicyKind.CERTAINTY,
            annotations=MappingProxyType(dict(annotations)),
            propagation=propagation,
            epsilon=epsilon,
        )

    @classmethod
    def named(cls, name: str, theory: Theory | None = None) -> PreferencePolicy:
        if name == "specificity":
            return cls.specificity()
        if name == "rulecount":
            return cls.rule_count()
        if name == "cf":
            return cls.certainty(theory.annotations if theory is not None else {})
        raise ValueError(f"unknown preference {name!r}")

    def cache_key(self) -> tuple:
        return (
            self.kind,
            self.cap,
            tuple(sorted((str(r), v) for r, v in self.annotations.items())),
            self.propagation,
            self.epsilon,
        )


def compare(policy: PreferencePolicy, a: Argument, b: Argument, theory: Theory) -> Verdict:
    """How ``a`` relates to ``b`` under ``policy``."""
    if policy.kind is PolicyKind.SPECIFICITY:
        return _compare_specificity(a, b, theory, policy.cap)
    if policy.kind is PolicyKind.RULE_COUNT:
        return _compare_rule_count(a, b)
    from .certainty import cf_preference, weigh_argument

    return cf_preference(
        weigh_argument(a, policy.annotations, policy.propagation),
        weigh_argument(b, policy.annotations, policy.propagation),
        policy.epsilon,
    )


def _compare_rule_count(a: Argument, b: Argument) -> Verdict:
    if len(a.support) < len(b.support):
        return Verdict.STRICTLY_PREFERRED
    if len(a.support) > len(b.support):
        return Verdict.STRICTLY_DISPREFERRED
    return Verdict.EQUIVALENT if a.support == b.support else Verdict.INCOMPARABLE


# --- specificity -----------------------------------------------------------


def activation_literals(theory: Theory) -> list[Literal]:
    """Literals that may appear in an activation set: those in rule bodies."""
    return theory.body_literals()


@lru_cache(maxsize=64)
def _activation_space(theory: Theory, cap: int):
    lits = activation_literals(theory)
    if len(lits) > cap:
        raise ActivationSpaceExceeded(len(lits), cap)
    n = len(lits)
    size = 1 << n
    full = (1 << size) - 1
    masks = {}
    for i, lit in enumerate(lits):
        # bit j of the mask is set iff subset j contains literal i
        half = 1 << i
        block = ((1 << half) - 1) << half
        period = half << 1
        pattern, length = block, period
        while length < size:
            pattern |= pattern << length
            length <<= 1
        masks[lit] = pattern & full
    rules = [r for r in theory.strict if r.body]
    return masks, full, rules


def _derivation_masks(rules: list[Rule], base: dict[Literal, int], full: int) -> dict[Literal, int]:
    value = dict(base)
    changed = True
    while changed:
        changed = False
        for rule in rules:
            m = full
            for b in rule.body:
                m &= value.get(b, 0)
                if not m:
                    break
            old = value.get(rule.head, 0)
            if m & ~old:
                value[rule.head] = old | m
                changed = True
    return value


@lru_cache(maxsize=8192)
def _activation(arg: Argument, theory: Theory, cap: int) -> tuple[int, int]:
    """(sets that derive the conclusion, sets that do so non-trivially)."""
    masks, full, strict_rules = _activation_space(theory, cap)
    trivial = _derivation_masks(strict_rules, masks, full).get(arg.conclusion, 0)
    derives = _derivation_masks(strict_rules + sorted(arg.support), masks, full).get(
        arg.conclusion, 0
    )
    return derives, derives & ~trivial


def at_least_as_specific(a: Argument, b: Argument, theory: Theory, cap: int = 20) -> bool:
    """Every set that activates ``a`` non-trivially also lets ``b`` derive its conclusion."""
    _, active_a = _activation(a, theory, cap)
    derives_b, _ = _activation(b, theory, cap)
    return active_a & ~derives_b == 0


def _compare_specificity(a: Argument, b: Argument, theory: Theory, cap: int) -> Verdict:
    # strict arguments are never activated non-trivially, which would make
    # them vacuously as specific as anything; rank them above all others
    if not a.support or not b.support:
        if not a.support and not b.support:
            return Verdict.EQUIVALENT
        return Verdict.STRICTLY_PREFERRED if not a.support else Verdict.STRICTLY_DISPREFERRED
    ab = at_least_as_specific(a, b, theory, cap)
    ba = at_least_as_specific(b, a, theory, cap)
    if ab and ba:
        return Verdict.EQUIVALENT
    if ab:
        return Verdict.STRICTLY_PREFERRED
    if ba:
        return Verdict.STRICTLY_DISPREFERRED
    return Verdict.INCOMPARABLE

