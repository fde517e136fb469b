"""Certainty factors on arguments.

Strict knowledge carries factor 1; each defeasible rule carries a factor in
(0, 1).  An argument's factor folds its rules' factors with a t-norm, ``min``
by default, ``product`` on request.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .arguments import Argument
from .lang import Rule
from .preference import MissingAnnotation, Verdict

__all__ = ["WeightedArgument", "weigh_argument", "cf_preference", "fold"]


@dataclass(frozen=True)
class WeightedArgument:
    argument: Argument
    cf: float

    def __post_init__(self) -> None:
        if not 0.0 < self.cf <= 1.0:
            raise ValueError(f"certainty factor {self.cf} outside (0, 1]")


def fold(values, propagation: str = "min") -> float:
    values = list(values)
    if not values:
        return 1.0
    if propagation == "min":
        return min(values)
    if propagation == "product":
        return math.prod(values)
    raise ValueError(f"unknown propagation {propagation!r}")


def weigh_argument(
    arg: Argument, annotations: Mapping[Rule, float], propagation: str = "min"
) -> WeightedArgument:
    values = []
    for rule in arg.rules:
        if rule not in annotations:
            raise MissingAnnotation(rule)
        cf = annotations[rule]
        if not 0.0 < cf < 1.0:
            raise ValueError(f"certainty factor {cf} of '{rule}' outside (0, 1)")
        values.append(cf)
    return WeightedArgument(arg, fold(values, propagation))


def cf_preference(a: WeightedArgument, b: WeightedArgument, epsilon: float = 1e-9) -> Verdict:
    """Total preorder on certainty: higher factor wins, ties within epsilon."""
    if abs(a.cf - b.cf) <= epsilon:
        return Verdict.EQUIVALENT
    return Verdict.STRICTLY_PREFERRED if a.cf > b.cf else Verdict.STRICTLY_DISPREFERRED
