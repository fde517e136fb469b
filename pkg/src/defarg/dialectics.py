"""Defeat, dialectical trees, marking and warrant.

Two warrant procedures live here.  :func:`warrant_topdown` builds the tree
depth first and can prune it alpha-beta style; :func:`warrant_bottomup`
saturates tree-shaped labels with the rules ``Intro-1D``, ``Intro-ND``,
``Mark-Atom``, ``Mark-1D`` and ``Mark-ND``.  They must agree on every query.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .arguments import Argument, all_arguments, arguments_for, counterarguments, is_consistent
from .lang import Literal, Theory
from .preference import PreferencePolicy, Verdict, compare

__all__ = [
    "Mark",
    "DefeatKind",
    "DefeatEdge",
    "DialecticalNode",
    "Status",
    "WarrantVerdict",
    "Dialectic",
    "SaturationBudgetExceeded",
    "TreeBudgetExceeded",
    "Saturation",
    "defeaters",
    "build_tree",
    "mark_tree",
    "warrant_topdown",
    "warrant_bottomup",
    "warrant_v1_closure",
    "render_label",
    "LogEntry",
    "bottomup_verdict",
]


class Mark(enum.Enum):
    STAR = "*"
    U = "U"
    D = "D"


class DefeatKind(enum.Enum):
    PROPER = "proper"
    BLOCKING = "blocking"


class Status(enum.Enum):
    WARRANTED = "Warranted"
    NOT_WARRANTED = "NotWarranted"
    NO_ARGUMENT = "NoArgument"


class SaturationBudgetExceeded(RuntimeError):
    def __init__(self, limit: int) -> None:
        super().__init__(f"label saturation exceeded its budget of {limit}")
        self.limit = limit


class TreeBudgetExceeded(RuntimeError):
    def __init__(self, limit: int) -> None:
        super().__init__(f"dialectical tree exceeded {limit} nodes")
        self.limit = limit


@dataclass(frozen=True)
class DefeatEdge:
    attacker: Argument
    target: Argument
    disagreement: Argument
    kind: DefeatKind


@dataclass
class DialecticalNode:
    argument: Argument
    children: list[DialecticalNode] = field(default_factory=list)
    mark: Mark = Mark.STAR

    def walk(self) -> Iterator[DialecticalNode]:
        yield self
        for child in self.children:
            yield from child.walk()

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def paths(self, prefix: tuple[Argument, ...] = ()) -> Iterator[tuple[Argument, ...]]:
        here = prefix + (self.argument,)
        yield here
        for child in self.children:
            yield from child.paths(here)

    def copy(self) -> DialecticalNode:
        return DialecticalNode(self.argument, [c.copy() for c in self.children], self.mark)

    def shape(self) -> tuple:
        """Hashable (argument, mark, children) form, children in order."""
        return (self.argument, self.mark, tuple(c.shape() for c in self.children))

    def to_json(self) -> dict:
        return {
            "argument": self.argument.to_json(),
            "mark": self.mark.value,
            "children": [c.to_json() for c in self.children],
        }


@dataclass
class WarrantVerdict:
    status: Status
    evidence: DialecticalNode | None = None
    argument: Argument | None = None
    trees: list[DialecticalNode] = field(default_factory=list)


class Dialectic:
    """Dialectical analysis of one theory under one preference policy.

    ``arguments`` restricts the arguments that may appear in trees (all
    minimal arguments by default).  ``equivalent_blocks`` (on by default)
    treats an equi-preferred counterargument as unrelated to its target, so
    it acts as a blocking defeater; switching it off leaves such pairs
    without any defeat.  ``concordance`` requires the arguments on each side
    of a line to be jointly consistent with the strict rules, and
    ``no_double_blocking`` forbids answering a blocking defeater with another
    blocking defeater.
    """

    def __init__(
        self,
        theory: Theory,
        policy: PreferencePolicy | None = None,
        *,
        arguments: Iterable[Argument] | None = None,
        equivalent_blocks: bool = True,
        concordance: bool = False,
        no_double_blocking: bool = False,
        node_budget: int = 1_000_000,
    ) -> None:
        self.theory = theory
        self.policy = policy or PreferencePolicy.specificity()
        self._universe = sorted(arguments) if arguments is not None else None
        self.equivalent_blocks = equivalent_blocks
        self.concordance = concordance
        self.no_double_blocking = no_double_blocking
        self.node_budget = node_budget
        self._defeaters: dict[Argument, list[DefeatEdge]] = {}

    @property
    def options(self) -> dict:
        """Keyword options that recreate this analysis on another call."""
        return {
            "arguments": self._universe,
            "equivalent_blocks": self.equivalent_blocks,
            "concordance": self.concordance,
            "no_double_blocking": self.no_double_blocking,
            "node_budget": self.node_budget,
        }

    @cached_property
    def universe(self) -> list[Argument]:
        if self._universe is not None:
            return self._universe
        return all_arguments(self.theory)

    def arguments_for(self, goal: Literal) -> list[Argument]:
        if self._universe is not None:
            return [a for a in self._universe if a.conclusion == goal]
        return sorted(arguments_for(self.theory, goal))

    # --- defeat ---------------------------------------------------------

    def _edge_kind(self, verdict: Verdict) -> DefeatKind | None:
        if verdict is Verdict.STRICTLY_PREFERRED:
            return DefeatKind.PROPER
        if verdict is Verdict.INCOMPARABLE:
            return DefeatKind.BLOCKING
        if verdict is Verdict.EQUIVALENT and self.equivalent_blocks:
            return DefeatKind.BLOCKING
        return None

    def defeat_edges(self, target: Argument) -> list[DefeatEdge]:
        if target not in self._defeaters:
            edges = []
            for hit in counterarguments(self.theory, target, self.universe):
                verdict = compare(self.policy, hit.attacker, hit.disagreement, self.theory)
                kind = self._edge_kind(verdict)
                if kind is not None:
                    edges.append(DefeatEdge(hit.attacker, target, hit.disagreement, kind))
            edges.sort(key=lambda e: (e.attacker.sort_key(), e.disagreement.sort_key(), e.kind.value))
            self._defeaters[target] = edges
        return self._defeaters[target]

    def defeat_kind(self, attacker: Argument, target: Argument) -> DefeatKind | None:
        kinds = {e.kind for e in self.defeat_edges(target) if e.attacker == attacker}
        if not kinds:
            return None
        return DefeatKind.PROPER if DefeatKind.PROPER in kinds else DefeatKind.BLOCKING

    def defeaters_of(self, target: Argument) -> list[Argument]:
        """Distinct defeaters, attacks on the conclusion itself first, then by size."""
        attacks_root: dict[Argument, bool] = {}
        for edge in self.defeat_edges(target):
            hit_root = edge.disagreement == target
            attacks_root[edge.attacker] = attacks_root.get(edge.attacker, False) or hit_root
        return sorted(attacks_root, key=lambda a: (not attacks_root[a], a.sort_key()))

    # --- acceptable argumentation lines ---------------------------------

    def acceptable_children(self, path: tuple[Argument, ...]) -> list[Argument]:
        """Defeaters of ``path[-1]`` that may extend the line ``path``."""
        last = path[-1]
        used = {a.support for a in path}
        result = []
        for cand in self.defeaters_of(last):
            if cand.support in used:
                continue
            if self.concordance:
                side = path[len(path) % 2 :: 2]
                joint = frozenset().union(cand.support, *(a.support for a in side))
                if not is_consistent(self.theory, joint):
                    continue
            if self.no_double_blocking and len(path) >= 2:
                if (
                    self.defeat_kind(last, path[-2]) is DefeatKind.BLOCKING
                    and self.defeat_kind(cand, last) is DefeatKind.BLOCKING
                ):
                    continue
            result.append(cand)
        return result

    # --- trees ----------------------------------------------------------

    def build_tree(self, root: Argument) -> DialecticalNode:
        """The exhaustive, unmarked dialectical tree rooted at ``root``."""
        count = 0

        def grow(path: tuple[Argument, ...]) -> DialecticalNode:
            nonlocal count
            count += 1
            if count > self.node_budget:
                raise TreeBudgetExceeded(self.node_budget)
            node = DialecticalNode(path[-1])
            for child in self.acceptable_children(path):
                node.children.append(grow(path + (child,)))
            return node

        return grow((root,))

    def pruned_tree(self, root: Argument) -> DialecticalNode:
        """Depth-first marked tree that stops at the first undefeated child."""
        count = 0

        def grow(path: tuple[Argument, ...]) -> DialecticalNode:
            nonlocal count
            count += 1
            if count > self.node_budget:
                raise TreeBudgetExceeded(self.node_budget)
            node = DialecticalNode(path[-1], mark=Mark.U)
            for child in self.acceptable_children(path):
                sub = grow(path + (child,))
                node.children.append(sub)
                if sub.mark is Mark.U:
                    node.mark = Mark.D
                    break
            return node

        return grow((root,))

    def warrant_topdown(self, goal: Literal, prune: bool = True) -> WarrantVerdict:
        candidates = self.arguments_for(goal)
        if not candidates:
            return WarrantVerdict(Status.NO_ARGUMENT)
        trees = []
        for arg in candidates:
            tree = self.pruned_tree(arg) if prune else mark_tree(self.build_tree(arg))
            trees.append(tree)
            if tree.mark is Mark.U:
                return WarrantVerdict(Status.WARRANTED, tree, arg, trees)
        return WarrantVerdict(Status.NOT_WARRANTED, trees[0], candidates[0], trees)

    def saturate(self, budget: int = 100_000, max_rounds: int | None = None) -> Saturation:
        sat = Saturation(self, budget)
        sat.run(max_rounds)
        return sat


def mark_tree(tree: DialecticalNode) -> DialecticalNode:
    """Return a copy marked as an AND-OR tree: leaves U, D iff some child is U."""
    children = [mark_tree(c) for c in tree.children]
    mark = Mark.D if any(c.mark is Mark.U for c in children) else Mark.U
    return DialecticalNode(tree.argument, children, mark)


# --- bottom-up label saturation ---------------------------------------------


@dataclass(frozen=True)
class LogEntry:
    step: int
    round: int
    rule: str
    path: tuple[Argument, ...]
    mark: Mark
    premises: tuple[int, ...] = ()

    @property
    def argument(self) -> Argument:
        return self.path[-1]


class Saturation:
    """Closure of the dialectical-label calculus.

    Each tree node is addressed by its argumentation line (the path from a
    root).  A line first gets a singleton label ``T*(A)`` (``Intro-1D``); once
    the labels of all acceptable extensions are final they are grafted below
    it (``Intro-ND``), which makes the label final.  Marks then flow upwards:
    ``Mark-Atom`` for final childless labels, ``Mark-1D`` as soon as one
    child is ``U`` and ``Mark-ND`` once every child is ``D``.

    Rules fire in rounds; the singleton root labels form stage ``Cn^0`` and
    every formula derived in the ``k``-th later round belongs to ``Cn^k``.  Labels are rooted at every argument of the universe.
    """

    def __init__(self, dialectic: Dialectic, budget: int = 100_000) -> None:
        self.dialectic = dialectic
        self.budget = budget
        self.log: list[LogEntry] = []
        self.children: dict[tuple[Argument, ...], list[tuple[Argument, ...]]] = {}
        self.final: set[tuple[Argument, ...]] = set()
        self.marks: dict[tuple[Argument, ...], Mark] = {}
        self.where: dict[tuple, int] = {}
        self.rounds = 0
        self.saturated = False

    def _emit(self, rule: str, path, mark: Mark, premises=()) -> None:
        if len(self.log) >= self.budget:
            raise SaturationBudgetExceeded(self.budget)
        entry = LogEntry(len(self.log) + 1, self.rounds - 1, rule, path, mark, tuple(premises))
        self.log.append(entry)
        self.where[(rule, path)] = entry.step

    def _step(self) -> bool:
        d = self.dialectic
        pending: list[tuple] = []
        if self.rounds == 1:
            for arg in d.universe:
                pending.append(("Intro-1D", (arg,), Mark.STAR, ()))
        for path in list(self.children):
            if path in self.final:
                continue
            kids = self.children[path]
            if not kids:
                self.final.add(path)
                continue
            for kid in kids:
                if kid not in self.children:
                    pending.append(("Intro-1D", kid, Mark.STAR, ()))
            if all(k in self.final for k in kids):
                premises = [self.where.get(("Intro-1D", path), 0)]
                premises += [self._final_step(k) for k in kids]
                pending.append(("Intro-ND", path, Mark.STAR, premises))
        for path in sorted(self.final, key=_path_key):
            if path in self.marks:
                continue
            kids = self.children[path]
            if not kids:
                pending.append(("Mark-Atom", path, Mark.U, (self._final_step(path),)))
                continue
            undefeated = [k for k in kids if self.marks.get(k) is Mark.U]
            if undefeated:
                premises = (self._final_step(path), self._mark_step(undefeated[0]))
                pending.append(("Mark-1D", path, Mark.D, premises))
            elif all(self.marks.get(k) is Mark.D for k in kids):
                premises = (self._final_step(path), *(self._mark_step(k) for k in kids))
                pending.append(("Mark-ND", path, Mark.U, premises))
        if not pending:
            return False
        seen = set()
        for rule, path, mark, premises in pending:
            if (rule, path) in seen:
                continue
            seen.add((rule, path))
            self._emit(rule, path, mark, premises)
            if rule == "Intro-1D":
                self.children[path] = [path + (c,) for c in d.acceptable_children(path)]
            elif rule == "Intro-ND":
                self.final.add(path)
            else:
                self.marks[path] = mark
        return True

    def _final_step(self, path) -> int:
        return self.where.get(("Intro-ND", path)) or self.where.get(("Intro-1D", path), 0)

    def _mark_step(self, path) -> int:
        for rule in ("Mark-Atom", "Mark-1D", "Mark-ND"):
            if (rule, path) in self.where:
                return self.where[(rule, path)]
        return 0

    def run(self, max_rounds: int | None = None) -> None:
        while max_rounds is None or self.rounds < max_rounds:
            self.rounds += 1
            if not self._step():
                self.rounds -= 1
                self.saturated = True
                return
        # one more look: nothing left to do means we are saturated anyway
        self.saturated = False

    def stage(self, k: int) -> list[LogEntry]:
        """Formulas in ``Cn^k``."""
        return [e for e in self.log if e.round <= k]

    def root_mark(self, arg: Argument) -> Mark | None:
        return self.marks.get((arg,))

    def label(self, path: tuple[Argument, ...]) -> DialecticalNode:
        """The current label at ``path`` as a tree (unmarked parts are ``*``)."""
        node = DialecticalNode(path[-1], mark=self.marks.get(path, Mark.STAR))
        if path in self.final:
            node.children = [self.label(k) for k in self.children[path]]
        return node

    def render(self, entry: LogEntry) -> str:
        return render_label(self.label_at(entry))

    def label_at(self, entry: LogEntry) -> DialecticalNode:
        """The label produced by ``entry``, as it stood when derived."""
        return self._label_at(entry.path, entry.step, top=True)

    def _label_at(self, path, step: int, top: bool = False) -> DialecticalNode:
        mark = Mark.STAR
        for rule in ("Mark-Atom", "Mark-1D", "Mark-ND"):
            s = self.where.get((rule, path))
            if s is not None and s <= step:
                mark = self.marks[path]
        node = DialecticalNode(path[-1], mark=mark)
        nd = self.where.get(("Intro-ND", path))
        if nd is not None and nd <= step:
            node.children = [self._label_at(k, step) for k in self.children[path]]
        return node


def _path_key(path: tuple[Argument, ...]) -> tuple:
    return tuple(a.sort_key() for a in path)


def render_label(node: DialecticalNode, names: dict[Argument, str] | None = None) -> str:
    name = names.get(node.argument) if names else None
    name = name or node.argument.support_text()
    if not node.children:
        return f"T{node.mark.value}({name})"
    inner = ", ".join(render_label(c, names) for c in node.children)
    return f"T{node.mark.value}({name}, {inner})"


# --- module-level operations ------------------------------------------------


def defeaters(theory: Theory, policy: PreferencePolicy, target: Argument, **options) -> set[DefeatEdge]:
    return set(Dialectic(theory, policy, **options).defeat_edges(target))


def build_tree(theory: Theory, policy: PreferencePolicy, root: Argument, **options) -> DialecticalNode:
    return Dialectic(theory, policy, **options).build_tree(root)


def warrant_topdown(
    theory: Theory, policy: PreferencePolicy, goal: Literal, prune: bool = True, **options
) -> WarrantVerdict:
    return Dialectic(theory, policy, **options).warrant_topdown(goal, prune)


def bottomup_verdict(sat: Saturation, goal: Literal) -> WarrantVerdict:
    d = sat.dialectic
    candidates = d.arguments_for(goal)
    if not candidates:
        return WarrantVerdict(Status.NO_ARGUMENT)
    trees = [sat.label((a,)) for a in candidates]
    for arg, tree in zip(candidates, trees):
        if sat.root_mark(arg) is Mark.U:
            return WarrantVerdict(Status.WARRANTED, tree, arg, trees)
    return WarrantVerdict(Status.NOT_WARRANTED, trees[0], candidates[0], trees)


def warrant_bottomup(
    theory: Theory, policy: PreferencePolicy, goal: Literal, budget: int = 100_000, **options
) -> WarrantVerdict:
    sat = Dialectic(theory, policy, **options).saturate(budget)
    return bottomup_verdict(sat, goal)


def warrant_v1_closure(
    theory: Theory,
    policy: PreferencePolicy,
    goal: Literal,
    k_max: int | None = None,
    budget: int = 100_000,
    **options,
) -> WarrantVerdict:
    """Warrant read off the staged closures ``Cn^k``.

    ``goal`` is warranted when some stage holds a ``U`` label rooted in an
    argument for it and no later stage adds a ``D`` label for that root.
    """
    d = Dialectic(theory, policy, **options)
    candidates = d.arguments_for(goal)
    if not candidates:
        return WarrantVerdict(Status.NO_ARGUMENT)
    sat = d.saturate(budget, max_rounds=None if k_max is None else k_max + 1)
    roots = {(a,) for a in candidates}
    stages: dict[int, list[LogEntry]] = {}
    for e in sat.log:
        if e.path in roots and e.mark is not Mark.STAR:
            stages.setdefault(e.round, []).append(e)
    for k in sorted(stages):
        for e in stages[k]:
            if e.mark is not Mark.U:
                continue
            later = [
                f for j, entries in stages.items() if j > k for f in entries
                if f.path == e.path and f.mark is Mark.D
            ]
            if not later:
                return WarrantVerdict(Status.WARRANTED, sat.label(e.path), e.path[0])
    if not sat.saturated and any(sat.root_mark(a) is None for a in candidates):
        raise SaturationBudgetExceeded(k_max or 0)
    return WarrantVerdict(Status.NOT_WARRANTED, sat.label((candidates[0],)), candidates[0])
