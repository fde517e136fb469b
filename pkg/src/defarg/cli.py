"""Command-line front end.

Exit codes: 0 ok, 1 syntax error, 2 contradictory strict part, 3 engines
disagree, 4 budget exceeded, 5 property failure.
"""

from __future__ import annotations

import argparse
import enum
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .arguments import Argument
from .consequence import Operator, c_arg, c_war, check_properties, th_sld
from .dialectics import (
    Dialectic,
    SaturationBudgetExceeded,
    Status,
    TreeBudgetExceeded,
    bottomup_verdict,
    mark_tree,
)
from .export import render
from .lang import (
    ContradictoryStrictPart,
    Literal,
    Theory,
    TheorySyntaxError,
    parse_literal,
    parse_rule,
    parse_theory,
)
from .preference import ActivationSpaceExceeded, MissingAnnotation, PreferencePolicy

EXIT_OK, EXIT_SYNTAX, EXIT_CONTRADICTORY, EXIT_MISMATCH, EXIT_BUDGET, EXIT_PROPERTY = range(6)


class Answer(enum.Enum):
    YES = "YES"
    NO = "NO"
    UNDECIDED = "UNDECIDED"
    UNKNOWN = "UNKNOWN"


@dataclass
class QueryAnswer:
    literal: Literal
    status: Answer


class EngineMismatch(RuntimeError):
    pass


def load_arguments(path: str | Path) -> tuple[list[Argument], dict[Argument, str]]:
    """Read a JSON list of ``{"support": [...], "conclusion": ..., "name"?: ...}``."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    args, names = [], {}
    for item in data:
        arg = Argument(
            frozenset(parse_rule(r) for r in item["support"]), parse_literal(item["conclusion"])
        )
        args.append(arg)
        if "name" in item:
            names[arg] = item["name"]
    return args, names


def answer_query(
    dialectic: Dialectic, literal: Literal, engine: str = "topdown", prune: bool = True,
    budget: int = 100_000,
):
    """Four-valued answer plus the warrant verdict for ``literal`` itself."""
    theory = dialectic.theory
    if literal.atom not in theory.atoms():
        return QueryAnswer(literal, Answer.UNKNOWN), None

    def decide(goal: Literal):
        verdicts = []
        if engine in ("topdown", "both"):
            verdicts.append(dialectic.warrant_topdown(goal, prune))
        if engine in ("bottomup", "both"):
            verdicts.append(bottomup_verdict(sat, goal))
        if len({v.status for v in verdicts}) > 1:
            raise EngineMismatch(f"engines disagree on {goal}")
        return verdicts[0]

    sat = dialectic.saturate(budget) if engine in ("bottomup", "both") else None
    mine = decide(literal)
    other = decide(literal.complement())
    if mine.status is Status.WARRANTED:
        status = Answer.YES
    elif other.status is Status.WARRANTED:
        status = Answer.NO
    else:
        status = Answer.UNDECIDED
    return QueryAnswer(literal, status), (mine if mine.status is not Status.NO_ARGUMENT else other)


def _policy(name: str, theory: Theory) -> PreferencePolicy:
    policy = PreferencePolicy.named(name, theory)
    if name == "cf":
        missing = [r for r in sorted(theory.defeasible) if r not in theory.annotations]
        if missing:
            raise MissingAnnotation(missing[0])
    return policy


def _dialectic(args, theory: Theory) -> tuple[Dialectic, dict]:
    universe, names = (None, {})
    if args.arguments:
        universe, names = load_arguments(args.arguments)
    d = Dialectic(
        theory,
        _policy(args.preference, theory),
        arguments=universe,
        concordance=args.concordance,
        equivalent_blocks=args.equivalent_blocks,
        no_double_blocking=args.no_double_blocking,
        node_budget=args.budget,
    )
    return d, names


def _read(path: str) -> Theory:
    return parse_theory(Path(path).read_text(encoding="utf-8"))


def cmd_parse(args) -> int:
    theory = _read(args.file)
    print(f"Π={len(theory.strict)} Δ={len(theory.defeasible)}")
    return EXIT_OK


def cmd_query(args) -> int:
    theory = _read(args.file)
    d, names = _dialectic(args, theory)
    answer, verdict = answer_query(d, parse_literal(args.literal), args.engine, args.prune, args.budget)
    print(f"{answer.literal}: {answer.status.value}")
    if verdict is not None and verdict.evidence is not None:
        if args.evidence:
            sys.stdout.write(render(verdict.evidence, args.format, names))
        if args.figure:
            from .plotting import plot_tree

            plot_tree(verdict.evidence, args.figure, names, title=str(answer.literal))
    return EXIT_OK


def cmd_tree(args) -> int:
    theory = _read(args.file)
    d, names = _dialectic(args, theory)
    goal = parse_literal(args.literal)
    trees = [
        d.pruned_tree(a) if args.prune else mark_tree(d.build_tree(a)) for a in d.arguments_for(goal)
    ]
    for tree in trees:
        sys.stdout.write(render(tree, args.format, names))
    if args.figure and trees:
        from .plotting import plot_tree

        plot_tree(trees[0], args.figure, names, title=str(goal))
    return EXIT_OK


def cmd_consequences(args) -> int:
    theory = _read(args.file)
    op = Operator(args.operator)
    if op is Operator.TH_SLD:
        result = th_sld(theory)
    elif op is Operator.C_ARG:
        result = c_arg(theory)
    else:
        d, _ = _dialectic(args, theory)
        result = c_war(theory, d.policy, **d.options)
    print(json.dumps(result.to_json(), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_check_properties(args) -> int:
    theory = _read(args.file)
    report = check_properties(theory, _policy(args.preference, theory), args.samples, args.seed)
    print(report.dumps())
    if args.figure:
        from .plotting import plot_property_report

        plot_property_report(report, args.figure)
    return EXIT_OK if report.passed else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="defarg", description="Defeasible argumentation engine")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, analysis=True):
        p.add_argument("file", help="theory file")
        p.add_argument("--preference", choices=["specificity", "rulecount", "cf"], default="specificity")
        p.add_argument("--budget", type=int, default=100_000, help="node / label budget")
        if analysis:
            p.add_argument("--arguments", help="JSON list restricting the arguments considered")
            p.add_argument("--concordance", action="store_true",
                           help="require each side of a line to be jointly consistent")
            p.add_argument("--equivalent-blocks", action=argparse.BooleanOptionalAction,
                           default=True, help="let equi-preferred counterarguments block")
            p.add_argument("--no-double-blocking", action="store_true",
                           help="forbid a blocking defeater for a blocking defeater")

    p = sub.add_parser("parse", help="validate a theory and count its parts")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    for name, func in (("query", cmd_query), ("tree", cmd_tree)):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("literal")
        p.add_argument("--prune", action=argparse.BooleanOptionalAction, default=True)
        p.add_argument("--format", choices=["text", "dot", "json"], default="text")
        p.add_argument("--figure", help="also draw the tree to this image file")
        if name == "query":
            p.add_argument("--engine", choices=["topdown", "bottomup", "both"], default="topdown")
            p.add_argument("--evidence", action="store_true", help="print the evidence tree")
        p.set_defaults(func=func)

    p = sub.add_parser("consequences")
    common(p)
    p.add_argument("--operator", choices=[o.value for o in Operator], default="war")
    p.set_defaults(func=cmd_consequences)

    p = sub.add_parser("check-properties")
    common(p, analysis=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--figure", help="also draw the report to this image file")
    p.set_defaults(func=cmd_check_properties)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TheorySyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except ContradictoryStrictPart as exc:
        print(f"contradictory strict part: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTORY
    except EngineMismatch as exc:
        print(f"engine mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ActivationSpaceExceeded, SaturationBudgetExceeded, TreeBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except MissingAnnotation as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_SYNTAX


if __name__ == "__main__":
    sys.exit(main())
