"""Propositional knowledge representation: literals, strict/defeasible rules,
theories, the concrete theory syntax and the SLD-style derivability checks.

Strong negation is handled by treating ``~p`` as an atom of its own, so
``p`` and ``~p`` only interact through :func:`is_contradictory`.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Literal",
    "Rule",
    "Theory",
    "TheorySyntaxError",
    "ContradictoryStrictPart",
    "parse_theory",
    "parse_literal",
    "parse_rule",
    "serialize_theory",
    "sld_derives",
    "closure",
    "is_contradictory",
]

ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    negated: bool = False

    def __post_init__(self) -> None:
        if not ATOM_RE.match(self.atom):
            raise ValueError(f"invalid atom name {self.atom!r}")

    def complement(self) -> Literal:
        return Literal(self.atom, not self.negated)

    def __str__(self) -> str:
        return ("~" if self.negated else "") + self.atom


@dataclass(frozen=True)
class Rule:
    """``head <- body`` (strict) or ``head -< body`` (defeasible).

    An empty body makes a strict rule a fact and a defeasible rule a
    presumption.
    """

    head: Literal
    body: tuple[Literal, ...] = ()
    defeasible: bool = False

    @property
    def is_fact(self) -> bool:
        return not self.body and not self.defeasible

    def sort_key(self) -> str:
        return str(self)

    def __lt__(self, other: Rule) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.defeasible:
            body = ", ".join(map(str, self.body)) if self.body else "true"
            return f"{self.head} -< {body}"
        if not self.body:
            return str(self.head)
        return f"{self.head} <- {', '.join(map(str, self.body))}"


@dataclass(frozen=True)
class Theory:
    """An argumentative theory: strict part Pi plus defeasible part Delta.

    ``annotations`` carries optional certainty factors for defeasible rules;
    ``derived`` holds extra labelled literals (support, literal) that were
    asserted on top of the rules, e.g. already-derived arguments.
    """

    strict: frozenset[Rule] = frozenset()
    defeasible: frozenset[Rule] = frozenset()
    annotations: Mapping[Rule, float] = field(
        default_factory=lambda: MappingProxyType({}), compare=False, hash=False
    )
    derived: frozenset[tuple[frozenset[Rule], Literal]] = frozenset()

    def __post_init__(self) -> None:
        if any(r.defeasible for r in self.strict):
            raise ValueError("strict part contains a defeasible rule")
        if any(not r.defeasible for r in self.defeasible):
            raise ValueError("defeasible part contains a strict rule")
        if not isinstance(self.annotations, MappingProxyType):
            object.__setattr__(self, "annotations", MappingProxyType(dict(self.annotations)))

    @classmethod
    def from_rules(
        cls, rules: Iterable[Rule], annotations: Mapping[Rule, float] | None = None
    ) -> Theory:
        rules = list(rules)
        return cls(
            strict=frozenset(r for r in rules if not r.defeasible),
            defeasible=frozenset(r for r in rules if r.defeasible),
            annotations=annotations or {},
        )

    @property
    def rules(self) -> frozenset[Rule]:
        return self.strict | self.defeasible

    def atoms(self) -> frozenset[str]:
        found = set()
        for rule in self.rules:
            found.add(rule.head.atom)
            found.update(b.atom for b in rule.body)
        for support, lit in self.derived:
            found.add(lit.atom)
        return frozenset(found)

    def literals(self) -> list[Literal]:
        """Both polarities of every atom, sorted."""
        return sorted(Literal(a, neg) for a in self.atoms() for neg in (False, True))

    def body_literals(self) -> list[Literal]:
        return sorted({b for rule in self.rules for b in rule.body})

    def with_derived(self, support: Iterable[Rule], literal: Literal) -> Theory:
        return Theory(
            self.strict,
            self.defeasible,
            self.annotations,
            self.derived | {(frozenset(support), literal)},
        )


class TheorySyntaxError(SyntaxError):
    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class ContradictoryStrictPart(ValueError):
    def __init__(self, atom: str) -> None:
        super().__init__(f"strict part derives both {atom} and ~{atom}")
        self.atom = atom


# --- concrete syntax -------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<strict><-)
  | (?P<defeasible>-<)
  | (?P<number>\d+\.\d+|\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[~,.\[\]])
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(source: str) -> Iterator[_Token]:
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise TheorySyntaxError(
                f"unexpected character {source[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        text = m.group()
        if kind not in ("ws", "comment"):
            if kind == "punct":
                kind = text
            yield _Token(kind, text, line, m.start() - line_start + 1)
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + text.rfind("\n") + 1
        pos = m.end()


class _Parser:
    def __init__(self, source: str) -> None:
        self.tokens = list(_tokenize(source))
        self.i = 0
        if self.tokens:
            last = self.tokens[-1]
            self.eof = _Token("eof", "", last.line, last.col + len(last.text))
        else:
            self.eof = _Token("eof", "", 1, 1)

    def peek(self) -> _Token:
        return self.tokens[self.i] if self.i < len(self.tokens) else self.eof

    def next(self) -> _Token:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise TheorySyntaxError(f"expected {kind!r}, found {found!r}", tok.line, tok.col)
        return tok

    def literal(self) -> Literal:
        negated = False
        if self.peek().kind == "~":
            self.next()
            negated = True
            if self.peek().kind == "~":
                tok = self.peek()
                raise TheorySyntaxError("nested strong negation is not allowed", tok.line, tok.col)
        tok = self.next()
        if tok.kind != "ident" or not ATOM_RE.match(tok.text) or tok.text == "true":
            raise TheorySyntaxError(f"expected an atom, found {tok.text or 'end of input'!r}",
                                    tok.line, tok.col)
        return Literal(tok.text, negated)

    def body(self) -> tuple[Literal, ...]:
        lits = [self.literal()]
        while self.peek().kind == ",":
            self.next()
            lits.append(self.literal())
        return tuple(lits)

    def certainty(self) -> float | None:
        if self.peek().kind != "[":
            return None
        self.next()
        tok = self.expect("number")
        self.expect("]")
        value = float(tok.text)
        if not 0.0 < value < 1.0:
            raise TheorySyntaxError(
                f"certainty factor {tok.text} outside (0, 1)", tok.line, tok.col
            )
        return value

    def statement(self) -> tuple[Rule, float | None]:
        head = self.literal()
        tok = self.peek()
        if tok.kind == ".":
            self.next()
            return Rule(head), None
        if tok.kind == "strict":
            self.next()
            body = self.body()
            if self.peek().kind == "[":
                t = self.peek()
                raise TheorySyntaxError("strict rules cannot carry a certainty factor",
                                        t.line, t.col)
            self.expect(".")
            return Rule(head, body), None
        if tok.kind == "defeasible":
            self.next()
            if self.peek().kind == "ident" and self.peek().text == "true":
                self.next()
                body: tuple[Literal, ...] = ()
            else:
                body = self.body()
            cf = self.certainty()
            self.expect(".")
            return Rule(head, body, defeasible=True), cf
        raise TheorySyntaxError(
            f"expected '.', '<-' or '-<', found {tok.text or 'end of input'!r}", tok.line, tok.col
        )


def parse_theory(source: str, *, check: bool = True) -> Theory:
    """Parse theory source text.

    Raises :class:`TheorySyntaxError` on malformed input and
    :class:`ContradictoryStrictPart` when ``check`` is set and the strict
    rules derive complementary literals.
    """
    parser = _Parser(source)
    rules: list[Rule] = []
    annotations: dict[Rule, float] = {}
    while parser.peek().kind != "eof":
        rule, cf = parser.statement()
        rules.append(rule)
        if cf is not None:
            annotations[rule] = cf
    theory = Theory.from_rules(rules, annotations)
    if check:
        witness = is_contradictory(theory.strict)
        if witness is not None:
            raise ContradictoryStrictPart(witness)
    return theory


def parse_literal(text: str) -> Literal:
    parser = _Parser(text)
    lit = parser.literal()
    if parser.peek().kind != "eof":
        tok = parser.peek()
        raise TheorySyntaxError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return lit


def parse_rule(text: str) -> Rule:
    """Parse a single rule; the trailing period is optional."""
    text = text.strip()
    if not text.endswith("."):
        text += "."
    parser = _Parser(text)
    rule, _ = parser.statement()
    if parser.peek().kind != "eof":
        tok = parser.peek()
        raise TheorySyntaxError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return rule


def serialize_theory(theory: Theory) -> str:
    """Canonical text form: strict statements first, each part sorted."""
    lines = [f"{rule}." for rule in sorted(theory.strict)]
    for rule in sorted(theory.defeasible):
        cf = theory.annotations.get(rule)
        lines.append(f"{rule} [{cf!r}]." if cf is not None else f"{rule}.")
    return "\n".join(lines) + ("\n" if lines else "")


# --- derivability ----------------------------------------------------------


def _index(rules: Iterable[Rule]) -> dict[Literal, list[Rule]]:
    by_head: dict[Literal, list[Rule]] = defaultdict(list)
    for rule in rules:
        by_head[rule.head].append(rule)
    return by_head


def sld_derives(rules: Iterable[Rule], goal: Literal) -> bool:
    """Backward chaining over ground rules; ``~p`` is just another atom.

    Goals already on the current resolution path fail, which keeps cyclic
    rule sets finite. Failures are only cached when they did not depend on
    such a cut-off.
    """
    by_head = _index(rules)
    proven: set[Literal] = set()
    failed: set[Literal] = set()

    def solve(g: Literal, stack: frozenset[Literal]) -> tuple[bool, bool]:
        # returns (derivable, result depends on a goal on the stack)
        if g in proven:
            return True, False
        if g in failed:
            return False, False
        if g in stack:
            return False, True
        stack = stack | {g}
        tainted = False
        for rule in by_head.get(g, ()):
            ok = True
            for sub in rule.body:
                sub_ok, sub_tainted = solve(sub, stack)
                tainted |= sub_tainted
                if not sub_ok:
                    ok = False
                    break
            if ok:
                proven.add(g)
                return True, False
        if not tainted:
            failed.add(g)
        return False, tainted

    return solve(goal, frozenset())[0]


def closure(rules: Iterable[Rule], facts: Iterable[Literal] = ()) -> frozenset[Literal]:
    """Least set of literals closed under ``rules`` (forward chaining)."""
    rules = list(rules)
    waiting: dict[Literal, list[int]] = defaultdict(list)
    missing = []
    derived: set[Literal] = set()
    agenda: list[Literal] = list(facts)
    for i, rule in enumerate(rules):
        body = set(rule.body)
        missing.append(len(body))
        for b in body:
            waiting[b].append(i)
        if not body:
            agenda.append(rule.head)
    while agenda:
        lit = agenda.pop()
        if lit in derived:
            continue
        derived.add(lit)
        for i in waiting.get(lit, ()):
            missing[i] -= 1
            if missing[i] == 0:
                agenda.append(rules[i].head)
    return frozenset(derived)


def conflicting_atoms(literals: Iterable[Literal]) -> list[str]:
    lits = set(literals)
    return sorted({l.atom for l in lits if l.complement() in lits})


def is_contradictory(rules: Iterable[Rule], facts: Iterable[Literal] = ()) -> str | None:
    """Least atom ``p`` with both ``p`` and ``~p`` derivable, else None."""
    atoms = conflicting_atoms(closure(rules, facts))
    return atoms[0] if atoms else None
