"""Text, DOT and JSON renderings of dialectical trees."""

from __future__ import annotations

import json

from .dialectics import DialecticalNode

DOT_LABEL_WIDTH = 60


def node_label(node: DialecticalNode, names: dict | None = None) -> str:
    name = (names or {}).get(node.argument) or node.argument.support_text()
    return f"{name} ⊢ {node.argument.conclusion} [{node.mark.value}]"


def to_text(tree: DialecticalNode, names: dict | None = None) -> str:
    lines: list[str] = []

    def visit(node: DialecticalNode, depth: int) -> None:
        lines.append("  " * depth + node_label(node, names))
        for child in node.children:
            visit(child, depth + 1)

    visit(tree, 0)
    return "\n".join(lines) + "\n"


def _truncate(text: str, width: int = DOT_LABEL_WIDTH) -> str:
    return text if len(text) <= width else text[: width - 3] + "..."


def to_dot(tree: DialecticalNode, names: dict | None = None) -> str:
    lines = ["digraph dialectical_tree {", "  node [shape=box];"]
    counter = 0

    def visit(node: DialecticalNode) -> str:
        nonlocal counter
        ident = f"n{counter}"
        counter += 1
        label = _truncate(node_label(node, names)).replace('"', '\\"')
        lines.append(f'  {ident} [label="{label}"];')
        for child in node.children:
            # edges point from defeater to the argument it defeats
            lines.append(f"  {visit(child)} -> {ident};")
        return ident

    visit(tree)
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(tree: DialecticalNode) -> str:
    return json.dumps(tree.to_json(), indent=2, sort_keys=True) + "\n"


def render(tree: DialecticalNode, fmt: str, names: dict | None = None) -> str:
    if fmt == "text":
        return to_text(tree, names)
    if fmt == "dot":
        return to_dot(tree, names)
    if fmt == "json":
        return to_json(tree)
    raise ValueError(f"unknown format {fmt!r}")
