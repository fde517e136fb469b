"""Matplotlib figures for dialectical trees and property reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .dialectics import DialecticalNode, Mark  # noqa: E402

MARK_COLOURS = {Mark.U: "#4c9a5b", Mark.D: "#c0504d", Mark.STAR: "#9a9a9a"}


def _layout(tree: DialecticalNode) -> dict[int, tuple[float, float]]:
    # leaves get consecutive x slots; parents sit above the middle of their children
    pos: dict[int, tuple[float, float]] = {}
    next_x = 0.0

    def place(node: DialecticalNode, depth: int) -> float:
        nonlocal next_x
        if not node.children:
            x = next_x
            next_x += 1.0
        else:
            xs = [place(c, depth + 1) for c in node.children]
            x = (xs[0] + xs[-1]) / 2
        pos[id(node)] = (x, -depth)
        return x

    place(tree, 0)
    return pos


def plot_tree(tree: DialecticalNode, path: str | Path, names: dict | None = None, title: str = ""):
    pos = _layout(tree)
    width = max(x for x, _ in pos.values()) + 1
    depth = -min(y for _, y in pos.values()) + 1
    fig, ax = plt.subplots(figsize=(max(4.0, 2.2 * width), max(2.5, 1.4 * depth)))
    for node in tree.walk():
        x, y = pos[id(node)]
        for child in node.children:
            cx, cy = pos[id(child)]
            ax.plot([x, cx], [y, cy], color="0.4", lw=1, zorder=1)
    for node in tree.walk():
        x, y = pos[id(node)]
        name = (names or {}).get(node.argument) or f"|{len(node.argument.support)}|"
        ax.text(
            x, y, f"{name}: {node.argument.conclusion}\n({node.mark.value})",
            ha="center", va="center", fontsize=9, zorder=2,
            bbox=dict(boxstyle="round", fc="white", ec=MARK_COLOURS[node.mark], lw=1.5),
        )
    ax.set_xlim(-0.7, width - 0.3)
    ax.set_ylim(-depth + 0.5, 0.6)
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return Path(path)


def plot_property_report(report, path: str | Path):
    names = [r.name for r in report.results]
    values = [1 if r.passed else 0 for r in report.results]
    colours = [MARK_COLOURS[Mark.U] if v else MARK_COLOURS[Mark.D] for v in values]
    fig, ax = plt.subplots(figsize=(5, 2.5))
    ax.barh(names, [1] * len(names), color=colours)
    for i, r in enumerate(report.results):
        ax.text(0.5, i, "PASS" if r.passed else "FAIL", ha="center", va="center", color="white")
    ax.set_xticks([])
    ax.set_xlim(0, 1)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return Path(path)


def plot_pruning(sizes: list[tuple[int, int]], path: str | Path):
    """Scatter of (exhaustive, pruned) node counts."""
    fig, ax = plt.subplots(figsize=(4, 4))
    if sizes:
        full, pruned = zip(*sizes)
        ax.scatter(full, pruned, s=12, alpha=0.6)
        top = max(full) + 1
        ax.plot([0, top], [0, top], color="0.5", lw=0.8, ls="--")
    ax.set_xlabel("exhaustive tree nodes")
    ax.set_ylabel("pruned tree nodes")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return Path(path)
