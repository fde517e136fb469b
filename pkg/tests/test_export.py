import json

from defarg.dialectics import Dialectic, mark_tree
from defarg.export import render, to_dot, to_json, to_text
from defarg.plotting import plot_pruning, plot_tree
from oracles import validate


def named_tree(engine, named):
    d = Dialectic(engine, arguments=list(named.values()), concordance=True)
    return mark_tree(d.build_tree(named["A"]))


def test_text(engine, named):
    names = {a: n for n, a in named.items()}
    text = to_text(named_tree(engine, named), names)
    assert text.splitlines() == [
        "A ⊢ engine_ok [D]",
        "  E ⊢ ~engine_ok [U]",
        "  B ⊢ ~fuel_ok [D]",
        "    D ⊢ fuel_ok [U]",
        "    C ⊢ ~low_speed [U]",
    ]


def test_dot(engine, named):
    dot = to_dot(named_tree(engine, named))
    assert dot.startswith("digraph dialectical_tree {")
    assert dot.count("->") == 4
    assert all(len(line) < 120 for line in dot.splitlines())
    assert "n1 -> n0;" in dot


def test_json(engine, named):
    data = json.loads(to_json(named_tree(engine, named)))
    validate(data, "tree.json")
    assert data["mark"] == "D"
    assert [c["argument"]["conclusion"] for c in data["children"]] == ["~engine_ok", "~fuel_ok"]


def test_render_dispatch(engine, named):
    tree = named_tree(engine, named)
    assert render(tree, "text") == to_text(tree)
    assert render(tree, "dot") == to_dot(tree)


def test_figures(engine, named, tmp_path):
    names = {a: n for n, a in named.items()}
    png = plot_tree(named_tree(engine, named), tmp_path / "tree.png", names, "engine_ok")
    assert png.read_bytes()[:4] == b"\x89PNG"
    scatter = plot_pruning([(5, 2), (8, 3)], tmp_path / "pruning.png")
    assert scatter.stat().st_size > 0
