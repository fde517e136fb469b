import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from defarg.cli import load_arguments  # noqa: E402
from defarg.lang import parse_theory  # noqa: E402

DATA = resources.files("defarg") / "data"
ENGINE_PATH = Path(str(DATA / "engine.arg"))
NAMED_PATH = Path(str(DATA / "engine_named.json"))


@pytest.fixture(scope="session")
def engine():
    return parse_theory(ENGINE_PATH.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def named():
    """Name -> argument for the five arguments drawn in the engine example."""
    args, names = load_arguments(NAMED_PATH)
    return {names[a]: a for a in args}


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
