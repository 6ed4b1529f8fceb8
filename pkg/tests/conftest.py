import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from jcmap.graph import SymmetricGraph, from_edges  # noqa: E402

TRIANGLES = [(1, 2, 1), (2, 3, 1), (1, 3, 1), (4, 5, 1), (5, 6, 1), (4, 6, 1)]


@pytest.fixture
def two_triangles() -> SymmetricGraph:
    return from_edges(6, TRIANGLES)


@pytest.fixture
def bridged_triangles() -> SymmetricGraph:
    return from_edges(6, TRIANGLES + [(3, 4, 1)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary():
        terminalreporter.write_line(line)
