import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pclie.graphs import Graph  # noqa: E402

GRAPH_DIR = Path(__file__).resolve().parent.parent / "graphs"


@pytest.fixture
def graph_dir():
    return GRAPH_DIR


@pytest.fixture
def p3():
    return Graph.path(3)


@pytest.fixture
def empty2():
    return Graph.empty(2)
