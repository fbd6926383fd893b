import sys
import warnings
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
warnings.filterwarnings("ignore", module="numba")

from centra.cli import karate_path  # noqa: E402
from centra.graph import Graph, from_edge_list  # noqa: E402


@pytest.fixture(scope="session")
def karate():
    return from_edge_list(karate_path().read_text())


@pytest.fixture
def p4():
    return Graph.from_pairs(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def hub_loss_graph():
    """Six-node graph whose hub loses betweenness centralization when node 3 saturates."""
    return Graph.from_pairs(6, [(0, 1), (0, 3), (0, 4), (0, 5), (1, 2)])
