import os
import sys
from functools import lru_cache

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from sqfpow.graph_classes import enumerate_graphs  # noqa: E402


@lru_cache(maxsize=None)
def graphs_upto(n_max, classes=(), connected=False):
    return tuple(g for n in range(1, n_max + 1) for g in enumerate_graphs(n, classes, connected=connected))


@pytest.fixture(scope="session")
def graphs5():
    return graphs_upto(5)


@pytest.fixture(scope="session")
def graphs6():
    return graphs_upto(6)
