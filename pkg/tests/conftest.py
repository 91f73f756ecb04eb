import os
import sys

import pytest

root = os.path.normpath(os.path.join(os.path.dirname(os.path.realpath(__file__)), os.pardir))
for path in (root, os.path.dirname(os.path.realpath(__file__))):
    if path not in sys.path:
        sys.path.insert(0, path)

from src.CoreOperations.Network import TerminalConfig, build_network  # noqa: E402


@pytest.fixture
def diamond():
    """Two vertex-disjoint 0 -> 3 routes of total length 2 (via 1) and 4 (via 2)."""
    return build_network([(0, 1, 1.), (1, 3, 1.), (0, 2, 2.), (2, 3, 2.)])


@pytest.fixture
def unit_terminals():
    return lambda source, sink, amount=1.: TerminalConfig([(source, amount)], [(sink, amount)])
