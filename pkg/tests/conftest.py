from __future__ import annotations

import pytest

from tautilt.exchange import explore
from tautilt.tilting import TauPair
from tautilt.zoo import kronecker, linear_A, preset


def explore_preset(family, *params, budget=None):
    A = preset(family, params).build()
    return explore(TauPair.free(A), budget)


@pytest.fixture(scope="session")
def a2_graph():
    return explore_preset("linear_A", 2)


@pytest.fixture(scope="session")
def a3_graph():
    return explore_preset("linear_A", 3)


@pytest.fixture(scope="session")
def kronecker_121():
    """Kronecker exploration reaching distance 60 on both sides of the free pair."""
    return explore(TauPair.free(kronecker().build()), 121)


@pytest.fixture(scope="session")
def kronecker_81():
    """Kronecker exploration reaching distance 40 on both sides of the free pair."""
    return explore(TauPair.free(kronecker().build()), 81)


@pytest.fixture(scope="session")
def a2(a2_graph):
    """The algebra behind ``a2_graph``; modules must share the exact algebra object."""
    return a2_graph.algebra
