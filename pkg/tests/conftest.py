"""Shared fixtures for all test modules."""
import pytest

from src.generators import make_config
from src.graph import Graph
from src.strips import canonical_pyramid_strip


def make_graph(n: int, edges) -> Graph:
    return Graph.from_edges(n, edges)


def path_graph(n: int) -> Graph:
    """P_n on vertices 0..n-1."""
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    """C_n on vertices 0..n-1."""
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(s: int, t: int) -> Graph:
    """K_{s,t}: sides 0..s-1 and s..s+t-1."""
    return Graph.from_edges(s + t, [(u, s + v) for u in range(s) for v in range(t)])


def make_configuration(**overrides):
    """Factory for (graph, embedding) of a theta, prism or pyramid."""
    defaults = dict(
        kind="pyramid",
        lengths=(2, 2, 2),
    )
    args = {**defaults, **overrides}
    return make_config(args["kind"], args["lengths"])


def canonical_strip(**overrides):
    """Factory for (graph, pyramid, strip) over a long pyramid."""
    G, sigma = make_configuration(**{"kind": "pyramid", **overrides})
    return G, sigma, canonical_pyramid_strip(G, sigma)


@pytest.fixture
def k23():
    return complete_bipartite(2, 3)


@pytest.fixture
def pyramid_strip():
    return canonical_strip(lengths=(2, 3, 3))
