"""
Menger's dichotomy between two non-adjacent vertices.

For k >= 1 and distinct non-adjacent a, b exactly one of these is returned:
- a verified separator S with |S| < k
- k pairwise internally disjoint a-b paths

Both come out of one unit-vertex-capacity max-flow run (networkx splits each
vertex into an in/out pair and runs Edmonds-Karp on the result).
"""

import logging
from typing import Union

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from .errors import GraphInputError, PreconditionError
from .graph import Graph, Path, PathSystem, SeparatorCertificate, certify_separator, to_mask

logger = logging.getLogger(__name__)

MengerResult = Union[SeparatorCertificate, PathSystem]


def _induced_shortcut(G: Graph, path: list) -> Path:
    """Shortest a-b path inside the vertex set of a flow path; always induced."""
    shortcut = G.shortest_path(path[0], path[-1], within=to_mask(path))
    return Path(tuple(shortcut))


def menger(G: Graph, a: int, b: int, k: int) -> MengerResult:
    """
    Either a separator of size < k or k internally disjoint paths.

    Args:
        G: Host graph
        a, b: Distinct, non-adjacent vertices
        k: Number of paths asked for (>= 1)

    Returns:
        SeparatorCertificate (verified) or PathSystem (validated)

    Raises:
        PreconditionError: if a and b are adjacent
    """
    G.check_vertex(a)
    G.check_vertex(b)
    if a == b:
        raise GraphInputError(f"Invalid pair: a and b are both {a}")
    if k < 1:
        raise GraphInputError(f"Invalid k={k}: must be >= 1")
    if G.has_edge(a, b):
        raise PreconditionError(f"Vertices {a} and {b} are adjacent; Menger needs a non-adjacent pair")

    g = G.to_networkx()
    if not nx.has_path(g, a, b):
        logger.debug("menger: %d and %d are disconnected", a, b)
        return certify_separator(G, a, {b}, frozenset(), provenance="menger")

    flow_paths = list(nx.node_disjoint_paths(g, a, b, flow_func=edmonds_karp, cutoff=k))
    if len(flow_paths) >= k:
        paths = sorted(
            (_induced_shortcut(G, p) for p in flow_paths[:k]),
            key=lambda p: (len(p), p.vertices),
        )
        system = PathSystem(a, b, tuple(paths))
        problem = system.check_in(G)
        if problem:
            raise RuntimeError(f"menger produced an invalid path system: {problem}")
        logger.debug("menger: %d disjoint paths between %d and %d", k, a, b)
        return system

    cut = nx.minimum_node_cut(g, a, b, flow_func=edmonds_karp)
    certificate = certify_separator(G, a, {b}, cut, provenance="menger")
    if not certificate.verified or certificate.size >= k:
        raise RuntimeError(f"menger produced an unverified separator {sorted(cut)}")
    logger.debug("menger: separator %s between %d and %d", sorted(cut), a, b)
    return certificate


def local_connectivity(G: Graph, a: int, b: int) -> int:
    """Maximum number of internally disjoint a-b paths (a, b non-adjacent)."""
    if G.has_edge(a, b):
        raise PreconditionError(f"Vertices {a} and {b} are adjacent")
    g = G.to_networkx()
    if not nx.has_path(g, a, b):
        return 0
    return nx.node_connectivity(g, a, b, flow_func=edmonds_karp)
