"""
How vertices and paths outside a pyramid attach to it.

The pyramid has apex a, base b1b2b3 and paths P1, P2, P3 (P_i runs from a to
b_i and includes both ends). A set X inside the pyramid is local when it lies
inside one P_i or inside the base. An outside path can then be:

- local: its neighbours in the pyramid form a local set
- a corner path at b_i: one end sees P_i - b_i, the other end is complete to
  the other two base vertices, and nothing else touches the pyramid minus b_i
- a jewel at b_i: a vertex missing P_i whose neighbours on each other P_j
  are exactly b_j and the neighbour of b_j on P_j

When the apex is trapped and the host is (theta, prism)-free, every outside
path falls into one of these (or contains a corner path or a jewel).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from .config import OBSTRUCTION_EXTRACT_CAP
from .embeddings import PrismEmbedding, PyramidEmbedding, ThetaEmbedding, validate_pyramid
from .errors import GraphInputError, HypothesisViolation, ObstructionFound
from .graph import Graph, Path, neighborhood
from .obstructions import find_prism, find_theta

logger = logging.getLogger(__name__)


class Outcome(str, Enum):
    LOCAL = "local"
    CORNER_PATH = "corner_path"
    JEWEL = "jewel"


@dataclass(frozen=True)
class PyramidClassification:
    """index is 0-based: the path for local, the base vertex b_i otherwise."""
    outcome: Outcome
    location: str
    index: Optional[int] = None
    witness: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "location": self.location,
            "index": self.index,
            "witness": list(self.witness),
        }


# =============================================================================
# PREDICATES
# =============================================================================

def is_trapped(G: Graph, H: Iterable[int], a: int) -> bool:
    """N^2[a] lies in H and every neighbour of a has degree 2 in G[H]."""
    members = G.check_vertices(H)
    if a not in members:
        raise GraphInputError(f"Invalid apex {a}: not in H")
    if not neighborhood(G, a, 2) <= members:
        return False
    return all(
        sum(1 for w in G.neighbors(x) if w in members) == 2
        for x in G.neighbors(a)
    )


def attachments(G: Graph, sigma: PyramidEmbedding, outside: Iterable[int]) -> FrozenSet[int]:
    """N_Sigma(X) for a set X outside the pyramid."""
    body = sigma.vertices()
    found = set()
    for x in outside:
        found.update(w for w in G.neighbors(x) if w in body)
    return frozenset(found)


def local_in_pyramid(sigma: PyramidEmbedding, X: Iterable[int]) -> Optional[str]:
    """Location of a local set ('empty', 'P1'..'P3', 'base'), or None if wide."""
    X = frozenset(X)
    if not X:
        return "empty"
    for i, p in enumerate(sigma.paths):
        if X <= p.as_set():
            return f"P{i + 1}"
    if X <= frozenset(sigma.base):
        return "base"
    return None


def is_wide(G: Graph, sigma: PyramidEmbedding, p: int) -> bool:
    return local_in_pyramid(sigma, attachments(G, sigma, [p])) is None


def is_corner_path(G: Graph, sigma: PyramidEmbedding, P: Sequence[int], i: int) -> bool:
    """P (p1 first, p2 last; possibly one vertex) is a corner path at b_i."""
    body = sigma.vertices()
    if any(x in body for x in P):
        return False
    p1, p2 = P[0], P[-1]
    own = frozenset(sigma.paths[i].vertices) - {sigma.base[i]}
    others = frozenset(sigma.base) - {sigma.base[i]}
    first = {w for w in G.neighbors(p1) if w in own}
    if not first:
        return False
    if not all(G.has_edge(p2, b) for b in others):
        return False
    allowed = {(p1, w) for w in first} | {(p2, b) for b in others}
    rest = body - {sigma.base[i]}
    for x in P:
        for w in G.neighbors(x):
            if w in rest and (x, w) not in allowed:
                return False
    return True


def is_jewel(G: Graph, sigma: PyramidEmbedding, p: int, i: int) -> bool:
    """p misses P_i and sees exactly {b_j, c_j} on every other P_j."""
    if p in sigma.vertices():
        return False
    if any(G.has_edge(p, w) for w in sigma.paths[i].vertices):
        return False
    for j in range(3):
        if j == i:
            continue
        seen = {w for w in sigma.paths[j].vertices if G.has_edge(p, w)}
        if seen != {sigma.base[j], sigma.base_neighbor(j)}:
            return False
    return True


# =============================================================================
# CLASSIFICATION
# =============================================================================

def _corner_subpath(G: Graph, sigma: PyramidEmbedding, P: Tuple[int, ...]):
    """First contiguous subpath (either direction) that is a corner path."""
    for length in range(1, len(P) + 1):
        for start in range(len(P) - length + 1):
            piece = P[start:start + length]
            for oriented in (piece, piece[::-1]):
                for i in range(3):
                    if is_corner_path(G, sigma, oriented, i):
                        return i, oriented
    return None


def path_outcomes(G: Graph, sigma: PyramidEmbedding, P: Sequence[int]) -> dict:
    """Which of the three outcomes hold for P (they need not be exclusive)."""
    P = tuple(P)
    location = local_in_pyramid(sigma, attachments(G, sigma, P))
    corner = _corner_subpath(G, sigma, P)
    jewel = next(((i, p) for p in P for i in range(3) if is_jewel(G, sigma, p, i)), None)
    return {"local": location, "corner": corner, "jewel": jewel}


def classify_wrt_pyramid(
    G: Graph,
    H: Iterable[int],
    a: int,
    sigma: PyramidEmbedding,
    P: Sequence[int],
) -> PyramidClassification:
    """
    Place an outside path P relative to a pyramid with a trapped apex.

    Outcomes are tried in order: local, corner path contained in P, jewel
    contained in P.

    Raises:
        GraphInputError: if the pyramid, apex or path do not fit together
        HypothesisViolation: if the apex is not trapped in H
        ObstructionFound: if no outcome holds; G[Sigma + P] then contains a
            theta or a prism, which is attached
    """
    H = G.check_vertices(H)
    P = tuple(P)
    if not P:
        raise GraphInputError("Invalid path: no vertices")
    if sigma.apex != a:
        raise GraphInputError(f"Invalid pyramid: apex {sigma.apex} is not {a}")
    problem = validate_pyramid(G, sigma)
    if problem:
        raise GraphInputError(f"Invalid pyramid: {problem}")
    if not sigma.vertices() <= H:
        raise GraphInputError("Invalid pyramid: not contained in H")
    if any(x in H for x in P):
        raise GraphInputError("Invalid path: it meets H")
    path_problem = Path(P).check_in(G)
    if path_problem:
        raise GraphInputError(f"Invalid path: {path_problem}")
    if not is_trapped(G, H, a):
        raise HypothesisViolation(f"apex {a} is not trapped in H", {"apex": a})

    outcomes = path_outcomes(G, sigma, P)
    if outcomes["local"] is not None:
        return PyramidClassification(Outcome.LOCAL, outcomes["local"], _location_index(outcomes["local"]))
    if outcomes["corner"] is not None:
        i, piece = outcomes["corner"]
        return PyramidClassification(Outcome.CORNER_PATH, f"b{i + 1}", i, tuple(piece))
    if outcomes["jewel"] is not None:
        i, p = outcomes["jewel"]
        return PyramidClassification(Outcome.JEWEL, f"b{i + 1}", i, (p,))

    raise ObstructionFound(
        "outside path is wide but neither a corner path nor a jewel",
        obstruction_in(G, sigma.vertices() | frozenset(P)),
    )


def _location_index(location: str) -> Optional[int]:
    if location.startswith("P"):
        return int(location[1:]) - 1
    return None


def obstruction_in(G: Graph, vertices: Iterable[int]):
    """A theta or prism of G[vertices], mapped back to G's labels, or None."""
    sub, labels = G.induced_subgraph(vertices)

    def relabel(p: Path) -> Path:
        return Path(tuple(labels[v] for v in p.vertices))

    theta = find_theta(sub, force=True)
    if theta is not None:
        return ThetaEmbedding(labels[theta.a], labels[theta.b], tuple(relabel(p) for p in theta.paths))
    prism = find_prism(sub, force=True)
    if prism is not None:
        return PrismEmbedding(
            tuple(labels[v] for v in prism.triangle_a),
            tuple(labels[v] for v in prism.triangle_b),
            tuple(relabel(p) for p in prism.paths),
        )
    logger.warning("no theta or prism found in a set of %d vertices", len(sub.vertices))
    return None


def extract_obstruction(G: Graph, candidates: Iterable[Iterable[int]]):
    """
    The first theta or prism found in a candidate vertex set, or None.

    Candidates above OBSTRUCTION_EXTRACT_CAP vertices are skipped.
    """
    for vertices in candidates:
        vertices = frozenset(vertices)
        if len(vertices) > OBSTRUCTION_EXTRACT_CAP:
            logger.debug("skipping extraction on %d vertices", len(vertices))
            continue
        witness = obstruction_in(G, vertices)
        if witness is not None:
            return witness
    return None
