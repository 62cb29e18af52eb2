"""
Deterministic constructors for the graph families used throughout thetaprism.

Every constructor numbers its vertices in a fixed documented order, so the
same call always produces the same Graph (and the same graph6 bytes).
Random members of the class come from a seeded rejection sampler.
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .config import RANDOM_EDGE_DENSITY, RANDOM_GRAPH_CAP, REJECTION_BUDGET, SATURATION_DECORATIONS
from .embeddings import PrismEmbedding, PyramidEmbedding, ThetaEmbedding
from .errors import CapExceededError, GraphInputError, RejectionBudgetExhausted
from .graph import Edge, Graph, Path, PathSystem, edge_key, simplicial_set
from .obstructions import find_clique, find_prism, find_theta

logger = logging.getLogger(__name__)

Embedding = Union[ThetaEmbedding, PrismEmbedding, PyramidEmbedding]
CONFIG_KINDS = ("theta", "prism", "pyramid")


# =============================================================================
# THETA / PRISM / PYRAMID
# =============================================================================

def _check_lengths(kind: str, lengths: Sequence[int]) -> Tuple[int, int, int]:
    if kind not in CONFIG_KINDS:
        raise GraphInputError(f"Invalid kind: {kind}. Must be one of {CONFIG_KINDS}")
    if len(lengths) != 3:
        raise GraphInputError(f"Invalid lengths {list(lengths)}: exactly three path lengths are needed")
    lengths = tuple(int(x) for x in lengths)
    if kind == "theta" and min(lengths) < 2:
        raise GraphInputError(f"Invalid theta lengths {list(lengths)}: every path needs length >= 2")
    if kind == "prism" and min(lengths) < 1:
        raise GraphInputError(f"Invalid prism lengths {list(lengths)}: every path needs length >= 1")
    if kind == "pyramid":
        if min(lengths) < 1:
            raise GraphInputError(f"Invalid pyramid lengths {list(lengths)}: every path needs length >= 1")
        if sum(1 for x in lengths if x == 1) > 1:
            raise GraphInputError(f"Invalid pyramid lengths {list(lengths)}: at most one path may have length 1")
    return lengths


def make_config(kind: str, lengths: Sequence[int]) -> Tuple[Graph, Embedding]:
    """
    Build a theta, prism or pyramid with the given path lengths.

    Numbering: theta ends a=0, b=1; prism a1..a3 = 0..2 and b1..b3 = 3..5;
    pyramid apex 0 and base 1..3. Path interiors follow in path order.

    Returns:
        (graph, embedding); the graph is exactly the configuration
    """
    lengths = _check_lengths(kind, lengths)
    if kind == "theta":
        starts, ends = (0, 0, 0), (1, 1, 1)
        next_vertex = 2
    elif kind == "prism":
        starts, ends = (0, 1, 2), (3, 4, 5)
        next_vertex = 6
    else:
        starts, ends = (0, 0, 0), (1, 2, 3)
        next_vertex = 4

    paths: List[Path] = []
    for start, end, length in zip(starts, ends, lengths):
        interior = list(range(next_vertex, next_vertex + length - 1))
        next_vertex += length - 1
        paths.append(Path((start, *interior, end)))

    edges = set()
    for p in paths:
        edges.update(edge_key(u, v) for u, v in zip(p.vertices, p.vertices[1:]))
    if kind == "prism":
        edges.update({(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)})
    elif kind == "pyramid":
        edges.update({(1, 2), (1, 3), (2, 3)})
    G = Graph(next_vertex, frozenset(edges))

    if kind == "theta":
        return G, ThetaEmbedding(0, 1, tuple(paths))
    if kind == "prism":
        return G, PrismEmbedding((0, 1, 2), (3, 4, 5), tuple(paths))
    return G, PyramidEmbedding(0, (1, 2, 3), tuple(paths))


# =============================================================================
# WALLS, LINE GRAPHS, SUBDIVISIONS, TREES
# =============================================================================

def _wall_columns(t: int, row: int) -> List[int]:
    if row == 0:
        return list(range(0, 2 * t - 1, 2))
    if row == t - 1:
        parity = (t - 2) % 2
        return [c for c in range(2 * t) if c % 2 == parity]
    return list(range(2 * t))


def make_wall(t: int) -> Graph:
    """
    The t x t elementary wall in brick layout.

    Row 0 has t vertices on the even columns, middle rows 2t vertices, the
    last row t vertices. Consecutive vertices in a row are joined; rows i and
    i+1 are joined at the columns of parity i % 2 present in both. t=5 gives
    40 vertices and 55 edges. Vertices are numbered row by row, left to right.
    """
    if t < 2:
        raise GraphInputError(f"Invalid wall size t={t}: must be >= 2")
    index = {}
    for row in range(t):
        for col in _wall_columns(t, row):
            index[(row, col)] = len(index)

    edges: List[Edge] = []
    for row in range(t):
        cols = _wall_columns(t, row)
        edges.extend((index[(row, c)], index[(row, d)]) for c, d in zip(cols, cols[1:]))
        if row + 1 < t:
            below = set(_wall_columns(t, row + 1))
            edges.extend(
                (index[(row, c)], index[(row + 1, c)])
                for c in cols
                if c % 2 == row % 2 and c in below
            )
    return Graph.from_edges(len(index), edges)


def line_graph(F: Graph) -> Graph:
    """L(F); vertex i of the result is the i-th edge of F in sorted order."""
    if not F.edges:
        raise GraphInputError("Invalid graph: the line graph of an edgeless graph is empty")
    L = nx.line_graph(F.to_networkx())
    order = sorted(L.nodes(), key=lambda e: edge_key(*e))
    G, _ = Graph.from_networkx(L, order=order)
    return G


def root_graph(H: Graph) -> Optional[Tuple[Graph, Dict[int, Edge]]]:
    """
    A root R with L(R) = H, for connected H, and the map from the vertices of
    H to the edges of R. None when H is not a line graph.
    """
    h = H.to_networkx()
    try:
        root = nx.inverse_line_graph(h)
    except nx.NetworkXError:
        return None
    matcher = GraphMatcher(h, nx.line_graph(root))
    if not matcher.is_isomorphic():
        return None
    R, labels = Graph.from_networkx(root)
    index = {node: i for i, node in enumerate(labels)}
    return R, {v: edge_key(index[p], index[q]) for v, (p, q) in sorted(matcher.mapping.items())}


def subdivide_each_edge(G: Graph, k: int) -> Graph:
    """Replace every edge by a path with k new interior vertices (edges in sorted order)."""
    if k < 0:
        raise GraphInputError(f"Invalid subdivision count k={k}: must be >= 0")
    if k == 0:
        return G
    edges: List[Edge] = []
    fresh = G.n
    for u, v in G.sorted_edges():
        chain = [u, *range(fresh, fresh + k), v]
        fresh += k
        edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(fresh, edges)


def make_T_d_r(d: int, r: int) -> Tuple[Graph, int]:
    """
    T_d^r in BFS numbering with root 0.

    The root has d children, every other internal vertex has d children,
    and every leaf sits at depth r.
    """
    if d < 1 or r < 1:
        raise GraphInputError(f"Invalid T_d^r parameters d={d}, r={r}: both must be >= 1")
    edges: List[Edge] = []
    level = [0]
    count = 1
    for _ in range(r):
        nxt = []
        for parent in level:
            for _ in range(d):
                edges.append((parent, count))
                nxt.append(count)
                count += 1
        level = nxt
    return Graph.from_edges(count, edges), 0


# =============================================================================
# CATERPILLARS AND a-SEEDS
# =============================================================================

@dataclass(frozen=True)
class CaterpillarSpec:
    """
    A caterpillar of maximum degree 3.

    The spine is a path of len(legs) vertices; each end of the spine carries
    one end leaf and legs[i] adds a pendant leg at spine vertex i. The
    compact form is one character per spine vertex: 'L' for a leg, '.' for
    none ("L.LL").
    """
    legs: Tuple[bool, ...]

    @classmethod
    def parse(cls, text: str) -> "CaterpillarSpec":
        text = text.strip()
        if not text or any(c not in "L." for c in text):
            raise GraphInputError(f"Invalid caterpillar spec {text!r}: use 'L' and '.' only")
        return cls(tuple(c == "L" for c in text))

    def __str__(self) -> str:
        return "".join("L" if leg else "." for leg in self.legs)

    @property
    def leaf_count(self) -> int:
        return 2 + sum(self.legs)

    def build(self) -> Graph:
        """Spine 0..s-1, end leaves s and s+1, then one vertex per leg."""
        s = len(self.legs)
        if s < 1:
            raise GraphInputError("Invalid caterpillar spec: the spine needs at least one vertex")
        if self.leaf_count < 3:
            raise GraphInputError(
                f"Invalid caterpillar spec {str(self)!r}: {self.leaf_count} leaves, at least 3 are needed"
            )
        edges: List[Edge] = [(i, i + 1) for i in range(s - 1)]
        edges.append((0, s))
        edges.append((s - 1, s + 1))
        fresh = s + 2
        for i, leg in enumerate(self.legs):
            if leg:
                edges.append((i, fresh))
                fresh += 1
        return Graph.from_edges(fresh, edges)


def is_caterpillar(C: Graph) -> bool:
    """A tree of maximum degree 3 whose branch vertices all lie on one path."""
    if not C.is_tree() or C.max_degree() > 3:
        return False
    branch = [v for v in C.vertices if C.degree(v) == 3]
    if len(branch) <= 1:
        return True
    # the subtree spanned by the branch vertices must itself be a path
    hull = set()
    first = branch[0]
    for v in branch[1:]:
        hull.update(C.shortest_path(first, v))
    sub, _ = C.induced_subgraph(hull)
    return sub.max_degree() <= 2


def make_a_seed(spec: Union[CaterpillarSpec, str]) -> Tuple[Graph, int, frozenset]:
    """
    An apex over the line graph of the 1-subdivision of a caterpillar.

    Returns:
        (G, apex, seed) where seed = V(H) = 0..|H|-1 and the apex is |H|,
        adjacent exactly to the simplicial vertices of H
    """
    if isinstance(spec, str):
        spec = CaterpillarSpec.parse(spec)
    H = line_graph(subdivide_each_edge(spec.build(), 1))
    apex = H.n
    G = H.with_vertices(1, [(apex, z) for z in sorted(simplicial_set(H))])
    return G, apex, frozenset(range(H.n))


def seed_half_edges(C: Graph) -> List[Tuple[int, Edge]]:
    """
    The half-edges (x, e) of C, listed in the order make_a_seed numbers H.

    Subdividing e = uv with a midpoint m turns it into the edges um and vm;
    the line graph numbers those in sorted order, and um is the half of e at u.
    """
    fresh = C.n
    keyed = []
    for u, v in C.sorted_edges():
        keyed.append((edge_key(u, fresh), (u, (u, v))))
        keyed.append((edge_key(v, fresh), (v, (u, v))))
        fresh += 1
    return [half for _, half in sorted(keyed)]


# =============================================================================
# RANDOM MEMBERS OF THE CLASS
# =============================================================================

def _sample_edges(n: int, p: float, rng: random.Random) -> List[Edge]:
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def random_class_graph(n: int, t: int, seed, force: bool = False) -> Graph:
    """
    A seeded random graph verified theta-free, prism-free and K_t-free.

    Proposals are G(n, p) with p = RANDOM_EDGE_DENSITY / n; a proposal is
    kept only when every detector comes back empty.

    Raises:
        RejectionBudgetExhausted: carrying the last rejected witness
    """
    if n < 0:
        raise GraphInputError(f"Invalid size n={n}")
    if t < 2:
        raise GraphInputError(f"Invalid clique bound t={t}: must be >= 2")
    if n > RANDOM_GRAPH_CAP and not force:
        raise CapExceededError("random_class_graph", n, RANDOM_GRAPH_CAP)

    rng = random.Random(seed)
    p = min(1.0, RANDOM_EDGE_DENSITY / max(n, 1))
    witness = None
    for attempt in range(REJECTION_BUDGET):
        G = Graph.from_edges(n, _sample_edges(n, p, rng))
        witness = (
            find_clique(G, t)
            or find_theta(G, force=True)
            or find_prism(G, force=True)
        )
        if witness is None:
            logger.debug("random_class_graph: accepted after %d rejections", attempt)
            return G
    raise RejectionBudgetExhausted(
        f"random_class_graph: no member of the class after {REJECTION_BUDGET} proposals",
        witness,
    )


def _random_choice(rng: random.Random, items: Sequence):
    return items[int(rng.random() * len(items))]


def random_saturation_instance(seed, max_extra: int = SATURATION_DECORATIONS) -> Tuple[Graph, PyramidEmbedding]:
    """
    A long pyramid with up to max_extra decoration vertices, in the class C_4.

    Path lengths are drawn from 3..4. Each decoration is one of: a jewel
    (complete to b_i, c_i, b_j, c_j), a local attachment to one or two
    consecutive vertices of a path or to an earlier decoration, or random
    edges. Decorations never touch the apex or its neighbours, so the apex
    stays trapped. A draw whose host leaves the class is discarded; after
    the rejection budget the bare pyramid is returned.
    """
    rng = random.Random(seed)
    lengths = [3 + int(rng.random() * 2) for _ in range(3)]
    base, sigma = make_config("pyramid", lengths)
    near_apex = {sigma.apex, *(p.vertices[1] for p in sigma.paths)}
    eligible_base = [v for v in base.vertices if v not in near_apex]

    for _ in range(REJECTION_BUDGET):
        count = int(rng.random() * (max_extra + 1))
        edges: List[Edge] = []
        pool = list(eligible_base)
        for j in range(count):
            x = base.n + j
            mode = rng.random()
            if mode < 0.3:
                i = int(rng.random() * 3)
                a, b = [k for k in range(3) if k != i]
                targets = [sigma.base[a], sigma.base_neighbor(a), sigma.base[b], sigma.base_neighbor(b)]
            elif mode < 0.65:
                anchor = _random_choice(rng, pool)
                targets = [anchor]
                for p in sigma.paths:
                    if anchor in p.vertices:
                        k = p.vertices.index(anchor)
                        if k + 1 < len(p) and p.vertices[k + 1] in pool and rng.random() < 0.5:
                            targets.append(p.vertices[k + 1])
            else:
                targets = [v for v in pool if rng.random() < 0.3]
            edges.extend((x, v) for v in targets if v not in near_apex)
            pool.append(x)
        G = base.with_vertices(count, edges)
        if find_clique(G, 4) or find_theta(G, force=True) or find_prism(G, force=True):
            continue
        return G, sigma
    logger.warning("random_saturation_instance: budget exhausted for seed %r, using the bare pyramid", seed)
    return base, sigma


# =============================================================================
# PATH SYSTEMS FOR TREE EXTRACTION
# =============================================================================

def layered_path_system(count: int, layers: int, wired: bool = True) -> Tuple[Graph, PathSystem]:
    """
    count paths a - x^1_i - ... - x^layers_i - b.

    With wiring, x^k_i is adjacent to x^(k+1)_j whenever i < j, which orients
    every pair of first neighbours forward and keeps the recursion going at
    every depth. a = 0, b = 1, path i occupies 2 + i*layers onwards.
    """
    if count < 1 or layers < 1:
        raise GraphInputError(f"Invalid layered system: count={count}, layers={layers}")

    def x(k: int, i: int) -> int:
        return 2 + i * layers + (k - 1)

    edges: List[Edge] = []
    paths = []
    for i in range(count):
        chain = [0, *(x(k, i) for k in range(1, layers + 1)), 1]
        edges.extend(zip(chain, chain[1:]))
        paths.append(Path(tuple(chain)))
    if wired:
        for k in range(1, layers):
            for i in range(count):
                for j in range(i + 1, count):
                    edges.append((x(k, i), x(k + 1, j)))
    G = Graph.from_edges(2 + count * layers, edges)
    return G, PathSystem(0, 1, tuple(paths))


def parse_lengths(text: Optional[str]) -> Tuple[int, ...]:
    """'2,3,4' -> (2, 3, 4)."""
    if not text:
        raise GraphInputError("Invalid lengths: expected three comma-separated integers")
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise GraphInputError(f"Invalid lengths {text!r}: expected integers like 2,3,4")
