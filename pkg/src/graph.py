"""
Core graph values for thetaprism.

=============================================================================
REPRESENTATION
=============================================================================

Vertices are the dense integers 0..n-1 and every vertex set can also be held
as a Python int bitmask (bit v set <=> v in the set). The searches in the
other modules work on masks; the public API speaks frozensets and tuples.

Everything here is immutable. A Graph caches its adjacency masks once at
construction, so the same value can be shared freely between workers.

Iteration order is always ascending vertex order. Witnesses built on top of
these helpers are therefore reproducible byte for byte.
=============================================================================
"""

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import (
    TYPE_CHECKING,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
)

import networkx as nx

from .errors import GraphInputError

if TYPE_CHECKING:
    from .ramsey import Quantity


Edge = Tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Canonical (min, max) form of an unordered pair."""
    return (u, v) if u < v else (v, u)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bits of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> FrozenSet[int]:
    return frozenset(iter_bits(mask))


# =============================================================================
# GRAPH
# =============================================================================

@dataclass(frozen=True)
class Graph:
    """
    A finite simple undirected graph on vertices 0..n-1.

    Edges are stored as (u, v) pairs with u < v. Loops are rejected; parallel
    edges cannot be expressed.
    """
    n: int
    edges: FrozenSet[Edge] = frozenset()
    _masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphInputError(f"Invalid vertex count: {self.n}")

        normalized = set()
        masks = [0] * self.n
        for raw in self.edges:
            u, v = raw
            if u == v:
                raise GraphInputError(f"Invalid edge ({u}, {v}): loops are not allowed")
            for w in (u, v):
                if not (0 <= w < self.n):
                    raise GraphInputError(f"Invalid edge ({u}, {v}): vertex {w} out of range 0..{self.n - 1}")
            key = edge_key(u, v)
            normalized.add(key)
            masks[u] |= 1 << v
            masks[v] |= 1 << u

        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "_masks", tuple(masks))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset(edge_key(int(u), int(v)) for u, v in edges))

    @classmethod
    def from_networkx(cls, g: nx.Graph, order: Optional[Sequence] = None) -> Tuple["Graph", List]:
        """
        Convert a networkx graph, relabelling nodes to 0..n-1.

        Args:
            g: Source graph (node labels can be anything hashable)
            order: Node order to use; defaults to sorted order when the labels
                   are comparable, insertion order otherwise

        Returns:
            (graph, labels) where labels[i] is the original node of vertex i
        """
        if order is None:
            try:
                order = sorted(g.nodes())
            except TypeError:
                order = list(g.nodes())
        index = {node: i for i, node in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in g.edges() if u != v]
        return cls.from_edges(len(order), edges), list(order)

    # -------------------------------------------------------------------------
    # Basic queries
    # -------------------------------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not (0 <= v < self.n):
            raise GraphInputError(f"Invalid vertex {v!r}: expected 0..{self.n - 1}")

    def check_vertices(self, vertices: Iterable[int]) -> FrozenSet[int]:
        result = frozenset(vertices)
        for v in result:
            self.check_vertex(v)
        return result

    def mask(self, v: int) -> int:
        """Neighbourhood of v as a bitmask."""
        return self._masks[v]

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self._masks[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return bin(self._masks[v]).count("1")

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def neighbors_of_mask(self, mask: int) -> int:
        """N(X) as a mask: vertices outside X with a neighbour in X."""
        union = 0
        for v in iter_bits(mask):
            union |= self._masks[v]
        return union & ~mask

    def closed_neighbors_of_mask(self, mask: int) -> int:
        return self.neighbors_of_mask(mask) | mask

    def neighbors_of_set(self, vertices: Iterable[int]) -> FrozenSet[int]:
        return from_mask(self.neighbors_of_mask(to_mask(vertices)))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])

    def is_stable(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return not any(self.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])

    # -------------------------------------------------------------------------
    # Derived graphs
    # -------------------------------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", List[int]]:
        """
        G[X] relabelled to 0..|X|-1 in ascending order of the original labels.

        Returns:
            (subgraph, labels) with labels[i] the original vertex of i
        """
        labels = sorted(self.check_vertices(vertices))
        index = {v: i for i, v in enumerate(labels)}
        edges = [
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        ]
        return Graph.from_edges(len(labels), edges), labels

    def with_edges(self, added: Iterable[Edge] = (), removed: Iterable[Edge] = ()) -> "Graph":
        drop = {edge_key(u, v) for u, v in removed}
        edges = {e for e in self.edges if e not in drop}
        edges.update(edge_key(u, v) for u, v in added)
        return Graph(self.n, frozenset(edges))

    def with_vertices(self, count: int, added: Iterable[Edge] = ()) -> "Graph":
        """Append `count` new vertices (numbered n, n+1, ...) and extra edges."""
        edges = set(self.edges)
        edges.update(edge_key(u, v) for u, v in added)
        return Graph(self.n + count, frozenset(edges))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shifted = [(u + self.n, v + self.n) for u, v in other.edges]
        return Graph(self.n + other.n, frozenset(self.edges) | frozenset(shifted))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.sorted_edges())
        return g

    # -------------------------------------------------------------------------
    # Connectivity
    # -------------------------------------------------------------------------

    def component_masks(self, within: Optional[int] = None) -> List[int]:
        """Components of G[within] as masks, ordered by smallest vertex."""
        remaining = self.full_mask if within is None else within
        components = []
        while remaining:
            low = remaining & -remaining
            component = low
            frontier = low
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= self._masks[v]
                frontier = reach & remaining & ~component
                component |= frontier
            components.append(component)
            remaining &= ~component
        return components

    def components(self, within: Optional[Iterable[int]] = None) -> List[FrozenSet[int]]:
        mask = None if within is None else to_mask(within)
        return [from_mask(c) for c in self.component_masks(mask)]

    def is_connected(self, within: Optional[Iterable[int]] = None) -> bool:
        mask = self.full_mask if within is None else to_mask(within)
        if not mask:
            return True
        return len(self.component_masks(mask)) == 1

    def shortest_path(self, source: int, target: int, within: Optional[int] = None) -> Optional[List[int]]:
        """
        BFS path from source to target inside the mask `within` (default all).

        Neighbours are expanded in ascending order, so the path returned is the
        lexicographically smallest among shortest paths by parent choice.
        """
        allowed = self.full_mask if within is None else within
        allowed |= (1 << source) | (1 << target)
        parent = {source: None}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            if v == target:
                break
            for w in iter_bits(self._masks[v] & allowed):
                if w not in parent:
                    parent[w] = v
                    queue.append(w)
        if target not in parent:
            return None
        path = [target]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path[::-1]

    def distances_from(self, source: int, within: Optional[int] = None) -> Dict[int, int]:
        allowed = self.full_mask if within is None else within | (1 << source)
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for w in iter_bits(self._masks[v] & allowed):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def is_tree(self) -> bool:
        return self.n >= 1 and len(self.edges) == self.n - 1 and self.is_connected()

    def is_forest(self) -> bool:
        return len(self.edges) == self.n - len(self.component_masks())


# =============================================================================
# PATHS, SEPARATIONS, PATH SYSTEMS
# =============================================================================

@dataclass(frozen=True)
class Path:
    """An ordered vertex sequence; P* is the interior."""
    vertices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if not self.vertices:
            raise GraphInputError("Invalid path: no vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphInputError(f"Invalid path {list(self.vertices)}: repeated vertex")

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    @property
    def ends(self) -> Tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    def as_set(self) -> FrozenSet[int]:
        return frozenset(self.vertices)

    def reversed(self) -> "Path":
        return Path(self.vertices[::-1])

    def check_in(self, G: Graph, induced: bool = True) -> Optional[str]:
        """Return a violation message, or None when P is a (induced) path of G."""
        for v in self.vertices:
            if not (0 <= v < G.n):
                return f"vertex {v} out of range"
        for u, v in zip(self.vertices, self.vertices[1:]):
            if not G.has_edge(u, v):
                return f"consecutive vertices {u},{v} are not adjacent"
        if induced:
            for i, u in enumerate(self.vertices):
                for v in self.vertices[i + 2:]:
                    if G.has_edge(u, v):
                        return f"chord {u}-{v}"
        return None


@dataclass(frozen=True)
class Separation:
    """(L, M, R): disjoint, covering, L and R nonempty and anticomplete."""
    left: FrozenSet[int]
    middle: FrozenSet[int]
    right: FrozenSet[int]

    def is_valid_in(self, G: Graph) -> bool:
        L, M, R = self.left, self.middle, self.right
        if not L or not R:
            return False
        if L & M or L & R or M & R:
            return False
        if (L | M | R) != frozenset(G.vertices):
            return False
        right_mask = to_mask(R)
        return not any(G.mask(v) & right_mask for v in L)

    @classmethod
    def around(cls, G: Graph, middle: Iterable[int], source: int) -> Optional["Separation"]:
        """L = component of G - M holding source, R = the rest. None if R is empty."""
        M = frozenset(middle)
        if source in M:
            return None
        rest = G.full_mask & ~to_mask(M)
        for component in G.component_masks(rest):
            if component >> source & 1:
                left = from_mask(component)
                right = frozenset(G.vertices) - left - M
                if not right:
                    return None
                return cls(left, M, right)
        return None

    def to_dict(self) -> dict:
        return {
            "L": sorted(self.left),
            "M": sorted(self.middle),
            "R": sorted(self.right),
        }


def separates(G: Graph, middle: Iterable[int], source: int, targets: Iterable[int]) -> Optional[Separation]:
    """
    Check that M separates source from every target.

    Returns:
        The witnessing separation (source side as L), or None
    """
    M = frozenset(middle)
    T = frozenset(targets) - M
    separation = Separation.around(G, M, source)
    if separation is None or T & separation.left:
        return None
    return separation


@dataclass(frozen=True)
class PathSystem:
    """Pairwise internally disjoint source-sink paths."""
    source: int
    sink: int
    paths: Tuple[Path, ...]

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(self.paths))

    def __len__(self) -> int:
        return len(self.paths)

    def first_neighbors(self) -> List[int]:
        """a_P for each path: the vertex after the source."""
        return [p.vertices[1] for p in self.paths]

    def check_in(self, G: Graph, induced: bool = True) -> Optional[str]:
        if self.source == self.sink:
            return "source equals sink"
        used = set()
        for i, p in enumerate(self.paths):
            if p.ends != (self.source, self.sink):
                return f"path {i} does not run from {self.source} to {self.sink}"
            problem = p.check_in(G, induced=induced)
            if problem:
                return f"path {i}: {problem}"
            if not G.has_edge(self.source, self.sink) and not p.interior:
                return f"path {i} has an empty interior"
            overlap = used & set(p.interior)
            if overlap:
                return f"path {i} shares interior vertex {min(overlap)}"
            used.update(p.interior)
        return None

    def to_dict(self) -> dict:
        return {
            "a": self.source,
            "b": self.sink,
            "paths": [list(p.vertices) for p in self.paths],
        }


@dataclass(frozen=True)
class SeparatorCertificate:
    """
    A vertex set S claimed to separate `source` from `targets`.

    `verified` is only ever set after the separation has been recomputed from
    the components of G - S. `parts` records named pieces of S (for example
    the external and internal halves of an apex separator).
    """
    source: int
    targets: FrozenSet[int]
    separator: FrozenSet[int]
    separation: Optional[Separation]
    verified: bool
    bound: Optional["Quantity"] = None
    provenance: str = ""
    parts: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.separator)

    @property
    def within_bound(self) -> Optional[bool]:
        if self.bound is None or self.bound.value is None:
            return None
        return self.size < self.bound.value

    def to_dict(self) -> dict:
        data = {
            "source": self.source,
            "targets": sorted(self.targets),
            "S": sorted(self.separator),
            "L": sorted(self.separation.left) if self.separation else [],
            "R": sorted(self.separation.right) if self.separation else [],
            "verified": self.verified,
            "provenance": self.provenance,
            "parts": {k: list(v) for k, v in sorted(self.parts.items())},
        }
        if self.bound is not None:
            data["bound"] = self.bound.to_dict()
            data["within_bound"] = self.within_bound
        return data


def certify_separator(
    G: Graph,
    source: int,
    targets: Iterable[int],
    separator: Iterable[int],
    bound: Optional["Quantity"] = None,
    provenance: str = "",
    parts: Optional[Dict[str, Iterable[int]]] = None,
) -> SeparatorCertificate:
    """Build a certificate and verify it by component decomposition of G - S."""
    S = frozenset(separator)
    T = frozenset(targets)
    separation = separates(G, S, source, T)
    return SeparatorCertificate(
        source=source,
        targets=T,
        separator=S,
        separation=separation,
        verified=separation is not None and not (T & S),
        bound=bound,
        provenance=provenance,
        parts={k: tuple(sorted(v)) for k, v in (parts or {}).items()},
    )


# =============================================================================
# NEIGHBOURHOOD ALGEBRA
# =============================================================================

class Relation(str, Enum):
    COMPLETE = "complete"
    ANTICOMPLETE = "anticomplete"
    MIXED = "mixed"


def neighborhood(G: Graph, x: int, d: int) -> FrozenSet[int]:
    """Closed ball N^d[x]."""
    G.check_vertex(x)
    if d < 0:
        raise GraphInputError(f"Invalid radius {d}: must be >= 0")
    return frozenset(v for v, dist in G.distances_from(x).items() if dist <= d)


def relation(G: Graph, X: Iterable[int], Y: Iterable[int]) -> Relation:
    """
    Classify the edges between disjoint X and Y.

    An empty side gives ANTICOMPLETE: there are no X-Y edges.
    """
    xs = G.check_vertices(X)
    ys = G.check_vertices(Y)
    if xs & ys:
        raise GraphInputError(f"Invalid sets: X and Y overlap in {sorted(xs & ys)}")
    if not xs or not ys:
        return Relation.ANTICOMPLETE
    y_mask = to_mask(ys)
    hits = [bin(G.mask(x) & y_mask).count("1") for x in xs]
    if all(h == len(ys) for h in hits):
        return Relation.COMPLETE
    if not any(hits):
        return Relation.ANTICOMPLETE
    return Relation.MIXED


def simplicial_set(H: Graph) -> FrozenSet[int]:
    """Vertices whose neighbourhood is a clique (isolated vertices included)."""
    return frozenset(v for v in H.vertices if H.is_clique(H.neighbors(v)))
