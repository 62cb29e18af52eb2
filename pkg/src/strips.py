"""
(T, a)-strip-structures: the model, its validator and the queries on it.

=============================================================================
THE MODEL
=============================================================================

A strip-structure spreads part of a host G over a smooth tree T (every tree
vertex is a leaf or has degree >= 3). Each tree vertex v gets a set eta(v),
each tree edge e gets a strip eta(e), and each end v of e gets an interface
eta(e, v) inside eta(e). The apex a sits outside all of them and sees exactly
the interfaces at the leaves.

Eight axioms tie this to G:

  S1  the sets eta(v), eta(e) are pairwise disjoint
  S2  leaves have empty eta(v)
  S3  eta(e, v) lies in eta(e) and is nonempty exactly when v is an end of e
  S4  interfaces at a shared end are complete to each other; there are no
      other edges between two strips
  S5  every vertex of a strip reaches both interfaces through the strip's
      interior eta°(e)
  S6  eta(v) only touches the strips through B(v), the union of interfaces at v
  S7  every component of eta(v) touches B(v)
  S8  a is complete to the leaf interfaces and sees nothing else in eta(T)

Interfaces are stored only for incident (edge, end) pairs, so the "only if"
half of S3 holds by construction for anything read from a StripFile.

=============================================================================
RUNGS AND PYRAMIDS
=============================================================================

A rung of e = uv is an induced path through eta(e) meeting each interface
exactly once (a single vertex in both interfaces is a rung of length 0).
Concatenating rungs along the tree path from a branch vertex v to a leaf and
closing at the apex gives one side of an eta-pyramid; three such sides over
three edges at v give the pyramid itself. Because interfaces at a shared end
are complete and strips of disjoint edges are anticomplete, every choice of
leaves and rungs produces a valid pyramid.
=============================================================================
"""

import json
import logging
from dataclasses import dataclass, field, replace
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError

from .embeddings import PyramidEmbedding, validate_pyramid
from .errors import GraphInputError, ParseError, PreconditionError
from .generators import seed_half_edges
from .graph import Edge, Graph, Path, edge_key, from_mask, iter_bits, to_mask
from .obstructions import induced_paths
from .pyramids import is_jewel, is_trapped

logger = logging.getLogger(__name__)

EMPTY: FrozenSet[int] = frozenset()

AXIOMS = ("structure", "S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8")


# =============================================================================
# SMOOTH TREE
# =============================================================================

@dataclass(frozen=True)
class SmoothTree:
    """A tree on >= 3 vertices whose vertices are leaves or have degree >= 3."""
    tree: Graph

    def __post_init__(self):
        if self.tree.n < 3:
            raise GraphInputError(f"Invalid smooth tree: {self.tree.n} vertices, need at least 3")
        if not self.tree.is_tree():
            raise GraphInputError("Invalid smooth tree: the graph is not a tree")
        for v in self.tree.vertices:
            if self.tree.degree(v) == 2:
                raise GraphInputError(f"Invalid smooth tree: vertex {v} has degree 2")

    @property
    def edges(self) -> List[Edge]:
        return self.tree.sorted_edges()

    @property
    def leaves(self) -> Tuple[int, ...]:
        return tuple(v for v in self.tree.vertices if self.tree.degree(v) == 1)

    @property
    def branch_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v in self.tree.vertices if self.tree.degree(v) >= 3)

    @property
    def max_degree(self) -> int:
        return self.tree.max_degree()

    def is_leaf(self, v: int) -> bool:
        return self.tree.degree(v) == 1

    def incident(self, v: int) -> List[Edge]:
        return [edge_key(v, w) for w in self.tree.neighbors(v)]

    def has_edge(self, e: Edge) -> bool:
        return self.tree.has_edge(*e)

    @staticmethod
    def other_end(e: Edge, v: int) -> int:
        return e[1] if e[0] == v else e[0]

    def leaf_edge(self, leaf: int) -> Edge:
        return self.incident(leaf)[0]

    def routes(self, v: int, e: Edge) -> List[List[Edge]]:
        """
        Tree paths that leave v through e and end at a leaf.

        Each route is the list of its edges starting with e. Routes are
        ordered by the leaf they reach.
        """
        found = []
        stack = [(self.other_end(e, v), v, [e])]
        while stack:
            w, parent, edges = stack.pop()
            if self.is_leaf(w):
                found.append((w, edges))
                continue
            for x in self.tree.neighbors(w):
                if x != parent:
                    stack.append((x, w, edges + [edge_key(w, x)]))
        return [edges for _, edges in sorted(found)]

    def to_dict(self) -> dict:
        return {"n": self.tree.n, "edges": [list(e) for e in self.edges]}


# =============================================================================
# STRIP STRUCTURE
# =============================================================================

@dataclass(frozen=True)
class StripStructure:
    """
    A candidate (T, a)-strip-structure in `host`.

    Construction does not check the axioms; validate_strip does. Missing
    keys read as the empty set.
    """
    host: Graph
    apex: int
    tree: SmoothTree
    vmap: Dict[int, FrozenSet[int]] = field(default_factory=dict)
    emap: Dict[Edge, FrozenSet[int]] = field(default_factory=dict)
    evmap: Dict[Tuple[Edge, int], FrozenSet[int]] = field(default_factory=dict)

    def eta_v(self, v: int) -> FrozenSet[int]:
        return self.vmap.get(v, EMPTY)

    def eta_e(self, e: Edge) -> FrozenSet[int]:
        return self.emap.get(edge_key(*e), EMPTY)

    def eta_ev(self, e: Edge, v: int) -> FrozenSet[int]:
        return self.evmap.get((edge_key(*e), v), EMPTY)

    def interior(self, e: Edge) -> FrozenSet[int]:
        """eta°(e): the strip minus both interfaces."""
        u, v = edge_key(*e)
        return self.eta_e(e) - self.eta_ev(e, u) - self.eta_ev(e, v)

    def boundary(self, v: int) -> FrozenSet[int]:
        """B(v): union of the interfaces at v."""
        return frozenset().union(*(self.eta_ev(e, v) for e in self.tree.incident(v)))

    def eta_of(self, vertices: Iterable[int]) -> FrozenSet[int]:
        """eta(S): eta(v) for v in S plus eta(e) for edges of T[S]."""
        S = set(vertices)
        parts = [self.eta_v(v) for v in S]
        parts.extend(self.eta_e(e) for e in self.tree.edges if e[0] in S and e[1] in S)
        return frozenset().union(*parts)

    def eta_T(self) -> FrozenSet[int]:
        return self.eta_of(self.tree.tree.vertices)

    def eta_plus_T(self) -> FrozenSet[int]:
        return self.eta_T() | {self.apex}

    def owner(self, x: int) -> Optional[Tuple[str, object]]:
        """('edge', e) or ('vertex', v) holding x, or None outside eta(T)."""
        for e, members in self.emap.items():
            if x in members:
                return "edge", e
        for v, members in self.vmap.items():
            if x in members:
                return "vertex", v
        return None

    def leq(self, other: "StripStructure") -> bool:
        """Pointwise containment on eta(v), eta(e) and every interface."""
        if other.tree.tree != self.tree.tree or other.apex != self.apex:
            return False
        return (
            all(self.eta_v(v) <= other.eta_v(v) for v in self.tree.tree.vertices)
            and all(self.eta_e(e) <= other.eta_e(e) for e in self.tree.edges)
            and all(members <= other.evmap.get(key, EMPTY) for key, members in self.evmap.items())
        )

    def with_sets(self, vmap=None, emap=None, evmap=None) -> "StripStructure":
        return replace(
            self,
            vmap=dict(self.vmap) if vmap is None else vmap,
            emap=dict(self.emap) if emap is None else emap,
            evmap=dict(self.evmap) if evmap is None else evmap,
        )

    def to_dict(self) -> dict:
        return {
            "tree": self.tree.to_dict(),
            "apex": self.apex,
            "vmap": {str(v): sorted(s) for v, s in sorted(self.vmap.items()) if s},
            "emap": {f"{u}-{v}": sorted(s) for (u, v), s in sorted(self.emap.items())},
            "evmap": {
                f"{u}-{v}@{w}": sorted(s) for ((u, v), w), s in sorted(self.evmap.items())
            },
        }


class TreeFile(BaseModel):
    n: int = Field(ge=3, description="Tree vertex count")
    edges: List[Tuple[int, int]]


class StripFile(BaseModel):
    """On-disk strip-structure: {tree, apex, vmap, emap, evmap}."""
    tree: TreeFile
    apex: int
    vmap: Dict[str, List[int]] = Field(default_factory=dict)
    emap: Dict[str, List[int]] = Field(default_factory=dict)
    evmap: Dict[str, List[int]] = Field(default_factory=dict, description='Keys are "u-v@v"')


def _parse_edge(key: str) -> Edge:
    try:
        u, v = key.split("-")
        return edge_key(int(u), int(v))
    except ValueError:
        raise GraphInputError(f"Invalid edge key {key!r}: expected 'u-v'")


def strip_from_dict(G: Graph, data: dict) -> StripStructure:
    """
    Build a StripStructure from its JSON form.

    Raises:
        GraphInputError: on a malformed file, a key naming a non-edge of T, an
            interface key for a non-incident pair, or an out-of-range vertex
    """
    try:
        model = StripFile.model_validate(data)
    except ValidationError as e:
        raise GraphInputError(f"Invalid strip file: {e.errors()[0]['msg']}")
    tree = SmoothTree(Graph.from_edges(model.tree.n, model.tree.edges))
    G.check_vertex(model.apex)

    vmap = {}
    for key, members in model.vmap.items():
        v = int(key)
        tree.tree.check_vertex(v)
        vmap[v] = G.check_vertices(members)
    emap = {}
    for key, members in model.emap.items():
        e = _parse_edge(key)
        if not tree.has_edge(e):
            raise GraphInputError(f"Invalid emap key {key!r}: not an edge of T")
        emap[e] = G.check_vertices(members)
    evmap = {}
    for key, members in model.evmap.items():
        edge_part, _, end = key.partition("@")
        e = _parse_edge(edge_part)
        if not end or int(end) not in e:
            raise GraphInputError(f"Invalid evmap key {key!r}: the vertex is not an end of the edge")
        if not tree.has_edge(e):
            raise GraphInputError(f"Invalid evmap key {key!r}: not an edge of T")
        evmap[(e, int(end))] = G.check_vertices(members)
    return StripStructure(G, model.apex, tree, vmap, emap, evmap)


def read_strip(text: str, G: Graph) -> StripStructure:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, len(text[: e.pos].encode("utf-8")))
    return strip_from_dict(G, data)


# =============================================================================
# RUNGS
# =============================================================================

@dataclass(frozen=True)
class Rung:
    """A rung of `edge`, listed from the interface at edge[0] to edge[1]."""
    edge: Edge
    path: Path

    @property
    def is_long(self) -> bool:
        return self.path.length > 0

    def from_end(self, v: int) -> Tuple[int, ...]:
        """Vertices starting at the interface of v."""
        return self.path.vertices if v == self.edge[0] else self.path.vertices[::-1]

    def to_dict(self) -> dict:
        return {"edge": list(self.edge), "path": list(self.path.vertices), "long": self.is_long}


def rungs(S: StripStructure, e: Edge) -> Tuple[List[Rung], FrozenSet[int]]:
    """
    Every rung of e, and eta~(e) (the strip vertices on no rung).

    Rungs are sorted by length, then lexicographically.
    """
    e = edge_key(*e)
    if not S.tree.has_edge(e):
        raise GraphInputError(f"Invalid tree edge {list(e)}")
    G = S.host
    u, v = e
    side_u, side_v = S.eta_ev(e, u), S.eta_ev(e, v)
    inner = to_mask(S.interior(e))
    found = [(x,) for x in sorted(side_u & side_v)]
    for x in sorted(side_u - side_v):
        for y in sorted(side_v - side_u):
            found.extend(induced_paths(G, x, y, inner))
    found.sort(key=lambda p: (len(p), p))
    covered = set().union(*found) if found else set()
    return [Rung(e, Path(p)) for p in found], S.eta_e(e) - covered


# =============================================================================
# VALIDATION
# =============================================================================

@dataclass(frozen=True)
class StripReport:
    ok: bool
    axiom: Optional[str] = None
    message: str = ""
    witness: Tuple[int, ...] = ()
    tame: bool = False
    substantial: bool = False
    rich: bool = False

    def to_dict(self) -> dict:
        if not self.ok:
            return {
                "ok": False,
                "axiom": self.axiom,
                "message": self.message,
                "witness": list(self.witness),
            }
        return {"ok": True, "tame": self.tame, "substantial": self.substantial, "rich": self.rich}


def _violation(axiom: str, message: str, *witness: int) -> StripReport:
    return StripReport(False, axiom, message, tuple(witness))


def _check_structure(S: StripStructure) -> Optional[StripReport]:
    G, T = S.host, S.tree
    if not (0 <= S.apex < G.n):
        return _violation("structure", f"apex {S.apex} out of range")
    for v in S.vmap:
        if not (0 <= v < T.tree.n):
            return _violation("structure", f"vmap names tree vertex {v} outside T")
    for e in S.emap:
        if not T.has_edge(e):
            return _violation("structure", f"emap names {list(e)}, not an edge of T")
    for (e, w) in S.evmap:
        if not T.has_edge(e) or w not in e:
            return _violation("S3", f"interface ({list(e)}, {w}) is set but {w} is not an end of the edge")
    for members in list(S.vmap.values()) + list(S.emap.values()) + list(S.evmap.values()):
        for x in members:
            if not (0 <= x < G.n):
                return _violation("structure", f"vertex {x} out of range", x)
            if x == S.apex:
                return _violation("structure", "the apex lies in a strip set", x)
    return None


def _check_s1(S: StripStructure) -> Optional[StripReport]:
    seen: Dict[int, str] = {}
    parts = [(f"eta({v})", S.eta_v(v)) for v in S.tree.tree.vertices]
    parts += [(f"eta({e[0]}-{e[1]})", S.eta_e(e)) for e in S.tree.edges]
    for name, members in parts:
        for x in sorted(members):
            if x in seen:
                return _violation("S1", f"vertex {x} lies in {seen[x]} and {name}", x)
            seen[x] = name
    return None


def _check_s2(S: StripStructure) -> Optional[StripReport]:
    for leaf in S.tree.leaves:
        if S.eta_v(leaf):
            return _violation("S2", f"leaf {leaf} has nonempty eta", *sorted(S.eta_v(leaf)))
    return None


def _check_s3(S: StripStructure) -> Optional[StripReport]:
    for e in S.tree.edges:
        for w in e:
            side = S.eta_ev(e, w)
            if not side:
                return _violation("S3", f"interface eta({e[0]}-{e[1]}, {w}) is empty")
            stray = side - S.eta_e(e)
            if stray:
                return _violation("S3", f"interface eta({e[0]}-{e[1]}, {w}) leaves its strip", min(stray))
    return None


def _check_s4(S: StripStructure) -> Optional[StripReport]:
    G = S.host
    for e, f in combinations(S.tree.edges, 2):
        shared = set(e) & set(f)
        allowed = set()
        for w in shared:
            for x in S.eta_ev(e, w):
                for y in S.eta_ev(f, w):
                    if not G.has_edge(x, y):
                        return _violation("S4", f"interfaces at {w} are not complete", x, y)
                    allowed.add((x, y))
        f_mask = to_mask(S.eta_e(f))
        for x in sorted(S.eta_e(e)):
            for y in iter_bits(G.mask(x) & f_mask):
                if (x, y) not in allowed:
                    return _violation(
                        "S4", f"edge between strips {list(e)} and {list(f)} outside a shared interface", x, y
                    )
    return None


def _check_s5(S: StripStructure) -> Optional[StripReport]:
    G = S.host
    for e in S.tree.edges:
        inner = to_mask(S.interior(e))
        for w in e:
            side = to_mask(S.eta_ev(e, w))
            # interior vertices reachable from the interface through the interior
            reach = 0
            frontier = G.neighbors_of_mask(side) & inner
            while frontier:
                reach |= frontier
                frontier = G.neighbors_of_mask(frontier) & inner & ~reach
            good = side | reach
            for x in sorted(S.eta_e(e)):
                if good >> x & 1 or G.mask(x) & good:
                    continue
                return _violation("S5", f"vertex {x} has no path to eta({e[0]}-{e[1]}, {w}) through the interior", x)
    return None


def _check_s6(S: StripStructure) -> Optional[StripReport]:
    G = S.host
    for v in S.tree.tree.vertices:
        body = to_mask(S.eta_v(v))
        if not body:
            continue
        for e in S.tree.edges:
            far = S.eta_e(e) - S.eta_ev(e, v)
            for x in sorted(far):
                if G.mask(x) & body:
                    y = next(iter_bits(G.mask(x) & body))
                    return _violation("S6", f"eta({v}) touches strip {list(e)} away from B({v})", y, x)
    return None


def _check_s7(S: StripStructure) -> Optional[StripReport]:
    G = S.host
    for v in S.tree.tree.vertices:
        boundary = to_mask(S.boundary(v))
        for component in G.component_masks(to_mask(S.eta_v(v))):
            if not G.neighbors_of_mask(component) & boundary:
                return _violation("S7", f"a component of eta({v}) misses B({v})", *iter_bits(component))
    return None


def _check_s8(S: StripStructure) -> Optional[StripReport]:
    G, a = S.host, S.apex
    expected = set()
    for leaf in S.tree.leaves:
        side = S.eta_ev(S.tree.leaf_edge(leaf), leaf)
        for x in sorted(side):
            if not G.has_edge(a, x):
                return _violation("S8", f"apex misses leaf interface vertex {x}", a, x)
        expected |= side
    for x in iter_bits(G.mask(a) & to_mask(S.eta_T())):
        if x not in expected:
            return _violation("S8", f"apex sees {x} outside the leaf interfaces", a, x)
    return None


_CHECKS = (_check_structure, _check_s1, _check_s2, _check_s3, _check_s4, _check_s5, _check_s6, _check_s7, _check_s8)


def check_axioms(S: StripStructure) -> Optional[StripReport]:
    """The first violated axiom, or None."""
    for check in _CHECKS:
        report = check(S)
        if report is not None:
            return report
    return None


def is_tame(S: StripStructure) -> bool:
    if any(S.eta_v(v) for v in S.tree.tree.vertices):
        return False
    return all(not rungs(S, e)[1] for e in S.tree.edges)


def is_substantial(S: StripStructure) -> bool:
    return all(any(r.is_long for r in rungs(S, e)[0]) for e in S.tree.edges)


def is_rich(S: StripStructure) -> bool:
    for leaf in S.tree.leaves:
        if len(S.eta_ev(S.tree.leaf_edge(leaf), leaf)) != 1:
            return False
    return is_trapped(S.host, S.eta_plus_T(), S.apex)


def validate_strip(G: Graph, S: StripStructure) -> StripReport:
    """Check S1-S8 in order, then compute tame / substantial / rich."""
    if S.host != G:
        S = replace(S, host=G)
    violation = check_axioms(S)
    if violation is not None:
        logger.debug("strip violates %s: %s", violation.axiom, violation.message)
        return violation
    return StripReport(True, tame=is_tame(S), substantial=is_substantial(S), rich=is_rich(S))


def require_strip(S: StripStructure, tame: bool = False, substantial: bool = False, rich: bool = False) -> StripReport:
    """Validate and raise PreconditionError when S or a requested flag fails."""
    report = validate_strip(S.host, S)
    if not report.ok:
        raise PreconditionError(f"Invalid strip-structure: {report.axiom}: {report.message}")
    for name, wanted in (("tame", tame), ("substantial", substantial), ("rich", rich)):
        if wanted and not getattr(report, name):
            raise PreconditionError(f"The strip-structure is not {name}")
    return report


# =============================================================================
# LOCALITY
# =============================================================================

@dataclass(frozen=True)
class LocalityResult:
    """Either a location ('edge' or 'vertex' plus its key) or a nonlocal pair."""
    local: bool
    kind: Optional[str] = None
    where: Optional[object] = None
    pair: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        if self.local:
            where = list(self.where) if isinstance(self.where, tuple) else self.where
            return {"local": True, "kind": self.kind, "where": where}
        return {"local": False, "pair": list(self.pair)}


def local_location(S: StripStructure, X: FrozenSet[int]) -> Optional[Tuple[str, object]]:
    """Where X is local: ('empty', None), ('edge', e) or ('vertex', v); None if nowhere."""
    if not X:
        return "empty", None
    for e in S.tree.edges:
        if X <= S.eta_e(e):
            return "edge", e
    for v in S.tree.tree.vertices:
        if X <= S.boundary(v) | S.eta_v(v):
            return "vertex", v
    return None


def locality(S: StripStructure, X: Iterable[int]) -> LocalityResult:
    """
    Decide whether X is local; if not, return a nonlocal pair from X.

    Raises:
        GraphInputError: if X is not inside eta(T)
    """
    X = S.host.check_vertices(X)
    outside = X - S.eta_T()
    if outside:
        raise GraphInputError(f"Invalid set: vertex {min(outside)} is not in eta(T)")
    where = local_location(S, X)
    if where is not None:
        return LocalityResult(True, where[0], where[1])

    pair = _constructive_pair(S, X)
    if pair is None or is_local(S, pair):
        # an interface vertex shared by both ends of its edge can defeat the
        # constructive choice; fall back to scanning the pairs
        pair = next((p for p in combinations(sorted(X), 2) if not is_local(S, p)), None)
    if pair is None:
        raise PreconditionError("Invalid strip-structure: a nonlocal set has no nonlocal pair")
    return LocalityResult(False, pair=tuple(pair))


def _constructive_pair(S: StripStructure, X: FrozenSet[int]) -> Optional[Tuple[int, int]]:
    """The pair picked by walking the interiors first, then one hub."""
    for e in S.tree.edges:
        inner = X & S.interior(e)
        if inner:
            return min(inner), min(X - S.eta_e(e))

    x = min(X)
    e, v = _interface_of(S, x)
    if e is None:
        return None
    hub = S.boundary(v) | S.eta_v(v)
    beyond = X - S.eta_e(e) - hub
    if beyond:
        return x, min(beyond)
    # X sits in eta(e) plus the sets at v and is split between them
    left = X & (S.eta_e(e) - hub)
    right = X & (hub - S.eta_e(e))
    if not left or not right:
        return None
    return min(left), min(right)


def _interface_of(S: StripStructure, x: int) -> Tuple[Optional[Edge], int]:
    """An (e, v) with x in eta(e, v) or eta(v); e is None when v has no edges."""
    for (e, v), members in sorted(S.evmap.items()):
        if x in members:
            return e, v
    for v, members in sorted(S.vmap.items()):
        if x in members:
            incident = S.tree.incident(v)
            return (incident[0] if incident else None), v
    return None, -1


def is_local(S: StripStructure, X: Iterable[int]) -> bool:
    return local_location(S, frozenset(X)) is not None


# =============================================================================
# ETA-PYRAMIDS
# =============================================================================

def check_claw(S: StripStructure, v: int, edges: Tuple[Edge, ...], size: int) -> Tuple[Edge, ...]:
    edges = tuple(edge_key(*e) for e in edges)
    if len(edges) != size or len(set(edges)) != size:
        raise GraphInputError(f"Invalid claw: need {size} distinct edges at {v}")
    for e in edges:
        if not S.tree.has_edge(e) or v not in e:
            raise GraphInputError(f"Invalid claw: {list(e)} is not incident with {v}")
    return edges


def _side_options(S: StripStructure, v: int, e: Edge, cache: Dict[Edge, List[Rung]]) -> Iterator[Tuple[int, ...]]:
    """Every Gamma: rungs concatenated from v along a route to a leaf, the first long."""
    for route in S.tree.routes(v, e):
        per_edge = []
        here = v
        for i, f in enumerate(route):
            if f not in cache:
                cache[f] = rungs(S, f)[0]
            choices = [r for r in cache[f] if r.is_long or i > 0]
            per_edge.append([(r.from_end(here)) for r in choices])
            here = S.tree.other_end(f, here)
        for pieces in product(*per_edge):
            yield tuple(x for piece in pieces for x in piece)


def _close(a: int, sides: Tuple[Tuple[int, ...], ...]) -> PyramidEmbedding:
    return PyramidEmbedding(
        apex=a,
        base=tuple(side[0] for side in sides),
        paths=tuple(Path((a,) + side[::-1]) for side in sides),
    )


def eta_pyramids(S: StripStructure, v: int, edges: Tuple[Edge, Edge, Edge]) -> Iterator[PyramidEmbedding]:
    """
    Every eta-pyramid at the claw (v, e1, e2, e3), in a fixed order.

    Raises:
        GraphInputError: if the edges are not three distinct edges at v
    """
    edges = check_claw(S, v, edges, 3)
    cache: Dict[Edge, List[Rung]] = {}
    options = [list(_side_options(S, v, e, cache)) for e in edges]
    for sides in product(*options):
        sigma = _close(S.apex, sides)
        problem = validate_pyramid(S.host, sigma)
        if problem:
            logger.warning("skipping an eta-pyramid that fails validation: %s", problem)
            continue
        yield sigma


# =============================================================================
# JEWELS FOR A STRIP-STRUCTURE
# =============================================================================

Seagull = Tuple[int, Edge, Edge]


@dataclass(frozen=True)
class JewelIndex:
    """Jewels per seagull (v, e1, e2) with e1 < e2, and a witness pyramid for each."""
    by_seagull: Dict[Seagull, FrozenSet[int]]
    witnesses: Dict[Tuple[Seagull, int], PyramidEmbedding] = field(default_factory=dict)

    def at_vertex(self, v: int) -> FrozenSet[int]:
        """J_v: jewels at any seagull centred at v."""
        return frozenset().union(*(s for (c, _, _), s in self.by_seagull.items() if c == v))

    def all_jewels(self) -> FrozenSet[int]:
        return frozenset().union(*self.by_seagull.values())

    def per_vertex(self) -> Dict[int, FrozenSet[int]]:
        centres = sorted({c for c, _, _ in self.by_seagull})
        return {v: self.at_vertex(v) for v in centres if self.at_vertex(v)}

    def to_dict(self) -> dict:
        return {
            "seagulls": [
                {"v": v, "e1": list(e1), "e2": list(e2), "jewels": sorted(js)}
                for (v, e1, e2), js in sorted(self.by_seagull.items())
                if js
            ],
            "per_vertex": {str(v): sorted(js) for v, js in self.per_vertex().items()},
            "all": sorted(self.all_jewels()),
        }


def _side_for(S: StripStructure, p: int, v: int, e: Edge, near: bool, cache) -> Optional[Tuple[int, ...]]:
    """
    A side Gamma from v through e on which p sees exactly the first two
    vertices (near) or nothing at all (far). Rungs are chosen independently
    per tree edge, so the first fitting rung of each edge is enough.
    """
    G = S.host
    for route in S.tree.routes(v, e):
        here = v
        side: List[int] = []
        for i, f in enumerate(route):
            if f not in cache:
                cache[f] = rungs(S, f)[0]
            chosen = None
            for r in cache[f]:
                if i == 0 and not r.is_long:
                    continue
                piece = r.from_end(here)
                seen = [x for x in piece if G.has_edge(p, x)]
                if i == 0 and near:
                    if seen == list(piece[:2]):
                        chosen = piece
                        break
                elif not seen:
                    chosen = piece
                    break
            if chosen is None:
                break
            side.extend(chosen)
            here = S.tree.other_end(f, here)
        else:
            return tuple(side)
    return None


def find_strip_jewels(G: Graph, S: StripStructure, checked: bool = False) -> JewelIndex:
    """
    Index every jewel for S.

    p is a jewel at the seagull (v, e1, e2) when some third edge e3 at v and
    some eta-pyramid at (v, e1, e2, e3) make p a jewel at b3. Each found
    jewel comes with its pyramid, re-checked with is_jewel.

    Args:
        checked: skip the validity / substantial / rich precondition check
    """
    if S.host != G:
        S = replace(S, host=G)
    if not checked:
        require_strip(S, substantial=True, rich=True)

    a = S.apex
    outside = [p for p in G.vertices if p not in S.eta_plus_T() and not G.has_edge(a, p)]
    cache: Dict[Edge, List[Rung]] = {}
    by_seagull: Dict[Seagull, FrozenSet[int]] = {}
    witnesses: Dict[Tuple[Seagull, int], PyramidEmbedding] = {}

    for v in S.tree.branch_vertices:
        incident = S.tree.incident(v)
        for e1, e2 in combinations(incident, 2):
            seagull = (v, e1, e2)
            found = set()
            for p in outside:
                near1 = _side_for(S, p, v, e1, True, cache)
                if near1 is None:
                    continue
                near2 = _side_for(S, p, v, e2, True, cache)
                if near2 is None:
                    continue
                for e3 in incident:
                    if e3 in (e1, e2):
                        continue
                    far = _side_for(S, p, v, e3, False, cache)
                    if far is None:
                        continue
                    sigma = _close(a, (near1, near2, far))
                    if validate_pyramid(G, sigma) is not None or not is_jewel(G, sigma, p, 2):
                        logger.warning("jewel candidate %d at %s failed re-check", p, seagull)
                        continue
                    found.add(p)
                    witnesses[(seagull, p)] = sigma
                    break
            by_seagull[seagull] = frozenset(found)
    index = JewelIndex(by_seagull, witnesses)
    logger.debug("indexed %d jewels over %d seagulls", len(index.all_jewels()), len(by_seagull))
    return index


# =============================================================================
# CANONICAL STRUCTURES
# =============================================================================

def canonical_pyramid_strip(G: Graph, sigma: PyramidEmbedding) -> StripStructure:
    """
    The strip-structure of a long pyramid over the 3-leaf star.

    Tree vertex 0 is the centre; leaf i+1 belongs to path P_i. The strip of
    edge {0, i+1} is P_i minus the apex, its centre interface is {b_i} and
    its leaf interface is the neighbour of the apex on P_i.
    """
    problem = validate_pyramid(G, sigma)
    if problem:
        raise GraphInputError(f"Invalid pyramid: {problem}")
    if not sigma.is_long:
        raise PreconditionError("The canonical strip needs a long pyramid")
    star = SmoothTree(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]))
    emap, evmap = {}, {}
    for i, p in enumerate(sigma.paths):
        e = (0, i + 1)
        emap[e] = frozenset(p.vertices[1:])
        evmap[(e, 0)] = frozenset({sigma.base[i]})
        evmap[(e, i + 1)] = frozenset({p.vertices[1]})
    return StripStructure(G, sigma.apex, star, {}, emap, evmap)


def _suppress_degree_two(C: Graph) -> Tuple[Graph, List[int], Dict[Edge, List[int]]]:
    """
    Smooth tree of a caterpillar: keep leaves and branch vertices, merge the
    degree-2 runs. Returns (tree, kept vertices, tree edge -> C-path).
    """
    kept = [v for v in C.vertices if C.degree(v) != 2]
    index = {v: i for i, v in enumerate(kept)}
    segments: Dict[Edge, List[int]] = {}
    for start in kept:
        for first in C.neighbors(start):
            path = [start, first]
            while path[-1] not in index:
                nxt = next(w for w in C.neighbors(path[-1]) if w != path[-2])
                path.append(nxt)
            key = edge_key(index[start], index[path[-1]])
            if start < path[-1]:
                segments[key] = path
    tree = Graph.from_edges(len(kept), segments.keys())
    return tree, kept, segments


def caterpillar_strip(
    G: Graph,
    a: int,
    H: Iterable[int],
    C: Graph,
    labels: Optional[Dict[Tuple[int, Edge], int]] = None,
) -> StripStructure:
    """
    The canonical strip-structure of an a-seed over the smooth version of its
    caterpillar C.

    H is the line graph of the 1-subdivision of C: each of its vertices is a
    half-edge (x, e) of C. `labels` maps half-edges to H; without it H must be
    numbered as make_a_seed numbers it (half-edges in sorted order). Every tree
    edge collects the half-edges along its segment of C; its interface at a
    tree vertex is the half-edge touching that end.
    """
    H = G.check_vertices(H)
    halves = seed_half_edges(C)
    if len(halves) != len(H):
        raise GraphInputError(f"Invalid seed: H has {len(H)} vertices, the caterpillar gives {len(halves)}")
    if labels is None:
        offset = min(H)
        labels = {half: offset + i for i, half in enumerate(halves)}
    elif set(labels) != set(halves) or set(labels.values()) != H:
        raise GraphInputError("Invalid seed labelling: it must match the half-edges of C to H")
    label = labels

    tree, kept, segments = _suppress_degree_two(C)
    emap, evmap = {}, {}
    for key, path in segments.items():
        members = set()
        for x, y in zip(path, path[1:]):
            e = edge_key(x, y)
            members.add(label[(x, e)])
            members.add(label[(y, e)])
        start_edge = edge_key(path[0], path[1])
        end_edge = edge_key(path[-2], path[-1])
        ends = {kept.index(path[0]): label[(path[0], start_edge)], kept.index(path[-1]): label[(path[-1], end_edge)]}
        emap[key] = frozenset(members)
        for w, x in ends.items():
            evmap[(key, w)] = frozenset({x})
    S = StripStructure(G, a, SmoothTree(tree), {}, emap, evmap)
    logger.debug("caterpillar strip over a tree with %d leaves", len(S.tree.leaves))
    return S
