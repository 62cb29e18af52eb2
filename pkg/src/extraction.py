"""
Growing trees out of many disjoint paths.

=============================================================================
BANANA SELECTION
=============================================================================

Given internally disjoint a-b paths with a, b non-adjacent, let a_P be the
neighbour of a on P. banana() picks nu of them so that

- {a_P1, ..., a_Pnu, b} is stable
- for i < j, a_Pi has a neighbour in P_j* - {a_Pj}

It does so in four stages: a maximum stable set of first neighbours missing
b; the digraph D on it (arc i -> j when a_i sees P_j* - a_j); a transitive
subtournament on nu + 1 vertices (the first is dropped); and an independent
re-check of both conditions.

=============================================================================
TREES
=============================================================================

extract_tree() turns enough such paths into a copy of T_d^r rooted at a
(as a subgraph, b excluded). Depth r runs banana with nu = (m + 1) d and
splits the chosen paths into d blocks: the first path of a block gives a
child hub, the other m are rerouted from the hub to b and recursed on.

The remaining operations classify connected sets holding h vertices of S
(connectify), look for one of K_{s,s}, K_t, T_d^r (kp_trichotomy) and run
the whole forest argument on a small host (forest_pipeline).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import (
    CONNECTIFY_BUDGET,
    CONNECTIFY_MAX_H,
    CONNECTIFY_MAX_N,
    STRONG_BLOCK_MAX_K,
    TOURNAMENT_MAX_P,
    TRICHOTOMY_MAX_N,
)
from .errors import CapExceededError, GraphInputError, Inconclusive, PreconditionError
from .generators import is_caterpillar, make_T_d_r, root_graph
from .graph import Graph, Path, PathSystem, iter_bits, simplicial_set, to_mask
from .obstructions import (
    StrongBlockWitness,
    class_membership,
    contains_induced,
    find_biclique,
    find_clique,
    find_strong_block,
)
from .treewidth import treewidth

logger = logging.getLogger(__name__)


# =============================================================================
# TOURNAMENTS
# =============================================================================

@dataclass(frozen=True)
class Tournament:
    """
    A digraph on `vertices`; both arcs of a pair may be present.

    Pairs with no arc at all are allowed too (is_tournament tells).
    """
    vertices: Tuple[int, ...]
    arcs: FrozenSet[Tuple[int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        known = set(self.vertices)
        for u, v in self.arcs:
            if u == v or u not in known or v not in known:
                raise GraphInputError(f"Invalid arc ({u}, {v}) for vertices {list(self.vertices)}")
        object.__setattr__(self, "arcs", frozenset(self.arcs))

    @classmethod
    def transitive(cls, order: Sequence[int]) -> "Tournament":
        """The acyclic tournament with u -> v whenever u comes first."""
        order = list(order)
        return cls(tuple(order), frozenset((u, v) for i, u in enumerate(order) for v in order[i + 1:]))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_neighbors(self, u: int) -> List[int]:
        return [v for v in self.vertices if (u, v) in self.arcs]

    @property
    def is_tournament(self) -> bool:
        return all(
            self.has_arc(u, v) or self.has_arc(v, u)
            for i, u in enumerate(self.vertices)
            for v in self.vertices[i + 1:]
        )

    def underlying(self) -> Graph:
        """D-: one edge per pair joined by at least one arc; vertex i is vertices[i]."""
        index = {v: i for i, v in enumerate(self.vertices)}
        return Graph.from_edges(len(self.vertices), {tuple(sorted((index[u], index[v]))) for u, v in self.arcs})

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "arcs": [list(arc) for arc in sorted(self.arcs)]}


def transitive_subtournament(D: Tournament, p: int, force: bool = False) -> Optional[Tuple[int, ...]]:
    """
    The lexicographically least v_1..v_p with v_i -> v_j for all i < j.

    Raises:
        CapExceededError: if p > TOURNAMENT_MAX_P and force is not set
    """
    if p < 1:
        raise GraphInputError(f"Invalid subtournament size p={p}: must be >= 1")
    if p > TOURNAMENT_MAX_P and not force:
        raise CapExceededError("transitive_subtournament", p, TOURNAMENT_MAX_P)
    out = {u: frozenset(D.out_neighbors(u)) for u in D.vertices}

    def extend(chosen: List[int], candidates: List[int]) -> Optional[Tuple[int, ...]]:
        if len(chosen) == p:
            return tuple(chosen)
        if len(chosen) + len(candidates) < p:
            return None
        for v in candidates:
            chosen.append(v)
            found = extend(chosen, [w for w in candidates if w in out[v]])
            chosen.pop()
            if found is not None:
                return found
        return None

    return extend([], list(D.vertices))


def _maximum_stable(G: Graph, vertices: Sequence[int]) -> Tuple[int, ...]:
    """Largest stable subset of `vertices`, lexicographically first among ties."""
    if not vertices:
        return ()
    sub, labels = G.induced_subgraph(vertices)
    best = min(
        (tuple(sorted(labels[i] for i in clique)) for clique in nx.find_cliques(nx.complement(sub.to_networkx()))),
        key=lambda clique: (-len(clique), clique),
    )
    return best


# =============================================================================
# BANANA SELECTION
# =============================================================================

@dataclass(frozen=True)
class BananaResult:
    """
    stage is 0 on success, otherwise the stage that failed (1-4).

    order holds indices into the input path system, paths the matching
    paths. On failure witness names what blocked the stage.
    """
    ok: bool
    stage: int
    message: str = ""
    paths: Tuple[Path, ...] = ()
    order: Tuple[int, ...] = ()
    witness: Dict[str, list] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "stage": self.stage,
            "message": self.message,
            "order": list(self.order),
            "paths": [list(p.vertices) for p in self.paths],
            "witness": self.witness,
        }


def _validate_system(G: Graph, a: int, b: int, system: PathSystem) -> None:
    G.check_vertices((a, b))
    if a == b:
        raise GraphInputError("Invalid pair: a and b coincide")
    if (system.source, system.sink) != (a, b):
        raise GraphInputError(
            f"Invalid path system: runs from {system.source} to {system.sink}, expected {a} to {b}"
        )
    if G.has_edge(a, b):
        raise PreconditionError(f"Vertices {a} and {b} are adjacent")
    problem = system.check_in(G, induced=False)
    if problem:
        raise GraphInputError(f"Invalid path system: {problem}")


def _sees_far_interior(G: Graph, x: int, P: Path) -> bool:
    return any(G.has_edge(x, y) for y in P.vertices[2:-1])


def verify_banana(G: Graph, a: int, b: int, paths: Sequence[Path]) -> Optional[str]:
    """Re-check both selection conditions from scratch; None when they hold."""
    system = PathSystem(a, b, tuple(paths))
    problem = system.check_in(G, induced=False)
    if problem:
        return problem
    firsts = system.first_neighbors()
    if not G.is_stable(firsts + [b]):
        return "first neighbours together with b are not stable"
    for i, x in enumerate(firsts):
        for j in range(i + 1, len(paths)):
            if not _sees_far_interior(G, x, paths[j]):
                return f"a_P{i} has no neighbour in the far interior of P{j}"
    return None


def banana(G: Graph, a: int, b: int, system: PathSystem, nu: int) -> BananaResult:
    """
    Select nu paths satisfying both selection conditions.

    Raises:
        GraphInputError: for a malformed path system
        PreconditionError: if a and b are adjacent
    """
    if nu < 1:
        raise GraphInputError(f"Invalid nu={nu}: must be >= 1")
    _validate_system(G, a, b, system)
    firsts = system.first_neighbors()

    # stage 1
    pool = [i for i, x in enumerate(firsts) if not G.has_edge(x, b)]
    stable_firsts = _maximum_stable(G, [firsts[i] for i in pool])
    owner = {firsts[i]: i for i in pool}
    N = sorted(owner[x] for x in stable_firsts)
    logger.debug("banana: %d paths, stable first neighbours %s", len(system), N)
    if len(N) < nu + 1:
        return BananaResult(
            False,
            1,
            f"largest stable set of first neighbours has {len(N)} vertices, {nu + 1} needed",
            witness={"stable": [firsts[i] for i in N]},
        )

    # stage 2
    arcs = frozenset(
        (i, j) for i in N for j in N if i != j and _sees_far_interior(G, firsts[i], system.paths[j])
    )
    D = Tournament(tuple(N), arcs)

    # stage 3
    sequence = transitive_subtournament(D, nu + 1, force=True)
    if sequence is None:
        underlying = D.underlying()
        blocking = _maximum_stable(underlying, list(underlying.vertices))
        indices = [D.vertices[i] for i in blocking]
        return BananaResult(
            False,
            3,
            f"no transitive subtournament on {nu + 1} vertices",
            witness={
                "stable_in_D": indices,
                "first_neighbors": [firsts[i] for i in indices],
                "arcs": [list(arc) for arc in sorted(arcs)],
            },
        )

    # stage 4
    order = sequence[1:]
    chosen = tuple(system.paths[i] for i in order)
    problem = verify_banana(G, a, b, chosen)
    if problem:
        return BananaResult(False, 4, problem, chosen, order)
    return BananaResult(True, 0, "", chosen, order)


# =============================================================================
# TREE EXTRACTION
# =============================================================================

@dataclass(frozen=True)
class TreeWitness:
    root: int
    parent: Dict[int, int]
    depth: Dict[int, int]

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(self.depth)

    def edges(self) -> List[Tuple[int, int]]:
        return sorted((u, v) for v, u in self.parent.items())

    def children(self, v: int) -> List[int]:
        return sorted(c for c, p in self.parent.items() if p == v)

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "parent": {str(v): u for v, u in sorted(self.parent.items())},
            "depth": {str(v): k for v, k in sorted(self.depth.items())},
        }


@dataclass(frozen=True)
class TreeFailure:
    """depth is the recursion level that starved; partial is the tree grown so far."""
    depth: int
    reason: str
    partial: Optional[TreeWitness] = None

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "reason": self.reason,
            "partial": self.partial.to_dict() if self.partial else None,
        }


def paths_needed(d: int, r: int) -> int:
    """Paths extract_tree asks for when every banana call succeeds on its first try."""
    if d < 1 or r < 1:
        raise GraphInputError(f"Invalid T_d^r parameters d={d}, r={r}: both must be >= 1")
    need = d
    for _ in range(r - 1):
        need = (need + 1) * d + 1
    return need


def _reroute(G: Graph, hub: int, P: Path) -> Path:
    """hub, then P from the last vertex of P* - a_P that hub sees, on to b."""
    last = max(i for i in range(2, len(P.vertices) - 1) if G.has_edge(hub, P.vertices[i]))
    return Path((hub,) + P.vertices[last:])


class _Starved(Exception):
    def __init__(self, depth: int, reason: str):
        super().__init__(reason)
        self.depth = depth
        self.reason = reason


class _TreeGrowth:
    def __init__(self, G: Graph, root: int, b: int, d: int):
        self.G = G
        self.b = b
        self.d = d
        self.root = root
        self.parent: Dict[int, int] = {}
        self.depth: Dict[int, int] = {root: 0}

    def witness(self) -> TreeWitness:
        return TreeWitness(self.root, dict(self.parent), dict(self.depth))

    def attach(self, child: int, parent: int) -> None:
        self.parent[child] = parent
        self.depth[child] = self.depth[parent] + 1

    def grow(self, hub: int, paths: List[Path], r: int, level: int) -> None:
        d = self.d
        if r == 1:
            if len(paths) < d:
                raise _Starved(level, f"{len(paths)} paths at {hub}, {d} needed for the last level")
            for P in paths[:d]:
                self.attach(P.vertices[1], hub)
            return

        floor = paths_needed(d, r - 1)
        largest = (len(paths) - 1) // d - 1
        if largest < floor:
            raise _Starved(
                level, f"{len(paths)} paths at {hub}, {(floor + 1) * d + 1} needed for depth {r}"
            )
        system = PathSystem(hub, self.b, tuple(paths))
        result = None
        for m in range(largest, floor - 1, -1):
            result = banana(self.G, hub, self.b, system, (m + 1) * d)
            if result.ok:
                break
        if not result.ok:
            raise _Starved(level, f"banana at {hub} failed at stage {result.stage}: {result.message}")
        logger.debug("extract_tree: depth %d at %d, blocks of %d", r, hub, m + 1)

        chosen = result.paths
        for i in range(d):
            block = chosen[i * (m + 1):(i + 1) * (m + 1)]
            child = block[0].vertices[1]
            self.attach(child, hub)
            self.grow(child, [_reroute(self.G, child, P) for P in block[1:]], r - 1, level + 1)


def extract_tree(G: Graph, a: int, b: int, system: PathSystem, d: int, r: int) -> Union[TreeWitness, TreeFailure]:
    """
    A subgraph copy of T_d^r rooted at a, avoiding b, inside a and the paths.

    Returns:
        A validated TreeWitness, or TreeFailure naming the level that ran
        short of paths together with the partial tree
    """
    if d < 1 or r < 1:
        raise GraphInputError(f"Invalid T_d^r parameters d={d}, r={r}: both must be >= 1")
    _validate_system(G, a, b, system)
    growth = _TreeGrowth(G, a, b, d)
    try:
        growth.grow(a, list(system.paths), r, 0)
    except _Starved as starved:
        partial = growth.witness() if growth.parent else None
        return TreeFailure(starved.depth, starved.reason, partial)

    witness = growth.witness()
    problem = validate_tree_witness(G, witness, a, b, d, r, system.paths)
    if problem:
        return TreeFailure(0, f"witness failed validation: {problem}", witness)
    return witness


def validate_tree_witness(
    G: Graph,
    J: TreeWitness,
    a: int,
    b: int,
    d: int,
    r: int,
    paths: Optional[Iterable[Path]] = None,
) -> Optional[str]:
    """
    Check J against T_d^r directly.

    The root is a with d children, every other non-leaf has d children,
    every leaf sits at depth r, b is not used, parent edges are edges of G,
    and when paths are given every vertex lies on one of them.
    """
    if J.root != a:
        return f"root is {J.root}, expected {a}"
    if J.depth.get(a) != 0 or a in J.parent:
        return "root has a parent or a non-zero depth"
    if b in J.depth:
        return f"b={b} lies in the tree"
    if set(J.parent) | {a} != set(J.depth):
        return "parent and depth maps cover different vertices"
    G.check_vertices(J.depth)
    for v, u in J.parent.items():
        if not G.has_edge(u, v):
            return f"tree edge {u}-{v} is not an edge of G"
        if J.depth[v] != J.depth[u] + 1:
            return f"depth of {v} is not one more than the depth of its parent {u}"
    for v, k in J.depth.items():
        kids = J.children(v)
        if k < r and len(kids) != d:
            return f"vertex {v} at depth {k} has {len(kids)} children, expected {d}"
        if k == r and kids:
            return f"vertex {v} at depth {r} has children"
        if k > r:
            return f"vertex {v} sits at depth {k} > {r}"
    if paths is not None:
        allowed = {a}
        for P in paths:
            allowed.update(P.vertices)
        outside = sorted(J.vertices - allowed)
        if outside:
            return f"vertex {outside[0]} lies outside the path system"
    return None


# =============================================================================
# CONNECTIFIER OUTCOMES
# =============================================================================

PATH = "path"
SUBDIVIDED_STAR = "subdivided_star"
CATERPILLAR = "caterpillar"
LINE_GRAPH_OF_CATERPILLAR = "line_graph_of_caterpillar"
INSUFFICIENT = "insufficient"


@dataclass(frozen=True)
class ConnectorResult:
    outcome: str
    H: FrozenSet[int] = frozenset()
    hits: FrozenSet[int] = frozenset()
    path: Tuple[int, ...] = ()
    root: Optional[int] = None
    examined: int = 0
    exhausted: bool = False

    @property
    def found(self) -> bool:
        return self.outcome != INSUFFICIENT

    def to_dict(self) -> dict:
        data = {
            "outcome": self.outcome,
            "H": sorted(self.H),
            "H_cap_S": sorted(self.hits),
            "examined": self.examined,
            "budget_exhausted": self.exhausted,
        }
        if self.path:
            data["path"] = list(self.path)
        if self.root is not None:
            data["root"] = self.root
        return data


def _tree_shape(sub: Graph, hits: FrozenSet[int]) -> Optional[Tuple[str, Optional[int]]]:
    zeta = simplicial_set(sub)
    branch = [v for v in sub.vertices if sub.degree(v) >= 3]
    if len(branch) == 1 and zeta <= hits <= zeta | {branch[0]}:
        return SUBDIVIDED_STAR, branch[0]
    if is_caterpillar(sub) and hits == zeta:
        return CATERPILLAR, None
    return None


def classify_connector(G: Graph, H: Iterable[int], S: Iterable[int]) -> Optional[Tuple[str, Optional[int]]]:
    """
    The shape G[H] takes relative to S, or None.

    Returns:
        (outcome, root) with outcome among subdivided_star, caterpillar and
        line_graph_of_caterpillar, checked in that order; root is set for
        the star only
    """
    H = G.check_vertices(H)
    sub, labels = G.induced_subgraph(H)
    if not sub.is_connected():
        return None
    position = {v: i for i, v in enumerate(labels)}
    hits = frozenset(position[v] for v in H & G.check_vertices(S))
    if sub.is_tree():
        shape = _tree_shape(sub, hits)
        if shape is not None:
            outcome, root = shape
            return outcome, labels[root] if root is not None else None
    rooted = root_graph(sub)
    if rooted is not None:
        R, _ = rooted
        if R.is_tree() and is_caterpillar(R) and hits == simplicial_set(sub):
            return LINE_GRAPH_OF_CATERPILLAR, None
    return None


def validate_connector(G: Graph, S: Iterable[int], h: int, result: ConnectorResult) -> Optional[str]:
    """Re-check a connectify outcome against G and S."""
    S = G.check_vertices(S)
    if not result.found:
        return None
    if result.outcome == PATH:
        problem = Path(result.path).check_in(G, induced=True)
        if problem:
            return problem
        if len(set(result.path) & S) < h:
            return f"path holds {len(set(result.path) & S)} vertices of S, fewer than {h}"
        return None
    if result.hits != result.H & S or len(result.hits) != h:
        return f"H meets S in {len(result.H & S)} vertices, expected {h}"
    shape = classify_connector(G, result.H, S)
    if shape is None or shape[0] != result.outcome:
        return f"H is not a {result.outcome} with the required simplicial vertices"
    return None


class _Budget(Exception):
    pass


def _path_through(G: Graph, S_mask: int, h: int, counter: List[int]) -> Optional[Tuple[int, ...]]:
    """An induced path starting in S that picks up h vertices of S."""

    def extend(path: List[int], blocked: int, hits: int) -> Optional[Tuple[int, ...]]:
        counter[0] += 1
        if counter[0] > CONNECTIFY_BUDGET:
            raise _Budget()
        if hits == h:
            return tuple(path)
        for w in iter_bits(G.mask(path[-1]) & ~blocked):
            path.append(w)
            found = extend(
                path,
                blocked | G.mask(path[-2]) | (1 << w),
                hits + ((S_mask >> w) & 1),
            )
            path.pop()
            if found is not None:
                return found
        return None

    for s in iter_bits(S_mask):
        found = extend([s], 1 << s, 1)
        if found is not None:
            return found
    return None


def _connected_sets(G: Graph, S_mask: int, h: int) -> Iterator[int]:
    """Connected vertex sets holding exactly h vertices of S, each listed once."""

    def extend(sub: int, extension: int, floor: int) -> Iterator[int]:
        count = bin(sub & S_mask).count("1")
        if count == h:
            yield sub
        if count > h:
            return
        closed = G.closed_neighbors_of_mask(sub)
        while extension:
            w = (extension & -extension).bit_length() - 1
            extension &= extension - 1
            fresh = G.mask(w) & ~closed & floor
            yield from extend(sub | (1 << w), extension | fresh, floor)

    for v in G.vertices:
        floor = G.full_mask & ~((1 << (v + 1)) - 1)
        yield from extend(1 << v, G.mask(v) & floor, floor)


def connectify(G: Graph, S: Iterable[int], h: int) -> Union[ConnectorResult, Inconclusive]:
    """
    Look for an induced path through h vertices of S, else an induced H
    with |H & S| = h that is a subdivided star, a caterpillar or the line
    graph of a caterpillar with the matching simplicial vertices.

    Returns:
        ConnectorResult (outcome "insufficient" when the search found none),
        or Inconclusive above CONNECTIFY_MAX_N / CONNECTIFY_MAX_H

    Raises:
        PreconditionError: if G is not connected
    """
    S = G.check_vertices(S)
    if h < 1:
        raise GraphInputError(f"Invalid h={h}: must be >= 1")
    if G.n > CONNECTIFY_MAX_N or h > CONNECTIFY_MAX_H:
        return Inconclusive("connectify above cap", {"n": G.n, "h": h})
    if G.n == 0 or not G.is_connected():
        raise PreconditionError("connectify needs a connected graph")
    if len(S) < h:
        return ConnectorResult(INSUFFICIENT)

    S_mask = to_mask(S)
    counter = [0]
    try:
        path = _path_through(G, S_mask, h, counter)
    except _Budget:
        logger.warning("connectify: budget of %d spent on paths", CONNECTIFY_BUDGET)
        return ConnectorResult(INSUFFICIENT, examined=counter[0], exhausted=True)
    if path is not None:
        members = frozenset(path)
        return ConnectorResult(PATH, members, members & S, path=path, examined=counter[0])

    examined = counter[0]
    for mask in _connected_sets(G, S_mask, h):
        examined += 1
        if examined > CONNECTIFY_BUDGET:
            logger.warning("connectify: budget of %d spent on connected sets", CONNECTIFY_BUDGET)
            return ConnectorResult(INSUFFICIENT, examined=examined, exhausted=True)
        H = frozenset(iter_bits(mask))
        shape = classify_connector(G, H, S)
        if shape is not None:
            outcome, root = shape
            return ConnectorResult(outcome, H, H & S, root=root, examined=examined)
    return ConnectorResult(INSUFFICIENT, examined=examined)


# =============================================================================
# TRICHOTOMY
# =============================================================================

@dataclass(frozen=True)
class TrichotomyResult:
    """outcome is "biclique", "clique" or "tree"."""
    outcome: str
    vertices: Tuple[int, ...]
    tree: Optional[TreeWitness] = None
    sides: Tuple[Tuple[int, ...], ...] = ()

    def to_dict(self) -> dict:
        data = {"outcome": self.outcome, "vertices": list(self.vertices)}
        if self.tree is not None:
            data["tree"] = self.tree.to_dict()
        if self.sides:
            data["sides"] = [list(side) for side in self.sides]
        return data


def _tree_from_mapping(T: Graph, mapping: Dict[int, int]) -> TreeWitness:
    distance = T.distances_from(0)
    parent = {}
    for v in T.vertices:
        if v:
            up = next(u for u in T.neighbors(v) if distance[u] < distance[v])
            parent[mapping[v]] = mapping[up]
    return TreeWitness(mapping[0], parent, {mapping[v]: k for v, k in distance.items()})


def kp_trichotomy(G: Graph, d: int, r: int, s: int, t: int) -> Union[TrichotomyResult, Inconclusive, None]:
    """
    An induced K_{s,s}, a K_t or an induced T_d^r, searched in that order.

    Returns:
        The first outcome found, None after an exhaustive miss, or
        Inconclusive above TRICHOTOMY_MAX_N
    """
    if min(d, r, s, t) < 1:
        raise GraphInputError(f"Invalid parameters d={d}, r={r}, s={s}, t={t}: all must be >= 1")
    if G.n > TRICHOTOMY_MAX_N:
        return Inconclusive("trichotomy search above cap", {"n": G.n, "cap": TRICHOTOMY_MAX_N})
    biclique = find_biclique(G, s)
    if biclique is not None:
        X, Y = biclique
        return TrichotomyResult("biclique", tuple(sorted(X + Y)), sides=(X, Y))
    clique = find_clique(G, t)
    if clique is not None:
        return TrichotomyResult("clique", clique)
    T, _ = make_T_d_r(d, r)
    mapping = contains_induced(G, T, force=True)
    if mapping is not None:
        tree = _tree_from_mapping(T, mapping)
        return TrichotomyResult("tree", tuple(sorted(tree.vertices)), tree=tree)
    return None


def validate_trichotomy(G: Graph, result: TrichotomyResult, d: int, r: int, s: int, t: int) -> Optional[str]:
    """Re-check one trichotomy outcome against G."""
    G.check_vertices(result.vertices)
    if result.outcome == "clique":
        if len(result.vertices) != t or not G.is_clique(result.vertices):
            return f"{list(result.vertices)} is not a clique of size {t}"
        return None
    if result.outcome == "biclique":
        X, Y = result.sides
        if len(X) != s or len(Y) != s or not (G.is_stable(X) and G.is_stable(Y)):
            return "biclique sides are not stable sets of the right size"
        if any(not G.has_edge(x, y) for x in X for y in Y):
            return "biclique sides are not complete to each other"
        return None
    J = result.tree
    problem = validate_tree_witness(G, J, J.root, -1, d, r)
    if problem:
        return problem
    sub, _ = G.induced_subgraph(J.vertices)
    if not sub.is_tree():
        return "tree vertices carry extra edges"
    return None


# =============================================================================
# FOREST PIPELINE
# =============================================================================

PASSED = "passed"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Stage:
    name: str
    status: str
    message: str = ""
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"stage": self.name, "status": self.status, "message": self.message, "detail": self.detail}


@dataclass
class PipelineReport:
    t: int
    d: int
    r: int
    stages: List[Stage] = field(default_factory=list)

    @property
    def stopped_at(self) -> Optional[str]:
        for stage in self.stages:
            if stage.status != PASSED:
                return stage.name
        return None

    @property
    def inconclusive(self) -> bool:
        return any(stage.status == INCONCLUSIVE for stage in self.stages)

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "d": self.d,
            "r": self.r,
            "stopped_at": self.stopped_at,
            "stages": [stage.to_dict() for stage in self.stages],
        }


def forest_shape(F: Graph) -> Tuple[int, int]:
    """(d, r): maximum degree and largest component radius of F, each at least 1."""
    if F.n == 0 or not F.is_forest():
        raise GraphInputError("Invalid forest: F must be a non-empty forest")
    radius = 0
    for component in F.components():
        sub, _ = F.induced_subgraph(component)
        radius = max(radius, nx.radius(sub.to_networkx()))
    return max(1, F.max_degree()), max(1, radius)


def _block_pair(G: Graph, witness: StrongBlockWitness) -> Optional[Tuple[int, int, PathSystem]]:
    for pair, system in sorted(witness.systems.items()):
        if not G.has_edge(*pair):
            return pair[0], pair[1], system
    return None


def forest_pipeline(G: Graph, F: Graph, t: int, force: bool = False, cache=None) -> PipelineReport:
    """
    Walk the forest argument on one host: membership in C_t(F), treewidth,
    a strong block, a non-adjacent pair in it, and a T_d^r grown from the
    pair's paths. Stops at the first stage that fails or cannot decide.
    """
    d, r = forest_shape(F)
    report = PipelineReport(t, d, r)
    stages = report.stages

    try:
        membership = class_membership(G, t, F, force=force)
    except CapExceededError as exc:
        stages.append(Stage("membership", INCONCLUSIVE, str(exc)))
        return report
    if not membership.in_class_t_forest:
        stages.append(Stage("membership", FAILED, "the host is outside C_t(F)", membership.to_dict()))
        return report
    stages.append(Stage("membership", PASSED, "", membership.to_dict()))

    width = treewidth(G, force=force, cache=cache)
    stages.append(Stage("treewidth", PASSED, "" if width.exact else "bounds only", width.to_dict()))

    needed = max(paths_needed(d, r), t + 1)
    k = min(needed, STRONG_BLOCK_MAX_K)
    margin = {"k": k, "needed": needed}
    found = find_strong_block(G, k)
    if isinstance(found, Inconclusive):
        stages.append(Stage("strong_block", INCONCLUSIVE, found.reason, {**margin, **found.to_dict()}))
        return report
    if found is None:
        stages.append(Stage("strong_block", FAILED, f"no strong {k}-block", margin))
        return report
    stages.append(Stage("strong_block", PASSED, "" if k == needed else "block size capped", {**margin, **found.to_dict()}))

    pair = _block_pair(G, found)
    if pair is None:
        stages.append(Stage("pair", FAILED, "every pair in the block is adjacent", {"block": list(found.block)}))
        return report
    a, b, system = pair
    stages.append(Stage("pair", PASSED, "", system.to_dict()))

    grown = extract_tree(G, a, b, system, d, r)
    if isinstance(grown, TreeFailure):
        stages.append(Stage("extract_tree", FAILED, grown.reason, grown.to_dict()))
        return report
    stages.append(Stage("extract_tree", PASSED, "", grown.to_dict()))
    return report
