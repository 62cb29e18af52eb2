"""
Exhaustive detectors for the forbidden configurations.

=============================================================================
HOW DETECTION WORKS
=============================================================================

Each detector enumerates skeletons first (the two ends of a theta, the base
triangle and apex of a pyramid, the two triangles of a prism) and then grows
induced paths between the skeleton vertices by depth-first search on vertex
bitmasks. Paths whose interiors touch a skeleton vertex they must avoid are
cut off early. Three paths are combined only when their interiors are
pairwise disjoint and anticomplete.

Every witness is passed through the validators in embeddings.py before it is
returned. The searches are exponential, so each one has a vertex cap in
config.py; above it a detector raises CapExceededError unless force=True.
=============================================================================
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, Iterator, List, Optional, Tuple, Union

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .config import (
    CLEAN_SEARCH_CAP,
    INDUCED_PATTERN_CAP,
    PRISM_CAP,
    PYRAMID_CAP,
    STRONG_BLOCK_BUDGET,
    STRONG_BLOCK_MAX_K,
    STRONG_BLOCK_MAX_N,
    STRONG_BLOCK_PATH_CUTOFF,
    THETA_CAP,
)
from .embeddings import (
    PrismEmbedding,
    PyramidEmbedding,
    ThetaEmbedding,
    validate_prism,
    validate_pyramid,
    validate_theta,
)
from .errors import CapExceededError, GraphInputError, Inconclusive
from .graph import Graph, Path, PathSystem, iter_bits, to_mask

logger = logging.getLogger(__name__)

DETECT_KINDS = ("theta", "prism", "pyramid", "clique", "biclique", "strong-block")


def _check_cap(operation: str, G: Graph, cap: int, force: bool) -> None:
    if G.n > cap and not force:
        raise CapExceededError(operation, G.n, cap)


# =============================================================================
# INDUCED PATH ENUMERATION
# =============================================================================

def induced_paths(G: Graph, source: int, target: int, allowed: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """
    All induced source-target paths whose interior lies in `allowed`.

    Yields vertex tuples. Once the current end is adjacent to the target the
    only induced continuation is the target itself.
    """
    allowed = G.full_mask if allowed is None else allowed
    allowed &= ~((1 << source) | (1 << target))
    target_bit = 1 << target

    def extend(path: List[int], path_mask: int) -> Iterator[Tuple[int, ...]]:
        last = path[-1]
        if G.mask(last) & target_bit:
            yield tuple(path) + (target,)
            return
        previous = path_mask & ~(1 << last)
        for w in iter_bits(G.mask(last) & allowed & ~path_mask):
            if G.mask(w) & previous:
                continue
            path.append(w)
            yield from extend(path, path_mask | (1 << w))
            path.pop()

    if source == target:
        return
    yield from extend([source], 1 << source)


def _anticomplete(G: Graph, x: int, y: int) -> bool:
    """Masks x and y are disjoint and have no edges between them."""
    return not (G.closed_neighbors_of_mask(x) & y)


def _sorted_paths(paths) -> List[Tuple[int, ...]]:
    return sorted(paths, key=lambda p: (len(p), p))


# =============================================================================
# THETA
# =============================================================================

def find_theta(G: Graph, force: bool = False) -> Optional[ThetaEmbedding]:
    """
    Search for an induced theta.

    Returns:
        The first theta found (ends in lexicographic order, paths sorted by
        length), or None when there is none
    """
    _check_cap("find_theta", G, THETA_CAP, force)
    for a in G.vertices:
        if G.degree(a) < 3:
            continue
        for b in range(a + 1, G.n):
            if G.has_edge(a, b) or G.degree(b) < 3:
                continue
            paths = _sorted_paths(p for p in induced_paths(G, a, b) if len(p) >= 3)
            interiors = [to_mask(p[1:-1]) for p in paths]
            for i, j, k in combinations(range(len(paths)), 3):
                if not _anticomplete(G, interiors[i], interiors[j]):
                    continue
                if not _anticomplete(G, interiors[i], interiors[k]):
                    continue
                if not _anticomplete(G, interiors[j], interiors[k]):
                    continue
                theta = ThetaEmbedding(a, b, tuple(Path(paths[x]) for x in (i, j, k)))
                problem = validate_theta(G, theta)
                if problem:
                    raise RuntimeError(f"find_theta built an invalid theta: {problem}")
                logger.debug("theta found with ends %d, %d", a, b)
                return theta
    return None


# =============================================================================
# PYRAMID
# =============================================================================

def _triangles(G: Graph) -> List[Tuple[int, int, int]]:
    found = []
    for u, v in G.sorted_edges():
        for w in iter_bits(G.mask(u) & G.mask(v)):
            if w > v:
                found.append((u, v, w))
    return found


def find_pyramid(G: Graph, force: bool = False, long_only: bool = False) -> Optional[PyramidEmbedding]:
    """
    Search for an induced pyramid (optionally only long ones).

    For each triangle and apex, the path to b_i must keep its interior away
    from the other two base vertices and their neighbours.
    """
    _check_cap("find_pyramid", G, PYRAMID_CAP, force)
    for base in _triangles(G):
        base_mask = to_mask(base)
        for apex in G.vertices:
            if base_mask >> apex & 1:
                continue
            if bin(G.mask(apex) & base_mask).count("1") > 1:
                continue
            options = []
            for i, b in enumerate(base):
                others = base_mask & ~(1 << b)
                allowed = G.full_mask & ~G.closed_neighbors_of_mask(others)
                candidates = _sorted_paths(induced_paths(G, apex, b, allowed))
                if long_only:
                    candidates = [p for p in candidates if len(p) >= 3]
                options.append(candidates)
            if not all(options):
                continue
            found = _combine_pyramid(G, apex, base, options)
            if found is not None:
                problem = validate_pyramid(G, found)
                if problem:
                    raise RuntimeError(f"find_pyramid built an invalid pyramid: {problem}")
                logger.debug("pyramid found with apex %d over %s", apex, base)
                return found
    return None


def _combine_pyramid(G: Graph, apex: int, base, options) -> Optional[PyramidEmbedding]:
    interiors = [[to_mask(p[1:-1]) for p in paths] for paths in options]
    for i0, p0 in enumerate(options[0]):
        for i1, p1 in enumerate(options[1]):
            if not _anticomplete(G, interiors[0][i0], interiors[1][i1]):
                continue
            for i2, p2 in enumerate(options[2]):
                if not _anticomplete(G, interiors[0][i0], interiors[2][i2]):
                    continue
                if not _anticomplete(G, interiors[1][i1], interiors[2][i2]):
                    continue
                if sum(1 for p in (p0, p1, p2) if len(p) == 2) > 1:
                    continue
                return PyramidEmbedding(apex, tuple(base), (Path(p0), Path(p1), Path(p2)))
    return None


# =============================================================================
# PRISM
# =============================================================================

def find_prism(G: Graph, force: bool = False) -> Optional[PrismEmbedding]:
    """Search for an induced prism over every pair of disjoint triangles."""
    _check_cap("find_prism", G, PRISM_CAP, force)
    triangles = _triangles(G)
    for x, A in enumerate(triangles):
        for B0 in triangles[x + 1:]:
            if set(A) & set(B0):
                continue
            for B in permutations(B0):
                matched = {(A[i], B[i]) for i in range(3)}
                if any(
                    G.has_edge(u, v) and (u, v) not in matched
                    for u in A for v in B
                ):
                    continue
                found = _prism_paths(G, A, B)
                if found is not None:
                    problem = validate_prism(G, found)
                    if problem:
                        raise RuntimeError(f"find_prism built an invalid prism: {problem}")
                    logger.debug("prism found over %s and %s", A, B)
                    return found
    return None


def _prism_paths(G: Graph, A, B) -> Optional[PrismEmbedding]:
    options = []
    for i in range(3):
        others = to_mask(v for j in range(3) if j != i for v in (A[j], B[j]))
        allowed = G.full_mask & ~G.closed_neighbors_of_mask(others)
        paths = _sorted_paths(induced_paths(G, A[i], B[i], allowed))
        if not paths:
            return None
        options.append(paths)
    interiors = [[to_mask(p[1:-1]) for p in paths] for paths in options]
    for i0, p0 in enumerate(options[0]):
        for i1, p1 in enumerate(options[1]):
            if not _anticomplete(G, interiors[0][i0], interiors[1][i1]):
                continue
            for i2, p2 in enumerate(options[2]):
                if _anticomplete(G, interiors[0][i0], interiors[2][i2]) and _anticomplete(
                    G, interiors[1][i1], interiors[2][i2]
                ):
                    return PrismEmbedding(tuple(A), tuple(B), (Path(p0), Path(p1), Path(p2)))
    return None


# =============================================================================
# WHOLE-GRAPH RECOGNITION
# =============================================================================

def _walk(G: Graph, start: int, first: int, stop: set) -> Optional[List[int]]:
    """Follow degree-2 vertices from start through first until a stop vertex."""
    path = [start, first]
    previous, current = start, first
    while current not in stop:
        if G.degree(current) != 2:
            return None
        nxt = [w for w in G.neighbors(current) if w != previous][0]
        if nxt in path:
            return None
        path.append(nxt)
        previous, current = current, nxt
    return path


def is_theta_graph(G: Graph) -> bool:
    """True iff G itself is a theta."""
    ends = [v for v in G.vertices if G.degree(v) == 3]
    if len(ends) != 2 or any(G.degree(v) != 2 for v in G.vertices if v not in ends):
        return False
    a, b = ends
    walks = [_walk(G, a, x, {a, b}) for x in G.neighbors(a)]
    if any(w is None or w[-1] != b for w in walks):
        return False
    theta = ThetaEmbedding(a, b, tuple(Path(tuple(w)) for w in walks))
    return len(theta.vertices()) == G.n and validate_theta(G, theta) is None


def is_pyramid_graph(G: Graph) -> bool:
    """True iff G itself is a pyramid."""
    heavy = [v for v in G.vertices if G.degree(v) == 3]
    if len(heavy) != 4 or any(G.degree(v) != 2 for v in G.vertices if v not in heavy):
        return False
    for apex in heavy:
        base = [v for v in heavy if v != apex]
        if not G.is_clique(base):
            continue
        walks = [_walk(G, apex, x, set(heavy)) for x in G.neighbors(apex)]
        if any(w is None or w[-1] not in base for w in walks):
            continue
        walks.sort(key=lambda w: base.index(w[-1]))
        if [w[-1] for w in walks] != base:
            continue
        pyramid = PyramidEmbedding(apex, tuple(base), tuple(Path(tuple(w)) for w in walks))
        if len(pyramid.vertices()) == G.n and validate_pyramid(G, pyramid) is None:
            return True
    return False


def is_prism_graph(G: Graph) -> bool:
    """True iff G itself is a prism."""
    if G.n < 6 or any(G.degree(v) not in (2, 3) for v in G.vertices):
        return False
    heavy = [v for v in G.vertices if G.degree(v) == 3]
    if len(heavy) != 6:
        return False
    for A in combinations(heavy, 3):
        B = [v for v in heavy if v not in A]
        if not (G.is_clique(A) and G.is_clique(B)):
            continue
        walks = []
        for a in A:
            out = [w for w in G.neighbors(a) if w not in A]
            walk = _walk(G, a, out[0], set(heavy)) if len(out) == 1 else None
            if walk is None or walk[-1] not in B:
                break
            walks.append(walk)
        if len(walks) != 3 or len({w[-1] for w in walks}) != 3:
            continue
        prism = PrismEmbedding(tuple(A), tuple(w[-1] for w in walks), tuple(Path(tuple(w)) for w in walks))
        if len(prism.vertices()) == G.n and validate_prism(G, prism) is None:
            return True
    return False


# =============================================================================
# CLIQUES, BICLIQUES, INDUCED PATTERNS
# =============================================================================

def find_clique(G: Graph, k: int) -> Optional[Tuple[int, ...]]:
    """The lexicographically first k-clique, or None."""
    if k < 1:
        raise GraphInputError(f"Invalid clique size k={k}: must be >= 1")
    best = None
    for clique in nx.find_cliques(G.to_networkx()):
        if len(clique) >= k:
            candidate = next(c for c in combinations(sorted(clique), k) if G.is_clique(c))
            if best is None or candidate < best:
                best = candidate
    return best


def find_biclique(G: Graph, k: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Stable sets X, Y of size k, complete to each other (an induced K_{k,k})."""
    if k < 1:
        raise GraphInputError(f"Invalid biclique size k={k}: must be >= 1")
    for X in combinations(G.vertices, k):
        if not G.is_stable(X):
            continue
        common = G.full_mask
        for x in X:
            common &= G.mask(x)
        pool = [v for v in iter_bits(common) if v > X[0]]
        for Y in combinations(pool, k):
            if G.is_stable(Y):
                return X, Y
    return None


def contains_induced(G: Graph, H: Graph, force: bool = False) -> Optional[Dict[int, int]]:
    """
    An induced copy of H in G.

    Returns:
        Mapping from the vertices of H to vertices of G, or None
    """
    if H.n > INDUCED_PATTERN_CAP and not H.is_forest() and not force:
        raise CapExceededError("contains_induced", H.n, INDUCED_PATTERN_CAP)
    if H.n == 0:
        return {}
    if H.n > G.n:
        return None
    matcher = GraphMatcher(G.to_networkx(), H.to_networkx())
    for mapping in matcher.subgraph_isomorphisms_iter():
        return {h: g for g, h in sorted(mapping.items(), key=lambda item: item[1])}
    return None


# =============================================================================
# CLASS MEMBERSHIP
# =============================================================================

@dataclass(frozen=True)
class MembershipReport:
    """Membership in C, C_t and optionally C_t(F), each negative with a witness."""
    t: int
    theta: Optional[ThetaEmbedding]
    prism: Optional[PrismEmbedding]
    clique: Optional[Tuple[int, ...]]
    forest_copy: Optional[Dict[int, int]] = None
    forest_checked: bool = False

    @property
    def in_class(self) -> bool:
        return self.theta is None and self.prism is None

    @property
    def in_class_t(self) -> bool:
        return self.in_class and self.clique is None

    @property
    def in_class_t_forest(self) -> Optional[bool]:
        if not self.forest_checked:
            return None
        return self.in_class_t and self.forest_copy is None

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "in_C": self.in_class,
            "in_C_t": self.in_class_t,
            "in_C_t_F": self.in_class_t_forest,
            "witnesses": {
                "theta": self.theta.to_dict() if self.theta else None,
                "prism": self.prism.to_dict() if self.prism else None,
                "clique": list(self.clique) if self.clique else None,
                "forest": {str(k): v for k, v in self.forest_copy.items()} if self.forest_copy else None,
            },
        }


def class_membership(G: Graph, t: int, F: Optional[Graph] = None, force: bool = False) -> MembershipReport:
    """Run every detector the classes need and collect the witnesses."""
    if t < 1:
        raise GraphInputError(f"Invalid clique bound t={t}: must be >= 1")
    if F is not None and not F.is_forest():
        raise GraphInputError("Invalid forest: the pattern F contains a cycle")
    theta = find_theta(G, force=force)
    prism = find_prism(G, force=force)
    clique = find_clique(G, t)
    copy = contains_induced(G, F, force=force) if F is not None else None
    return MembershipReport(t, theta, prism, clique, copy, F is not None)


def in_class(G: Graph, t: Optional[int] = None, force: bool = False) -> bool:
    """Theta-free, prism-free and (when t is given) K_t-free."""
    if find_theta(G, force=force) or find_prism(G, force=force):
        return False
    return t is None or find_clique(G, t) is None


# =============================================================================
# t-CLEAN
# =============================================================================

@dataclass(frozen=True)
class CleanReport:
    clean: bool
    method: str
    obstruction: Optional[str] = None
    witness: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "clean": self.clean,
            "method": self.method,
            "obstruction": self.obstruction,
            "witness": list(self.witness),
        }


def _reduced_skeleton(g: nx.Graph) -> Optional[nx.Graph]:
    """
    Suppress degree-2 vertices; edges carry the length of the chain they replace.

    Returns None when the reduction would need a loop or a parallel edge.
    """
    branch = [v for v in g.nodes() if g.degree(v) != 2]
    if not branch:
        return None
    branch_set = set(branch)
    skeleton = nx.Graph()
    skeleton.add_nodes_from(branch)
    seen = set()
    for u in sorted(branch):
        for first in sorted(g[u]):
            if (u, first) in seen:
                continue
            previous, current, length = u, first, 1
            while current not in branch_set:
                nxt = [w for w in g[current] if w != previous][0]
                previous, current, length = current, nxt, length + 1
            seen.add((current, previous))
            if current == u or skeleton.has_edge(u, current):
                return None
            skeleton.add_edge(u, current, length=length)
    return skeleton


def _is_wall_subdivision(g: nx.Graph, wall_skeleton: nx.Graph) -> bool:
    if not nx.is_connected(g) or any(d not in (2, 3) for _, d in g.degree()):
        return False
    skeleton = _reduced_skeleton(g)
    if skeleton is None or skeleton.number_of_edges() != wall_skeleton.number_of_edges():
        return False
    matcher = GraphMatcher(skeleton, wall_skeleton, edge_match=lambda x, w: x["length"] >= w["length"])
    return matcher.is_isomorphic()


def is_t_clean(G: Graph, t: int, force: bool = False) -> Union[CleanReport, Inconclusive]:
    """
    Decide whether G contains no t-basic obstruction.

    For G in the class (no theta, no prism) this is K_t-freeness. Otherwise
    K_t, K_{t,t}, induced wall subdivisions and their line graphs are
    searched directly, which is only attempted up to CLEAN_SEARCH_CAP.
    """
    from .generators import make_wall

    if t < 1:
        raise GraphInputError(f"Invalid t={t}: must be >= 1")
    clique = find_clique(G, t)
    if clique is not None:
        return CleanReport(False, "direct", "clique", clique)
    if G.n <= min(THETA_CAP, PRISM_CAP) or force:
        if in_class(G, force=force):
            return CleanReport(True, "class-shortcut")
    if G.n > CLEAN_SEARCH_CAP and not force:
        return Inconclusive("t-clean search above cap", {"n": G.n, "cap": CLEAN_SEARCH_CAP})

    biclique = find_biclique(G, t)
    if biclique is not None:
        return CleanReport(False, "direct", "biclique", biclique[0] + biclique[1])
    if t <= 2:
        return CleanReport(True, "direct")

    wall = make_wall(t)
    wall_skeleton = _reduced_skeleton(wall.to_networkx())
    g = G.to_networkx()
    for size in range(wall.n, G.n + 1):
        for X in combinations(G.vertices, size):
            sub = g.subgraph(X)
            if _is_wall_subdivision(sub, wall_skeleton):
                return CleanReport(False, "direct", "wall-subdivision", X)
    for size in range(len(wall.edges), G.n + 1):
        for X in combinations(G.vertices, size):
            sub = g.subgraph(X)
            if not nx.is_connected(sub):
                continue
            try:
                root = nx.inverse_line_graph(sub)
            except nx.NetworkXError:
                continue
            if _is_wall_subdivision(root, wall_skeleton):
                return CleanReport(False, "direct", "wall-line-graph", X)
    return CleanReport(True, "direct")


# =============================================================================
# STRONG BLOCKS
# =============================================================================

@dataclass(frozen=True)
class StrongBlockWitness:
    block: Tuple[int, ...]
    systems: Dict[Tuple[int, int], PathSystem] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": "strong-block",
            "block": list(self.block),
            "systems": [
                {"pair": list(pair), "paths": [list(p.vertices) for p in system.paths]}
                for pair, system in sorted(self.systems.items())
            ],
        }


def validate_strong_block(G: Graph, witness: StrongBlockWitness, k: int) -> Optional[str]:
    """
    Check the block condition verbatim: k distinct internally disjoint paths
    per pair, and P & P' = {x,y} & {x',y'} across distinct pairs.
    """
    block = witness.block
    if len(set(block)) < k:
        return f"block has {len(set(block))} vertices, fewer than k={k}"
    for pair in combinations(sorted(block), 2):
        system = witness.systems.get(pair)
        if system is None:
            return f"no path system for pair {list(pair)}"
        if len(system) < k:
            return f"pair {list(pair)} has only {len(system)} paths"
        if len({p.vertices for p in system.paths}) != len(system):
            return f"pair {list(pair)} repeats a path"
        problem = system.check_in(G, induced=False)
        if problem:
            return f"pair {list(pair)}: {problem}"
    pairs = sorted(witness.systems)
    for i, first in enumerate(pairs):
        for second in pairs[i + 1:]:
            shared = set(first) & set(second)
            for P in witness.systems[first].paths:
                for Q in witness.systems[second].paths:
                    if P.as_set() & Q.as_set() != shared:
                        return f"paths {list(P.vertices)} and {list(Q.vertices)} meet outside {sorted(shared)}"
    return None


class _BlockSearch:
    """Backtracking over pairs; interiors are globally disjoint and avoid B."""

    def __init__(self, G: Graph, k: int, budget: int):
        self.G = G
        self.k = k
        self.budget = budget
        self.nodes = 0

    def simple_paths(self, x: int, y: int, allowed: int) -> List[Tuple[int, ...]]:
        G = self.G
        found = []

        def extend(path: List[int], path_mask: int) -> None:
            if len(path) - 1 >= STRONG_BLOCK_PATH_CUTOFF:
                return
            for w in iter_bits(G.mask(path[-1]) & (allowed | (1 << y)) & ~path_mask):
                if w == y:
                    found.append(tuple(path) + (y,))
                    continue
                path.append(w)
                extend(path, path_mask | (1 << w))
                path.pop()

        extend([x], 1 << x)
        return _sorted_paths(found)

    def solve(self, block: Tuple[int, ...]):
        pairs = list(combinations(block, 2))
        free = self.G.full_mask & ~to_mask(block)
        return self._pair(pairs, 0, free, {})

    def _pair(self, pairs, index, free, chosen):
        if index == len(pairs):
            return dict(chosen)
        x, y = pairs[index]
        paths = self.simple_paths(x, y, free)
        return self._choose(pairs, index, free, chosen, paths, 0, [])

    def _choose(self, pairs, index, free, chosen, paths, start, picked):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetSpent()
        if len(picked) == self.k:
            chosen[pairs[index]] = tuple(picked)
            result = self._pair(pairs, index + 1, free, chosen)
            del chosen[pairs[index]]
            return result
        for i in range(start, len(paths)):
            interior = to_mask(paths[i][1:-1])
            if interior & ~free:
                continue
            picked.append(paths[i])
            result = self._choose(pairs, index, free & ~interior, chosen, paths, i + 1, picked)
            picked.pop()
            if result is not None:
                return result
        return None


class _BudgetSpent(Exception):
    pass


def find_strong_block(G: Graph, k: int) -> Union[StrongBlockWitness, Inconclusive, None]:
    """
    Search the k-subsets of V(G) for a strong k-block.

    Paths are ordinary (not necessarily induced) paths of at most
    STRONG_BLOCK_PATH_CUTOFF edges.

    Returns:
        A validated witness, None after an exhaustive miss, or Inconclusive
        above the caps or when the node budget runs out
    """
    if k < 1:
        raise GraphInputError(f"Invalid block size k={k}: must be >= 1")
    if k > STRONG_BLOCK_MAX_K or G.n > STRONG_BLOCK_MAX_N:
        return Inconclusive("strong-block search above cap", {"k": k, "n": G.n})
    search = _BlockSearch(G, k, STRONG_BLOCK_BUDGET)
    for block in combinations(G.vertices, k):
        if any(G.degree(v) < k * (k - 1) for v in block):
            continue
        try:
            found = search.solve(block)
        except _BudgetSpent:
            logger.warning("find_strong_block: budget of %d nodes spent", STRONG_BLOCK_BUDGET)
            return Inconclusive("strong-block budget exhausted", {"budget": STRONG_BLOCK_BUDGET})
        if found is not None:
            systems = {
                pair: PathSystem(pair[0], pair[1], tuple(Path(p) for p in paths))
                for pair, paths in found.items()
            }
            witness = StrongBlockWitness(block, systems)
            problem = validate_strong_block(G, witness, k)
            if problem:
                raise RuntimeError(f"find_strong_block built an invalid block: {problem}")
            return witness
    return None
