"""
Exact treewidth for small graphs, with validated tree decompositions.

=============================================================================
HOW THE EXACT SEARCH WORKS
=============================================================================

Treewidth equals the minimum over elimination orderings of the largest
"degree at elimination time". For an already-eliminated set S and a vertex
v outside it, that degree is |Q(S, v)|: the vertices outside S + {v} that v
reaches through paths whose interior lies in S. It depends only on S, not on
the order inside S, so "tw <= k" is a search over sets S:

    S is good  iff  n - |S| <= k + 1
               or   some v with |Q(S, v)| <= k has S + {v} good

Dead sets are memoised. A simplicial vertex of the current elimination graph
can always be eliminated first, and so can an almost simplicial one of
degree at most k. This prunes most branches on sparse input.

k runs upward from a contraction (minor-min-width) lower bound to the
min-fill-in upper bound (networkx heuristic); the first k that succeeds is
the treewidth. The winning ordering is turned into a tree decomposition and
validated before it is returned.
=============================================================================
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from .config import TREEWIDTH_EXACT_CAP
from .errors import CapExceededError, GraphInputError
from .graph import Graph, iter_bits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: Tuple[FrozenSet[int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_dict(self) -> dict:
        return {
            "tree": {"n": self.tree.n, "edges": [list(e) for e in self.tree.sorted_edges()]},
            "bags": [sorted(b) for b in self.bags],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TreeDecomposition":
        tree = Graph.from_edges(data["tree"]["n"], data["tree"]["edges"])
        return cls(tree, tuple(frozenset(b) for b in data["bags"]))


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of validate_decomposition; `code` names the first failed condition."""
    ok: bool
    width: Optional[int] = None
    code: Optional[str] = None
    message: str = ""
    witness: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        if self.ok:
            return {"ok": True, "width": self.width}
        return {"ok": False, "violation": self.code, "message": self.message, "witness": list(self.witness)}


@dataclass(frozen=True)
class TreewidthResult:
    width: Optional[int]
    decomposition: TreeDecomposition
    exact: bool
    lower: int
    upper: int
    stats: Dict[str, int] = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "treewidth": self.width,
            "exact": self.exact,
            "lower": self.lower,
            "upper": self.upper,
            "decomposition": self.decomposition.to_dict(),
        }


# =============================================================================
# VALIDATION
# =============================================================================

def validate_decomposition(G: Graph, D: TreeDecomposition) -> DecompositionReport:
    """
    Check the three tree-decomposition conditions against G.

    Returns:
        ok report with width = max bag size - 1, or the first violated
        condition: not-a-tree, bag-range, vertex-coverage, edge-coverage,
        connectivity
    """
    if not D.tree.is_tree() or len(D.bags) != D.tree.n:
        return DecompositionReport(False, code="not-a-tree", message="decomposition tree is not a tree with one bag per node")

    for node, bag in enumerate(D.bags):
        for v in bag:
            if not (0 <= v < G.n):
                return DecompositionReport(False, code="bag-range", message=f"bag {node} holds unknown vertex {v}", witness=(node, v))

    for v in G.vertices:
        if not any(v in bag for bag in D.bags):
            return DecompositionReport(False, code="vertex-coverage", message=f"vertex {v} is in no bag", witness=(v,))

    for u, v in G.sorted_edges():
        if not any(u in bag and v in bag for bag in D.bags):
            return DecompositionReport(False, code="edge-coverage", message=f"edge {{{u},{v}}} is in no bag", witness=(u, v))

    for v in G.vertices:
        support = [node for node, bag in enumerate(D.bags) if v in bag]
        if not D.tree.is_connected(support):
            return DecompositionReport(False, code="connectivity", message=f"bags holding {v} are not connected", witness=(v,))

    return DecompositionReport(True, width=D.width)


# =============================================================================
# BOUNDS
# =============================================================================

def degeneracy_lower_bound(G: Graph) -> int:
    if G.n == 0 or not G.edges:
        return 0
    return max(nx.core_number(G.to_networkx()).values())


def minor_min_width(G: Graph) -> int:
    """
    Contraction lower bound: repeatedly contract a min-degree vertex into its
    neighbour with fewest common neighbours, tracking the largest min degree.
    """
    g = G.to_networkx()
    best = 0
    while g.number_of_nodes() > 0:
        d, u = min((g.degree(x), x) for x in g.nodes())
        best = max(best, d)
        nb = set(g[u])
        if nb:
            _, v = min((len(set(g[w]) & nb), w) for w in nb)
            g = nx.contracted_nodes(g, v, u, self_loops=False)
        else:
            g.remove_node(u)
    return best


def lower_bound(G: Graph) -> int:
    return max(degeneracy_lower_bound(G), minor_min_width(G))


def heuristic_decomposition(G: Graph) -> TreeDecomposition:
    """Min-fill-in decomposition from networkx, relabelled to our types."""
    width, tree = treewidth_min_fill_in(G.to_networkx())
    if tree.number_of_nodes() == 0:
        return TreeDecomposition(Graph(1), (frozenset(G.vertices),))
    nodes = sorted(tree.nodes(), key=lambda bag: tuple(sorted(bag)))
    index = {bag: i for i, bag in enumerate(nodes)}
    edges = [(index[x], index[y]) for x, y in tree.edges()]
    return TreeDecomposition(Graph.from_edges(len(nodes), edges), tuple(frozenset(b) for b in nodes))


# =============================================================================
# EXACT SEARCH
# =============================================================================

class _EliminationSearch:
    """Decision procedure for tw <= k over eliminated-set masks."""

    def __init__(self, G: Graph, k: int):
        self.G = G
        self.k = k
        self.dead = set()
        self.nodes = 0

    def q_set(self, eliminated: int, v: int) -> int:
        """Q(S, v) as a mask."""
        G = self.G
        seen = 1 << v
        frontier = 1 << v
        reached = 0
        while frontier:
            step = 0
            for w in iter_bits(frontier):
                step |= G.mask(w)
            step &= ~seen
            seen |= step
            reached |= step & ~eliminated
            frontier = step & eliminated
        return reached

    def search(self, eliminated: int, order: List[int]) -> Optional[List[int]]:
        self.nodes += 1
        remaining = self.G.full_mask & ~eliminated
        if bin(remaining).count("1") <= self.k + 1:
            return order
        if eliminated in self.dead:
            return None

        candidates = []
        q_of = {}
        for v in iter_bits(remaining):
            q = self.q_set(eliminated, v)
            q_of[v] = q
            if bin(q).count("1") <= self.k:
                candidates.append(v)

        for v in candidates:
            if self._is_safe(eliminated, v, q_of):
                result = self.search(eliminated | (1 << v), order + [v])
                if result is None:
                    self.dead.add(eliminated)
                return result

        candidates.sort(key=lambda v: (bin(q_of[v]).count("1"), v))
        for v in candidates:
            result = self.search(eliminated | (1 << v), order + [v])
            if result is not None:
                return result
        self.dead.add(eliminated)
        return None

    def _is_clique(self, eliminated: int, members: List[int], q_of: dict) -> bool:
        for i, u in enumerate(members):
            reach = q_of.get(u)
            if reach is None:
                reach = self.q_set(eliminated, u)
            for w in members[i + 1:]:
                if not reach >> w & 1:
                    return False
        return True

    def _is_safe(self, eliminated: int, v: int, q_of: dict) -> bool:
        """
        Simplicial or almost simplicial in the elimination graph.

        Eliminating an almost simplicial v contracts one edge, so the rest of
        the graph is a minor of what it was; with deg(v) <= k that never
        turns a yes-instance into a no-instance.
        """
        members = list(iter_bits(q_of[v]))
        if self._is_clique(eliminated, members, q_of):
            return True
        return any(
            self._is_clique(eliminated, [w for w in members if w != u], q_of)
            for u in members
        )


def decomposition_from_order(G: Graph, order: List[int]) -> TreeDecomposition:
    """
    Bags from an elimination prefix; the remaining vertices form one final bag.

    bag_i = {v_i} + Q(S_i, v_i). Its parent is the bag of the earliest-eliminated
    vertex of Q, or the next bag when Q is empty.
    """
    search = _EliminationSearch(G, G.n)
    eliminated = 0
    position = {v: i for i, v in enumerate(order)}
    last = len(order)
    bags: List[FrozenSet[int]] = []
    parents: List[int] = []
    for i, v in enumerate(order):
        q = search.q_set(eliminated, v)
        bags.append(frozenset(iter_bits(q)) | {v})
        later = [position.get(w, last) for w in iter_bits(q)]
        parents.append(min(later) if later else i + 1)
        eliminated |= 1 << v
    bags.append(frozenset(iter_bits(G.full_mask & ~eliminated)))
    edges = [(i, p) for i, p in enumerate(parents)]
    return TreeDecomposition(Graph.from_edges(len(bags), edges), tuple(bags))


def treewidth_at_most(G: Graph, k: int) -> Optional[TreeDecomposition]:
    """A decomposition of width <= k, or None when tw(G) > k."""
    search = _EliminationSearch(G, k)
    order = search.search(0, [])
    logger.debug("tw<=%d: %s after %d nodes", k, "yes" if order is not None else "no", search.nodes)
    if order is None:
        return None
    return decomposition_from_order(G, order)


def treewidth(G: Graph, force: bool = False, cache=None, strict: bool = False) -> TreewidthResult:
    """
    Treewidth with a validated decomposition.

    Args:
        G: Graph with at least one vertex
        force: Run the exact search above TREEWIDTH_EXACT_CAP
        cache: Optional CacheManager for exact results
        strict: Raise CapExceededError above the cap instead of returning bounds

    Returns:
        TreewidthResult; exact=False above the cap (width None, lower/upper bounds)
    """
    if G.n < 1:
        raise GraphInputError("Invalid graph: treewidth needs at least one vertex")

    if cache is not None:
        hit = cache.get_treewidth(G)
        if hit is not None:
            decomposition = TreeDecomposition.from_dict(hit["decomposition"])
            return TreewidthResult(hit["treewidth"], decomposition, True, hit["lower"], hit["upper"])

    lower = lower_bound(G)
    heuristic = heuristic_decomposition(G)
    upper = heuristic.width

    if G.n > TREEWIDTH_EXACT_CAP and not force:
        if strict:
            raise CapExceededError("treewidth", G.n, TREEWIDTH_EXACT_CAP)
        logger.warning("treewidth: n=%d above exact cap %d, returning bounds", G.n, TREEWIDTH_EXACT_CAP)
        return TreewidthResult(None, heuristic, False, lower, upper)

    decomposition = heuristic
    width = upper
    for k in range(lower, upper):
        found = treewidth_at_most(G, k)
        if found is not None:
            decomposition, width = found, k
            break

    report = validate_decomposition(G, decomposition)
    if not report.ok or report.width != width:
        raise RuntimeError(f"treewidth built an invalid decomposition: {report.message}")

    result = TreewidthResult(width, decomposition, True, width, width)
    if cache is not None:
        cache.set_treewidth(G, result.to_dict())
    return result
