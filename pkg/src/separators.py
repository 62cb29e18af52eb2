"""
Where jewels attach, and the separators that follow from it.

=============================================================================
JEWEL LOCALITY
=============================================================================

For a seagull (v, e1, e2) with far ends u1, u2 the attachment region is

    zeta(e1) + zeta(e2) + zeta_e1(u1) + zeta_e2(u2) + zeta(v)

where zeta_e(u) collects the components of zeta(u) that see B(u) only
inside zeta(e, u). In a theta-free host a jewel at the seagull sees nothing
of zeta+(T) outside that region, each jewel has exactly one centre, and on
every long rung of e1 or e2 a jewel sees either nothing or exactly the
interface end r and its neighbour r'. Two jewels at non-adjacent centres are
never joined by a path that stays away from zeta+(T).

=============================================================================
SEPARATORS
=============================================================================

On a rich structure whose residual is anticomplete to zeta+(T):

- jewel_separator cuts a residual vertex x off zeta+(T): contract each jewel
  cluster J_v to one vertex, hang all of them off a new vertex z, and take a
  Menger separator of size <= 2 between x and z. Expanded back it has fewer
  than 2j vertices.
- apex_separator cuts a from any x outside N[a], by cases on where x lives.
  It uses K_v (the lexicographically first maximal clique of B(v)), C_v
  (B(v) at leaves) and the unions M, N of jewel clusters and K sets over tree
  neighbourhoods. The bound is sigma(t, delta).
- seed_separator recognises an a-seed, builds its caterpillar strip,
  saturates it and hands over to apex_separator. The bound is s(t).

Every certificate is re-verified from the components of G - S.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from .errors import GraphInputError, HypothesisViolation, ObstructionFound, PreconditionError
from .graph import (
    Edge,
    Graph,
    PathSystem,
    SeparatorCertificate,
    certify_separator,
    edge_key,
    from_mask,
    simplicial_set,
    to_mask,
)
from .generators import is_caterpillar, root_graph
from .menger import menger
from .obstructions import find_clique
from .pyramids import extract_obstruction, is_trapped
from .ramsey import Quantity, jewel_bound, seed_bound, sigma_bound
from .saturation import residual_violation, saturate
from .strips import (
    JewelIndex,
    Seagull,
    StripStructure,
    caterpillar_strip,
    check_claw,
    find_strip_jewels,
    require_strip,
    rungs,
)

logger = logging.getLogger(__name__)


# =============================================================================
# ATTACHMENT REGIONS
# =============================================================================

@dataclass(frozen=True)
class AttachmentRegion:
    seagull: Seagull
    vertices: FrozenSet[int]

    def to_dict(self) -> dict:
        v, e1, e2 = self.seagull
        return {"v": v, "e1": list(e1), "e2": list(e2), "vertices": sorted(self.vertices)}


def pendant_components(S: StripStructure, u: int, e: Edge) -> FrozenSet[int]:
    """zeta_e(u): components of zeta(u) whose neighbours in B(u) lie in zeta(e, u)."""
    G = S.host
    boundary = to_mask(S.boundary(u))
    own = to_mask(S.eta_ev(e, u))
    found = 0
    for component in G.component_masks(to_mask(S.eta_v(u))):
        if not G.neighbors_of_mask(component) & boundary & ~own:
            found |= component
    return from_mask(found)


def attachment_region(S: StripStructure, seagull: Seagull) -> AttachmentRegion:
    """
    zeta(v, e1, e2) for a seagull.

    Raises:
        GraphInputError: if e1, e2 are not two distinct tree edges at v
    """
    v, e1, e2 = seagull
    e1, e2 = check_claw(S, v, (e1, e2), 2)
    u1, u2 = S.tree.other_end(e1, v), S.tree.other_end(e2, v)
    vertices = (
        S.eta_e(e1)
        | S.eta_e(e2)
        | pendant_components(S, u1, e1)
        | pendant_components(S, u2, e2)
        | S.eta_v(v)
    )
    return AttachmentRegion((v, e1, e2), vertices)


# =============================================================================
# JEWEL LOCALITY CHECKS
# =============================================================================

@dataclass(frozen=True)
class LocalityViolation:
    """kind is 'containment', 'two_centres' or 'rung_contact'."""
    kind: str
    jewel: int
    seagull: Optional[Seagull]
    detail: dict = field(default_factory=dict)
    witness: object = None

    def to_dict(self) -> dict:
        data = {"kind": self.kind, "jewel": self.jewel, "detail": self.detail}
        if self.seagull is not None:
            v, e1, e2 = self.seagull
            data["seagull"] = {"v": v, "e1": list(e1), "e2": list(e2)}
        data["witness"] = self.witness.to_dict() if self.witness is not None else None
        return data


@dataclass(frozen=True)
class LocalityReport:
    violations: Tuple[LocalityViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


def _pyramid_vertices(index: JewelIndex, seagull: Seagull, x: int) -> FrozenSet[int]:
    sigma = index.witnesses.get((seagull, x))
    return sigma.vertices() if sigma is not None else frozenset()


def verify_jewel_locality(G: Graph, S: StripStructure, index: JewelIndex) -> LocalityReport:
    """
    Check where every indexed jewel attaches.

    A breach means the host is not theta-free; a theta is extracted from
    the jewel, its witness pyramid and the offending vertices when that set
    is small enough.
    """
    plus = S.eta_plus_T()
    violations: List[LocalityViolation] = []

    centres: Dict[int, List[int]] = {}
    for (v, _, _), jewels in index.by_seagull.items():
        for x in jewels:
            if v not in centres.setdefault(x, []):
                centres[x].append(v)
    for x, vs in sorted(centres.items()):
        if len(vs) > 1:
            violations.append(LocalityViolation("two_centres", x, None, {"centres": sorted(vs)}))

    cache: Dict[Edge, list] = {}
    for seagull, jewels in sorted(index.by_seagull.items()):
        if not jewels:
            continue
        v, e1, e2 = seagull
        region = attachment_region(S, seagull).vertices
        for x in sorted(jewels):
            pyramid = _pyramid_vertices(index, seagull, x)
            stray = sorted(w for w in G.neighbors(x) if w in plus and w not in region)
            if stray:
                y = stray[0]
                route = G.shortest_path(y, S.apex, within=to_mask(plus - region) | (1 << S.apex))
                witness = extract_obstruction(
                    G, [pyramid | {x, y} | set(route or ()), plus | {x}]
                )
                violations.append(
                    LocalityViolation("containment", x, seagull, {"outside_region": stray}, witness)
                )
            for e in (e1, e2):
                if e not in cache:
                    cache[e] = rungs(S, e)[0]
                for rung in cache[e]:
                    if not rung.is_long:
                        continue
                    piece = rung.from_end(v)
                    seen = [y for y in piece if G.has_edge(x, y)]
                    if seen and seen != list(piece[:2]):
                        witness = extract_obstruction(G, [pyramid | set(piece) | {x}])
                        violations.append(
                            LocalityViolation(
                                "rung_contact",
                                x,
                                seagull,
                                {"rung": list(piece), "seen": seen},
                                witness,
                            )
                        )
    if violations:
        logger.warning("jewel locality: %d violations", len(violations))
    return LocalityReport(tuple(violations))


# =============================================================================
# BAGS AND CLIQUES
# =============================================================================

@dataclass(frozen=True)
class BagDefect:
    """Edges f at v whose interface zeta(f, v) is not a clique."""
    vertex: int
    edges: FrozenSet[Edge]
    witness: object = None

    def __len__(self) -> int:
        return len(self.edges)

    def to_dict(self) -> dict:
        return {
            "v": self.vertex,
            "edges": [list(e) for e in sorted(self.edges)],
            "witness": self.witness.to_dict() if self.witness is not None else None,
        }


def _non_edge(G: Graph, members: FrozenSet[int]) -> Optional[Tuple[int, int]]:
    return next(((x, y) for x, y in combinations(sorted(members), 2) if not G.has_edge(x, y)), None)


def _branch_side(S: StripStructure, v: int, e: Edge) -> FrozenSet[int]:
    """Tree vertices of the component of T - v holding the far end of e."""
    T = S.tree.tree
    far = S.tree.other_end(e, v)
    for component in T.component_masks(T.full_mask & ~(1 << v)):
        if component >> far & 1:
            return from_mask(component)
    return frozenset()


def bag_clique_defect(S: StripStructure, v: int) -> BagDefect:
    """
    The incident edges f with zeta(f, v) not a clique.

    With two or more, the non-adjacent pairs x1, y1 and x2, y2 of two such
    interfaces form a hole x1-x2-y1-y2, and a path from x1 to y1 through the
    branch of f1 closes a theta with ends x1, y1. That theta is attached.
    """
    G = S.host
    S.tree.tree.check_vertex(v)
    pairs = {}
    for f in S.tree.incident(v):
        gap = _non_edge(G, S.eta_ev(f, v))
        if gap is not None:
            pairs[f] = gap
    witness = None
    if len(pairs) >= 2:
        (f1, (x1, y1)), (_, (x2, y2)) = sorted(pairs.items())[:2]
        side = S.eta_of(_branch_side(S, v, f1) | {v}) - S.eta_v(v)
        region = (side | S.eta_e(f1)) - S.boundary(v)
        route = G.shortest_path(x1, y1, within=to_mask(region))
        candidates = [set(route) | {x2, y2}] if route else []
        witness = extract_obstruction(G, candidates + [S.eta_plus_T()])
        logger.warning("bag at %d has %d non-clique interfaces", v, len(pairs))
    return BagDefect(v, frozenset(pairs), witness)


def bag_clique(S: StripStructure, v: int) -> Tuple[int, ...]:
    """K_v: the lexicographically first maximal clique of G[B(v)]."""
    members = sorted(S.boundary(v))
    if not members:
        return ()
    sub, labels = S.host.induced_subgraph(members)
    cliques = [tuple(sorted(labels[i] for i in c)) for c in nx.find_cliques(sub.to_networkx())]
    return min(cliques)


# =============================================================================
# JEWEL COUNTS AND CENTRES
# =============================================================================

@dataclass(frozen=True)
class JewelCountReport:
    counts: Dict[int, int]
    bound: Optional[Quantity]
    breaches: Tuple[int, ...] = ()
    witness: object = None

    @property
    def ok(self) -> bool:
        return not self.breaches

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "counts": {str(v): c for v, c in sorted(self.counts.items())},
            "bound": self.bound.to_dict() if self.bound is not None else None,
            "breaches": list(self.breaches),
            "witness": self.witness.to_dict() if hasattr(self.witness, "to_dict") else self.witness,
        }


def jewel_counts(G: Graph, S: StripStructure, index: JewelIndex, t: int, cache=None) -> JewelCountReport:
    """
    |J_v| for every tree vertex against j(t, delta), delta the maximum
    degree of T. A breach is explained by a K_t in the cluster when there is
    one, otherwise by a theta or prism extracted around it.
    """
    bound = jewel_bound(t, S.tree.max_degree, cache=cache)
    counts = {v: len(index.at_vertex(v)) for v in S.tree.tree.vertices}
    breaches = tuple(v for v, c in sorted(counts.items()) if c >= bound.value)
    witness = None
    for v in breaches:
        cluster = sorted(index.at_vertex(v))
        sub, labels = G.induced_subgraph(cluster)
        clique = find_clique(sub, t)
        if clique is not None:
            witness = {"clique": [labels[i] for i in clique]}
            break
        witness = extract_obstruction(G, [set(cluster) | S.eta_plus_T()])
        if witness is not None:
            break
    if breaches:
        logger.warning("jewel clusters at %s reach the bound %s", list(breaches), bound)
    return JewelCountReport(counts, bound, breaches, witness)


@dataclass(frozen=True)
class CentreViolation:
    """Jewels at non-adjacent centres joined by a path away from zeta+(T)."""
    jewels: Tuple[int, int]
    centres: Tuple[int, int]
    path: Tuple[int, ...]
    witness: object = None

    def to_dict(self) -> dict:
        return {
            "jewels": list(self.jewels),
            "centres": list(self.centres),
            "path": list(self.path),
            "witness": self.witness.to_dict() if self.witness is not None else None,
        }


def _free_mask(G: Graph, S: StripStructure) -> int:
    """Vertices outside zeta+(T) and anticomplete to it."""
    plus = to_mask(S.eta_plus_T())
    return G.full_mask & ~plus & ~G.neighbors_of_mask(plus)


def check_adjacent_jewel_centers(G: Graph, S: StripStructure, index: JewelIndex) -> List[CentreViolation]:
    """
    Every pair of jewels at distinct non-adjacent centres that is joined by
    a path whose interior avoids zeta+(T) and its neighbours. An empty list
    means the check passed.
    """
    free = _free_mask(G, S)
    clusters = index.per_vertex()
    plus = S.eta_plus_T()
    found: List[CentreViolation] = []
    for v, w in combinations(sorted(clusters), 2):
        if S.tree.tree.has_edge(v, w):
            continue
        for x in sorted(clusters[v]):
            for y in sorted(clusters[w]):
                if x == y:
                    continue
                route = G.shortest_path(x, y, within=free)
                if route is None:
                    continue
                pyramids = set()
                for (_, jewel), sigma in index.witnesses.items():
                    if jewel in (x, y):
                        pyramids |= sigma.vertices()
                witness = extract_obstruction(G, [set(route) | pyramids, set(route) | plus])
                found.append(CentreViolation((x, y), (v, w), tuple(route), witness))
    if found:
        logger.warning("%d jewel pairs at non-adjacent centres are joined", len(found))
    return found


# =============================================================================
# SEPARATORS
# =============================================================================

def _require_saturated(G: Graph, S: StripStructure, index: Optional[JewelIndex]) -> JewelIndex:
    if S.host != G:
        raise GraphInputError("Invalid strip-structure: it was built over another host")
    require_strip(S, rich=True)
    if index is None:
        index = find_strip_jewels(G, S, checked=True)
    crossing = residual_violation(G, S, index)
    if crossing is not None:
        raise PreconditionError(
            f"The residual is not anticomplete to the structure: edge {crossing[0]}-{crossing[1]}"
        )
    return index


def jewel_separator(
    G: Graph,
    S: StripStructure,
    x: int,
    t: Optional[int] = None,
    index: Optional[JewelIndex] = None,
    cache=None,
) -> SeparatorCertificate:
    """
    A set S_x outside zeta+(T) separating a residual vertex x from zeta+(T).

    Args:
        x: a vertex outside zeta+(T) and the jewels
        t: clique bound; when given the certificate carries the bound 2j(t, delta)

    Raises:
        PreconditionError: if the structure is not rich and saturated, or x
            is in zeta+(T) or a jewel
        ObstructionFound / HypothesisViolation: if three disjoint routes lead
            from x to three jewel clusters
    """
    G.check_vertex(x)
    index = _require_saturated(G, S, index)
    plus = S.eta_plus_T()
    jewels = index.all_jewels()
    if x in plus or x in jewels:
        raise PreconditionError(f"Vertex {x} lies in the structure or is a jewel")

    clusters = index.per_vertex()
    outside = [w for w in G.vertices if w not in plus]
    label = {w: i for i, w in enumerate(w for w in outside if w not in jewels)}
    base = len(label)
    blocks: Dict[int, FrozenSet[int]] = {}
    centre: Dict[int, int] = {}
    for i, (v, members) in enumerate(sorted(clusters.items())):
        blocks[base + i] = members
        centre[base + i] = v
        for w in members:
            label[w] = base + i
    z = base + len(blocks)
    edges = {edge_key(label[p], label[q]) for p, q in G.edges if p in label and q in label and label[p] != label[q]}
    edges.update((node, z) for node in blocks)
    contracted = Graph.from_edges(z + 1, edges)

    result = menger(contracted, label[x], z, 3)
    if isinstance(result, PathSystem):
        centres = sorted(centre[p.vertices[-2]] for p in result.paths)
        message = f"three disjoint routes from {x} reach the jewels at {centres}"
        leads = check_adjacent_jewel_centers(G, S, index)
        if leads and leads[0].witness is not None:
            raise ObstructionFound(message, leads[0].witness)
        raise HypothesisViolation(message, {"centres": centres, "leads": [c.to_dict() for c in leads]})

    inverse = {node: w for w, node in label.items() if node not in blocks}
    separator = set()
    for node in result.separator:
        separator |= blocks[node] if node in blocks else {inverse[node]}

    bound = None
    if t is not None:
        j = jewel_bound(t, S.tree.max_degree, cache=cache)
        bound = Quantity("2j", 2 * j.value, j.tag, f"2*{j.expr}")
    certificate = certify_separator(
        G,
        x,
        (plus | jewels) - separator,
        separator,
        bound=bound,
        provenance="jewel_separator",
        parts={"clusters": [v for v, m in clusters.items() if m <= separator]},
    )
    if not certificate.verified:
        logger.warning("jewel separator for %d did not verify", x)
    return certificate


@dataclass(frozen=True)
class ApexParts:
    clique: Dict[int, Tuple[int, ...]]
    leaf_bag: Dict[int, FrozenSet[int]]
    clusters: Dict[int, FrozenSet[int]]

    def jewels_around(self, S: StripStructure, group: Iterable[int]) -> FrozenSet[int]:
        """M_S: jewel clusters over the tree neighbours of the group."""
        return frozenset().union(*(self.clusters.get(w, frozenset()) for w in _tree_neighbors(S, group)))

    def cliques_around(self, S: StripStructure, group: Iterable[int]) -> FrozenSet[int]:
        """N_S: the K sets over the tree neighbours of the group."""
        return frozenset().union(*(frozenset(self.clique[w]) for w in _tree_neighbors(S, group)))


def _tree_neighbors(S: StripStructure, group: Iterable[int]) -> FrozenSet[int]:
    group = set(group)
    return frozenset(w for v in group for w in S.tree.tree.neighbors(v) if w not in group)


def apex_parts(S: StripStructure, index: JewelIndex) -> ApexParts:
    T = S.tree.tree
    return ApexParts(
        clique={v: bag_clique(S, v) for v in T.vertices},
        leaf_bag={v: S.boundary(v) if S.tree.is_leaf(v) else frozenset() for v in T.vertices},
        clusters={v: index.at_vertex(v) for v in T.vertices},
    )


def apex_separator(
    G: Graph,
    S: StripStructure,
    x: int,
    t: Optional[int] = None,
    index: Optional[JewelIndex] = None,
    cache=None,
) -> SeparatorCertificate:
    """
    A set S_x separating the apex from x, for x outside N[a].

    Cases, with e = uv the strip holding x or v the vertex holding it:
        x in zeta(e):   E = M_u + M_v,        I = N_{u,v} + C_u + C_v
        x in zeta(v):   E = M_v + J_v,        I = N_v
        x a jewel at v: S_x = M_v + N_v
        otherwise:      jewel_separator

    When verification fails the certificate is returned unverified with the
    crossing a-x path under parts["crossing"].

    Raises:
        PreconditionError: if the structure is not rich and saturated or x
            is in N[a]
    """
    G.check_vertex(x)
    a = S.apex
    if x == a or G.has_edge(a, x):
        raise PreconditionError(f"Vertex {x} is in the closed neighbourhood of the apex")
    index = _require_saturated(G, S, index)
    parts = apex_parts(S, index)

    owner = S.owner(x)
    jewel_centre = next((v for v, members in sorted(parts.clusters.items()) if x in members), None)
    if owner is not None and owner[0] == "edge":
        u, v = owner[1]
        external = parts.jewels_around(S, [u]) | parts.jewels_around(S, [v])
        internal = parts.cliques_around(S, [u, v]) | parts.leaf_bag[u] | parts.leaf_bag[v]
        case = "edge"
    elif owner is not None:
        v = owner[1]
        external = parts.jewels_around(S, [v]) | parts.clusters[v]
        internal = parts.cliques_around(S, [v])
        case = "vertex"
    elif jewel_centre is not None:
        external = parts.jewels_around(S, [jewel_centre])
        internal = parts.cliques_around(S, [jewel_centre])
        case = "jewel"
    else:
        inner = jewel_separator(G, S, x, index=index)
        external, internal, case = inner.separator, frozenset(), "external"

    bound = sigma_bound(t, S.tree.max_degree, cache=cache) if t is not None else None
    separator = external | internal
    certificate = certify_separator(
        G,
        a,
        {x},
        separator,
        bound=bound,
        provenance=f"apex_separator/{case}",
        parts={"E": external, "I": internal},
    )
    if not certificate.verified:
        rest = G.full_mask & ~to_mask(separator)
        crossing = G.shortest_path(a, x, within=rest) or []
        logger.warning("apex separator for %d (%s case) did not verify", x, case)
        certificate = certify_separator(
            G,
            a,
            {x},
            separator,
            bound=bound,
            provenance=f"apex_separator/{case}",
            parts={"E": external, "I": internal, "crossing": crossing},
        )
    return certificate


# =============================================================================
# a-SEEDS
# =============================================================================

@dataclass(frozen=True)
class SeedRecognition:
    """
    bullet is 0 when H is an a-seed, otherwise the failed condition:
    1 for the shape (line graph of a subdivided caterpillar, N(a) = Z(H)),
    2 for the trapped apex.
    """
    bullet: int
    message: str = ""
    caterpillar: Optional[Graph] = None
    labels: Dict[Tuple[int, Edge], int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.bullet == 0

    def to_dict(self) -> dict:
        data = {"seed": self.ok, "bullet": self.bullet, "message": self.message}
        if self.caterpillar is not None:
            data["caterpillar"] = [list(e) for e in self.caterpillar.sorted_edges()]
        return data


def recognize_seed(G: Graph, a: int, H: Iterable[int]) -> SeedRecognition:
    """Decide whether G[H] is an a-seed and, if so, recover its caterpillar."""
    G.check_vertex(a)
    H = G.check_vertices(H)
    if a in H:
        return SeedRecognition(1, "the apex lies in H")
    if not H:
        return SeedRecognition(1, "H is empty")
    sub, labels = G.induced_subgraph(H)
    if not sub.is_connected():
        return SeedRecognition(1, "H is not connected")

    rooted = root_graph(sub)
    if rooted is None:
        return SeedRecognition(1, "H is not a line graph")
    R, mapping = rooted
    if not R.is_tree():
        return SeedRecognition(1, "the root graph of H is not a tree")
    first, second = (set(side) for side in nx.bipartite.sets(R.to_networkx()))
    leaves = {r for r in R.vertices if R.degree(r) == 1}
    original, middle = (first, second) if leaves & first else (second, first)
    if leaves & middle or any(R.degree(m) != 2 for m in middle):
        return SeedRecognition(1, "the root tree is not a 1-subdivision")

    # number the caterpillar by the smallest H vertex on each original vertex
    lowest = {r: min(labels[h] for h, edge in mapping.items() if r in edge) for r in original}
    order = sorted(original, key=lowest.__getitem__)
    index = {r: i for i, r in enumerate(order)}
    c_edge = {m: edge_key(*(index[r] for r in R.neighbors(m))) for m in middle}
    C = Graph.from_edges(len(order), c_edge.values())
    if not is_caterpillar(C):
        return SeedRecognition(1, "the subdivided tree is not a caterpillar")

    half_labels = {}
    for h, (p, q) in mapping.items():
        o, m = (p, q) if p in original else (q, p)
        half_labels[(index[o], c_edge[m])] = labels[h]

    simplicial = {labels[h] for h in simplicial_set(sub)}
    neighbours = set(G.neighbors(a))
    if neighbours != simplicial:
        return SeedRecognition(1, "N(a) is not the set of simplicial vertices of H", C, half_labels)
    if not is_trapped(G, H | {a}, a):
        return SeedRecognition(2, "the apex is not trapped in H + a", C, half_labels)
    return SeedRecognition(0, "", C, half_labels)


def is_a_seed(G: Graph, a: int, H: Iterable[int]) -> bool:
    return recognize_seed(G, a, H).ok


def seed_separator(
    G: Graph,
    a: int,
    H: Iterable[int],
    x: int,
    t: Optional[int] = None,
    cache=None,
) -> SeparatorCertificate:
    """
    Separate a from x through the saturated caterpillar strip of an a-seed.

    Raises:
        PreconditionError: if H is not an a-seed, its caterpillar has fewer
            than three leaves, or x is in N[a]
    """
    H = G.check_vertices(H)
    G.check_vertex(x)
    recognition = recognize_seed(G, a, H)
    if not recognition.ok:
        raise PreconditionError(f"Not an a-seed (condition {recognition.bullet}): {recognition.message}")
    if x == a or G.has_edge(a, x):
        raise PreconditionError(f"Vertex {x} is in the closed neighbourhood of the apex")
    C = recognition.caterpillar
    if sum(1 for v in C.vertices if C.degree(v) == 1) < 3:
        raise PreconditionError("The caterpillar of the seed has fewer than three leaves")

    strip = caterpillar_strip(G, a, H, C, labels=recognition.labels)
    saturated = saturate(G, strip)
    certificate = apex_separator(G, saturated.strip, x, t=None, index=saturated.jewels)
    if t is None:
        return certificate
    bound = seed_bound(t, cache=cache)
    return certify_separator(
        G,
        a,
        {x},
        certificate.separator,
        bound=bound,
        provenance=f"seed_separator/{certificate.provenance}",
        parts=dict(certificate.parts),
    )
