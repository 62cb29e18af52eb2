"""
Saturating a tame, substantial and rich strip-structure.

The procedure grows the structure until everything outside it, apart from
its jewels, is cut off from it:

1. Augment. Let M be the host minus eta+(T) and the jewels. Take a shortest
   path P in M whose ends see a nonlocal pair x1, x2 of eta(T). There is a
   tree edge f = v1v2 with x1 in B(v1) - eta(f) and x2 in
   (B(v2) + eta(f)) - B(v1) (or the same with x1, x2 swapped). P joins
   eta(f), its x1 end joins eta(f, v1), and its x2 end joins eta(f, v2)
   when it is complete to B(v2) - eta(f). Repeat while such a path exists.
2. Absorb. Components of M that see eta+(T) now see a local set. Those
   seeing only B(v) become eta(v); those seeing the interior of eta(e), or
   both interfaces of e, join eta(e).

Each step is re-validated. A check that fails means the host contains a
theta or a prism: it is extracted when the vertex set is small enough and
raised as ObstructionFound, otherwise HypothesisViolation reports the step.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import HypothesisViolation, ObstructionFound
from .graph import Edge, Graph, Relation, iter_bits, relation, to_mask
from .pyramids import extract_obstruction
from .strips import JewelIndex, StripStructure, find_strip_jewels, is_local, require_strip, validate_strip

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Augmentation:
    """One augmentation step: P (x1 end first) added to the strip of `edge`."""
    path: Tuple[int, ...]
    pair: Tuple[int, int]
    edge: Edge
    near: int
    far: int
    far_in_interface: bool

    def to_dict(self) -> dict:
        return {
            "path": list(self.path),
            "pair": list(self.pair),
            "edge": list(self.edge),
            "near_end": self.near,
            "far_end": self.far,
            "far_in_interface": self.far_in_interface,
        }


@dataclass(frozen=True)
class SaturationResult:
    strip: StripStructure
    jewels: JewelIndex
    augmentations: Tuple[Augmentation, ...] = ()
    absorbed_vertex: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    absorbed_edge: Dict[Edge, Tuple[int, ...]] = field(default_factory=dict)
    residual: FrozenSet[int] = frozenset()

    def to_dict(self) -> dict:
        return {
            "strip": self.strip.to_dict(),
            "jewels": self.jewels.to_dict(),
            "augmentations": [a.to_dict() for a in self.augmentations],
            "absorbed": {
                "vertex": {str(v): list(xs) for v, xs in sorted(self.absorbed_vertex.items())},
                "edge": {f"{u}-{v}": list(xs) for (u, v), xs in sorted(self.absorbed_edge.items())},
            },
            "residual": sorted(self.residual),
        }


def _fail(G: Graph, message: str, candidates: Iterable[Iterable[int]], detail: dict):
    """Raise ObstructionFound if a small candidate set holds a theta or prism."""
    witness = extract_obstruction(G, candidates)
    if witness is not None:
        raise ObstructionFound(message, witness)
    raise HypothesisViolation(message, detail)


# =============================================================================
# AUGMENTATION
# =============================================================================

def _outside(G: Graph, S: StripStructure, jewels: JewelIndex) -> int:
    """M as a mask: the host minus eta+(T) and the jewels."""
    return G.full_mask & ~to_mask(S.eta_plus_T() | jewels.all_jewels())


def _nonlocal_pair(S: StripStructure, A1: List[int], A2: List[int]) -> Optional[Tuple[int, int]]:
    for x1 in A1:
        for x2 in A2:
            if x1 != x2 and not is_local(S, (x1, x2)):
                return x1, x2
    return None


def find_violating_path(G: Graph, S: StripStructure, jewels: JewelIndex) -> Optional[Tuple[Tuple[int, ...], Tuple[int, int]]]:
    """
    A shortest path P in M with ends seeing a nonlocal pair of eta(T).

    Ties go to the lexicographically smallest pair of ends. Returns
    (P, (x1, x2)) with x1 seen by P[0] and x2 by P[-1], or None.
    """
    M = _outside(G, S, jewels)
    body = to_mask(S.eta_T())
    seen = {p: sorted(iter_bits(G.mask(p) & body)) for p in iter_bits(M)}
    candidates = [p for p in sorted(seen) if seen[p]]

    best = None
    for i, p1 in enumerate(candidates):
        dist = G.distances_from(p1, within=M)
        for p2 in candidates[i:]:
            if p2 not in dist:
                continue
            if best is not None and dist[p2] >= best[0]:
                continue
            pair = _nonlocal_pair(S, seen[p1], seen[p2])
            if pair is not None:
                best = (dist[p2], p1, p2, pair)
    if best is None:
        return None
    _, p1, p2, pair = best
    P = tuple(G.shortest_path(p1, p2, within=M)) if p1 != p2 else (p1,)
    return P, pair


def locate_edge(S: StripStructure, x1: int, x2: int) -> Optional[Tuple[Edge, int, int, int]]:
    """
    A tree edge f = v1v2 and an index j with x_j in B(v1) - eta(f) and the
    other vertex in (B(v2) + eta(f)) - B(v1). Returns (f, v1, v2, j).
    """
    xs = (x1, x2)
    for f in S.tree.edges:
        for v1, v2 in (f, f[::-1]):
            near_side = S.boundary(v1) - S.eta_e(f)
            far_side = (S.boundary(v2) | S.eta_e(f)) - S.boundary(v1)
            for j in (0, 1):
                if xs[j] in near_side and xs[1 - j] in far_side:
                    return f, v1, v2, j
    return None


def augment(G: Graph, S: StripStructure, P: Tuple[int, ...], pair: Tuple[int, int]) -> Tuple[StripStructure, Augmentation]:
    """Add one violating path to the strip of the edge it bridges."""
    fail_sets = [set(P) | S.eta_plus_T(), G.vertices]
    detail = {"path": list(P), "pair": list(pair)}
    located = locate_edge(S, *pair)
    if located is None:
        _fail(G, "no tree edge separates the attachment pair", fail_sets, detail)
    f, v1, v2, j = located
    path = P if j == 0 else P[::-1]
    near, far = path[0], path[-1]
    body = S.eta_T()

    interior_seen = {w for x in path[1:-1] for w in G.neighbors(x) if w in body}
    if not interior_seen <= S.eta_ev(f, v1):
        _fail(G, "the path interior attaches outside eta(f, v1)", fail_sets, detail)
    allowed = S.eta_e(f) | S.boundary(v1) | S.boundary(v2)
    ends_seen = {w for x in (near, far) for w in G.neighbors(x) if w in body}
    if not ends_seen <= allowed:
        _fail(G, "a path end attaches away from f", fail_sets, detail)
    rest_near = S.boundary(v1) - S.eta_e(f)
    if relation(G, {near}, rest_near) != Relation.COMPLETE:
        _fail(G, "the near end is not complete to B(v1) - eta(f)", fail_sets, detail)

    rest_far = S.boundary(v2) - S.eta_e(f)
    far_relation = relation(G, {far}, rest_far)
    if far_relation == Relation.MIXED:
        _fail(G, "the far end is mixed on B(v2) - eta(f)", fail_sets, detail)
    join_far = far_relation == Relation.COMPLETE and bool(rest_far)

    emap = dict(S.emap)
    evmap = dict(S.evmap)
    emap[f] = S.eta_e(f) | set(path)
    evmap[(f, v1)] = S.eta_ev(f, v1) | {near}
    if join_far:
        evmap[(f, v2)] = S.eta_ev(f, v2) | {far}
    grown = S.with_sets(emap=emap, evmap=evmap)
    step = Augmentation(tuple(path), pair if j == 0 else pair[::-1], f, near, far, join_far)

    report = validate_strip(G, grown)
    if not (report.ok and report.tame and report.substantial and report.rich):
        detail["report"] = report.to_dict()
        _fail(G, "the augmented structure is no longer tame, substantial and rich", fail_sets, detail)
    logger.debug("augmented edge %s with %s", f, path)
    return grown, step


# =============================================================================
# ABSORPTION
# =============================================================================

def absorb(G: Graph, S: StripStructure, jewels: JewelIndex):
    """
    Distribute the components of M that see eta+(T).

    Returns:
        (zeta, per-vertex components, per-edge components, residual X)
    """
    M = _outside(G, S, jewels)
    plus = to_mask(S.eta_plus_T())
    body = S.eta_T()
    vmap = dict(S.vmap)
    emap = dict(S.emap)
    by_vertex: Dict[int, List[int]] = {}
    by_edge: Dict[Edge, List[int]] = {}
    residual = 0

    for component in G.component_masks(M):
        touched = G.neighbors_of_mask(component) & plus
        if not touched:
            residual |= component
            continue
        members = sorted(iter_bits(component))
        N = frozenset(iter_bits(touched))
        if S.apex in N or not N <= body:
            _fail(G, "a component outside the structure sees the apex", [N | set(members) | {S.apex}], {"component": members})
        home_v = next((v for v in S.tree.tree.vertices if N <= S.boundary(v)), None)
        if home_v is not None:
            vmap[home_v] = vmap.get(home_v, S.eta_v(home_v)) | set(members)
            by_vertex.setdefault(home_v, []).extend(members)
            continue
        home_e = None
        for e in S.tree.edges:
            if not N <= S.eta_e(e):
                continue
            u, v = e
            only_u = S.eta_ev(e, u) - S.eta_ev(e, v)
            only_v = S.eta_ev(e, v) - S.eta_ev(e, u)
            if N & S.interior(e) or (N & only_u and N & only_v):
                home_e = e
                break
        if home_e is None:
            _fail(G, "a component outside the structure has a nonlocal attachment", [N | set(members)], {"component": members})
        emap[home_e] = emap[home_e] | set(members)
        by_edge.setdefault(home_e, []).extend(members)

    zeta = S.with_sets(vmap=vmap, emap=emap)
    return (
        zeta,
        {v: tuple(sorted(xs)) for v, xs in by_vertex.items()},
        {e: tuple(sorted(xs)) for e, xs in by_edge.items()},
        frozenset(iter_bits(residual)),
    )


# =============================================================================
# ENTRY POINTS
# =============================================================================

def residual_violation(G: Graph, S: StripStructure, jewels: JewelIndex) -> Optional[Tuple[int, int]]:
    """An edge from G - (eta+(T) + jewels) into eta+(T), or None."""
    plus = to_mask(S.eta_plus_T())
    for x in iter_bits(_outside(G, S, jewels)):
        hit = G.mask(x) & plus
        if hit:
            return x, next(iter_bits(hit))
    return None


def saturate(G: Graph, S: StripStructure) -> SaturationResult:
    """
    Saturate S and verify the result.

    Raises:
        PreconditionError: if S is not a valid tame, substantial, rich structure
        ObstructionFound: if a step fails and a theta or prism was extracted
        HypothesisViolation: if a step fails and no witness was extracted
    """
    if S.host != G:
        S = replace(S, host=G)
    require_strip(S, tame=True, substantial=True, rich=True)
    current = S
    steps: List[Augmentation] = []
    limit = G.n + 1
    while True:
        jewels = find_strip_jewels(G, current, checked=True)
        found = find_violating_path(G, current, jewels)
        if found is None:
            break
        current, step = augment(G, current, *found)
        steps.append(step)
        if len(steps) > limit:
            raise HypothesisViolation("saturation did not terminate", {"steps": len(steps)})

    zeta, by_vertex, by_edge, residual = absorb(G, current, jewels)
    report = validate_strip(G, zeta)
    if not (report.ok and report.substantial and report.rich):
        _fail(G, "the saturated structure does not validate", [G.vertices], {"report": report.to_dict()})
    if not S.leq(zeta):
        raise HypothesisViolation("the saturated structure does not contain the input")
    final_jewels = find_strip_jewels(G, zeta, checked=True)
    crossing = residual_violation(G, zeta, final_jewels)
    if crossing is not None:
        _fail(G, "a residual vertex still sees the structure", [G.vertices], {"edge": list(crossing)})

    logger.debug(
        "saturation: %d augmentations, %d absorbed, %d residual",
        len(steps),
        sum(len(xs) for xs in by_vertex.values()) + sum(len(xs) for xs in by_edge.values()),
        len(residual),
    )
    return SaturationResult(zeta, final_jewels, tuple(steps), by_vertex, by_edge, residual)


def saturate_strip(G: Graph, S: StripStructure) -> StripStructure:
    return saturate(G, S).strip
