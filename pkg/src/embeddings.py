"""
Witness placements of the three forbidden configurations, and their validators.

A validator compares the edges G actually induces on the witness's vertex
set with the edges the configuration prescribes. Any difference (a missing
path edge, a chord, a stray edge between two paths) is reported. This is the
arbiter every detector and certificate defers to.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Optional, Set, Tuple

from .graph import Edge, Graph, Path, edge_key


def _path_edges(path: Path) -> Set[Edge]:
    return {edge_key(u, v) for u, v in zip(path.vertices, path.vertices[1:])}


def _induced_edges(G: Graph, vertices: FrozenSet[int]) -> Set[Edge]:
    return {edge_key(u, v) for u, v in combinations(sorted(vertices), 2) if G.has_edge(u, v)}


def _compare(G: Graph, vertices: FrozenSet[int], expected: Set[Edge]) -> Optional[str]:
    for v in vertices:
        if not (0 <= v < G.n):
            return f"vertex {v} out of range"
    actual = _induced_edges(G, vertices)
    missing = sorted(expected - actual)
    if missing:
        return f"missing edge {list(missing[0])}"
    extra = sorted(actual - expected)
    if extra:
        return f"unexpected edge {list(extra[0])}"
    return None


@dataclass(frozen=True)
class ThetaEmbedding:
    """Ends a, b joined by three paths of length >= 2."""
    a: int
    b: int
    paths: Tuple[Path, Path, Path]

    kind = "theta"

    def vertices(self) -> FrozenSet[int]:
        return frozenset().union(*(p.as_set() for p in self.paths))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "ends": [self.a, self.b],
            "vertices": sorted(self.vertices()),
            "paths": [list(p.vertices) for p in self.paths],
        }


@dataclass(frozen=True)
class PrismEmbedding:
    """Triangles a1a2a3 and b1b2b3; path i runs from a_i to b_i."""
    triangle_a: Tuple[int, int, int]
    triangle_b: Tuple[int, int, int]
    paths: Tuple[Path, Path, Path]

    kind = "prism"

    def vertices(self) -> FrozenSet[int]:
        return frozenset().union(*(p.as_set() for p in self.paths))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "triangles": [list(self.triangle_a), list(self.triangle_b)],
            "vertices": sorted(self.vertices()),
            "paths": [list(p.vertices) for p in self.paths],
        }


@dataclass(frozen=True)
class PyramidEmbedding:
    """Apex a, base triangle b1b2b3; path i runs from a to b_i."""
    apex: int
    base: Tuple[int, int, int]
    paths: Tuple[Path, Path, Path]

    kind = "pyramid"

    def vertices(self) -> FrozenSet[int]:
        return frozenset().union(*(p.as_set() for p in self.paths))

    @property
    def is_long(self) -> bool:
        return all(p.length >= 2 for p in self.paths)

    def path_without_apex(self, i: int) -> Tuple[int, ...]:
        return self.paths[i].vertices[1:]

    def base_neighbor(self, i: int) -> int:
        """c_i: the neighbour of b_i on P_i."""
        return self.paths[i].vertices[-2]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "apex": self.apex,
            "base": list(self.base),
            "vertices": sorted(self.vertices()),
            "paths": [list(p.vertices) for p in self.paths],
            "long": self.is_long,
        }


# =============================================================================
# VALIDATORS (None means valid)
# =============================================================================

def validate_theta(G: Graph, emb: ThetaEmbedding) -> Optional[str]:
    if len(emb.paths) != 3:
        return "a theta has exactly three paths"
    for i, p in enumerate(emb.paths):
        if p.ends != (emb.a, emb.b):
            return f"path {i} does not run from {emb.a} to {emb.b}"
        if p.length < 2:
            return f"path {i} has length {p.length} < 2"
    interiors = [set(p.interior) for p in emb.paths]
    if sum(len(s) for s in interiors) != len(set().union(*interiors)):
        return "paths are not internally disjoint"
    expected = set().union(*(_path_edges(p) for p in emb.paths))
    return _compare(G, emb.vertices(), expected)


def validate_prism(G: Graph, emb: PrismEmbedding) -> Optional[str]:
    if len(emb.paths) != 3 or len(set(emb.triangle_a)) != 3 or len(set(emb.triangle_b)) != 3:
        return "a prism has two triangles and three paths"
    for i, p in enumerate(emb.paths):
        if p.ends != (emb.triangle_a[i], emb.triangle_b[i]):
            return f"path {i} does not run from {emb.triangle_a[i]} to {emb.triangle_b[i]}"
        if p.length < 1:
            return f"path {i} is a single vertex"
    sizes = sum(len(p) for p in emb.paths)
    if sizes != len(emb.vertices()):
        return "paths are not disjoint"
    expected = set().union(*(_path_edges(p) for p in emb.paths))
    for tri in (emb.triangle_a, emb.triangle_b):
        expected |= {edge_key(u, v) for u, v in combinations(tri, 2)}
    return _compare(G, emb.vertices(), expected)


def validate_pyramid(G: Graph, emb: PyramidEmbedding) -> Optional[str]:
    if len(emb.paths) != 3 or len(set(emb.base)) != 3 or emb.apex in emb.base:
        return "a pyramid has an apex, a three-vertex base and three paths"
    for i, p in enumerate(emb.paths):
        if p.ends != (emb.apex, emb.base[i]):
            return f"path {i} does not run from {emb.apex} to {emb.base[i]}"
        if p.length < 1:
            return f"path {i} is a single vertex"
    if sum(1 for p in emb.paths if p.length == 1) > 1:
        return "more than one path has length 1"
    tails = [set(p.vertices[1:]) for p in emb.paths]
    if sum(len(s) for s in tails) != len(set().union(*tails)):
        return "paths share a vertex other than the apex"
    expected = set().union(*(_path_edges(p) for p in emb.paths))
    expected |= {edge_key(u, v) for u, v in combinations(emb.base, 2)}
    return _compare(G, emb.vertices(), expected)


def validate_embedding(G: Graph, emb) -> Optional[str]:
    if isinstance(emb, ThetaEmbedding):
        return validate_theta(G, emb)
    if isinstance(emb, PrismEmbedding):
        return validate_prism(G, emb)
    if isinstance(emb, PyramidEmbedding):
        return validate_pyramid(G, emb)
    return f"unknown embedding type {type(emb).__name__}"
