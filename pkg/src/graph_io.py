"""
Reading and writing graphs, path systems and forests.

Two graph formats are supported:
- graph6: the standard ASCII encoding (optionally with the >>graph6<< header)
- edge-JSON: {"n": int, "edges": [[u, v], ...]} with 0-indexed vertices and
  edges sorted lexicographically on output

The actual graph6 bit packing is done by networkx. Before handing bytes to
it we walk the input once so that malformed data is reported with the byte
offset where it goes wrong.
"""

import json
import logging
import sys
from pathlib import Path as FilePath
from typing import List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, Field, ValidationError

from .errors import GraphInputError, ParseError
from .graph import Graph, Path, PathSystem

logger = logging.getLogger(__name__)

GRAPH6_HEADER = b">>graph6<<"
FORMATS = ("graph6", "json")


# =============================================================================
# GRAPH6
# =============================================================================

def _graph6_size(data: bytes) -> Tuple[int, int]:
    """Decode N(n); returns (n, offset of the first adjacency byte)."""
    if not data:
        raise ParseError("empty graph6 string", 0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated 36-bit vertex count", len(data))
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise ParseError("truncated 18-bit vertex count", len(data))
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def decode_graph6(raw: bytes) -> Graph:
    """
    Parse one graph6 line.

    Raises:
        ParseError: with the byte offset of the first bad byte
    """
    base = 0
    data = raw.rstrip(b"\r\n")
    if data.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        data = data[base:]

    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise ParseError(f"byte {b!r} outside the graph6 range 63..126", base + i)

    n, start = _graph6_size(data)
    bits = n * (n - 1) // 2
    expected = (bits + 5) // 6
    body = data[start:]
    if len(body) < expected:
        raise ParseError(f"expected {expected} adjacency bytes for n={n}, got {len(body)}", base + len(data))
    if len(body) > expected:
        raise ParseError("trailing bytes after the adjacency data", base + start + expected)
    if expected and bits % 6:
        padding = (body[-1] - 63) & ((1 << (6 - bits % 6)) - 1)
        if padding:
            raise ParseError("non-zero padding bits", base + start + expected - 1)

    try:
        g = nx.from_graph6_bytes(data)
    except nx.NetworkXError as e:
        raise ParseError(str(e), base)
    graph, _ = Graph.from_networkx(g, order=list(range(n)))
    return graph


def encode_graph6(G: Graph) -> str:
    """graph6 text without header or trailing newline (K_3 -> 'Bw')."""
    return nx.to_graph6_bytes(G.to_networkx(), header=False).decode("ascii").strip()


# =============================================================================
# EDGE-JSON
# =============================================================================

class GraphFile(BaseModel):
    """On-disk edge-JSON graph."""
    n: int = Field(ge=0, description="Vertex count; vertices are 0..n-1")
    edges: List[Tuple[int, int]] = Field(default_factory=list, description="Unordered vertex pairs")


class PathSystemFile(BaseModel):
    """On-disk path system for the tree commands."""
    a: int = Field(description="Common source of every path")
    b: int = Field(description="Common sink of every path")
    paths: List[List[int]] = Field(description="Vertex sequences from a to b")


class VertexSetFile(BaseModel):
    """On-disk vertex set, e.g. the H of an a-seed or the S of connectify."""
    vertices: List[int] = Field(description="Vertices of the host graph")
    apex: Optional[int] = Field(default=None, description="Apex a, when the set is a seed")


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, len(text[: e.pos].encode("utf-8")))


def decode_json(text: str) -> Graph:
    try:
        model = GraphFile.model_validate(_load_json(text))
    except ValidationError as e:
        raise ParseError(f"invalid edge-JSON: {e.errors()[0]['msg']}", 0)
    return Graph.from_edges(model.n, model.edges)


def encode_json(G: Graph) -> str:
    """Compact edge-JSON, e.g. {"n":1,"edges":[]}."""
    return json.dumps(
        {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]},
        separators=(",", ":"),
    )


# =============================================================================
# DISPATCH
# =============================================================================

def encode(G: Graph, fmt: str = "graph6") -> str:
    if fmt == "graph6":
        return encode_graph6(G)
    if fmt == "json":
        return encode_json(G)
    raise GraphInputError(f"Invalid format: {fmt}. Must be one of {FORMATS}")


def decode(text: str, fmt: Optional[str] = None) -> Graph:
    """Decode text; format auto-detected from the first character when omitted."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "graph6"
    if fmt == "json":
        return decode_json(text)
    if fmt == "graph6":
        return decode_graph6(text.strip().encode("ascii", errors="replace"))
    raise GraphInputError(f"Invalid format: {fmt}. Must be one of {FORMATS}")


def io_roundtrip(G: Graph, fmt: str = "graph6") -> Graph:
    """decode(encode(G)); equal to G for every graph."""
    return decode(encode(G, fmt), fmt)


def read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    path = FilePath(source)
    if not path.exists():
        raise GraphInputError(f"Input file not found: {source}")
    return path.read_text(encoding="utf-8")


def read_graph(source: str, fmt: Optional[str] = None) -> Graph:
    """Read a graph from a file path or '-' for stdin."""
    G = decode(read_text(source), fmt)
    logger.debug("read graph n=%d m=%d from %s", G.n, len(G.edges), source)
    return G


def read_path_system(source: str, G: Graph) -> PathSystem:
    """Load and validate a path-system file against its host."""
    try:
        model = PathSystemFile.model_validate(_load_json(read_text(source)))
    except ValidationError as e:
        raise GraphInputError(f"Invalid path system file: {e.errors()[0]['msg']}")
    G.check_vertex(model.a)
    G.check_vertex(model.b)
    system = PathSystem(model.a, model.b, tuple(Path(tuple(p)) for p in model.paths))
    problem = system.check_in(G, induced=False)
    if problem:
        raise GraphInputError(f"Invalid path system: {problem}")
    return system


def read_vertex_set(source: str, G: Graph) -> VertexSetFile:
    """Load a vertex set; a bare JSON list is accepted as well."""
    data = _load_json(read_text(source))
    if isinstance(data, list):
        data = {"vertices": data}
    try:
        model = VertexSetFile.model_validate(data)
    except ValidationError as e:
        raise GraphInputError(f"Invalid vertex set file: {e.errors()[0]['msg']}")
    G.check_vertices(model.vertices)
    if model.apex is not None:
        G.check_vertex(model.apex)
    return model
