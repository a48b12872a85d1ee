"""Directed multigraph model: edges, walks, canonical cycles, JSON ingestion.

Loops and parallel edges are allowed and nothing else is assumed about the
graph.  Each edge id doubles as its weight-variable name, so ids must be
unique.  Vertex and edge order is preserved from the input document and
used everywhere a deterministic order is needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .poly import Monomial, monomial_from_edges


class GraphError(ValueError):
    """Invalid graph document or graph structure, with input location."""


class WalkError(ValueError):
    """An edge sequence that does not form a walk in the graph."""


class SpecError(ValueError):
    """Invalid source/sink specification."""


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


class Graph:
    """Immutable directed multigraph with ordered vertices and edges."""

    def __init__(self, vertices: Sequence[str], edges: Iterable[Edge]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.edges: tuple[Edge, ...] = tuple(edges)
        self._vertex_index: dict[str, int] = {}
        for pos, name in enumerate(self.vertices):
            if name in self._vertex_index:
                raise GraphError(f"vertices[{pos}]: duplicate vertex {name!r}")
            self._vertex_index[name] = pos
        self._edge_by_id: dict[str, Edge] = {}
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for pos, edge in enumerate(self.edges):
            if edge.id in self._edge_by_id:
                raise GraphError(f"edges[{pos}]: duplicate edge id {edge.id!r}")
            if edge.tail not in self._vertex_index:
                raise GraphError(
                    f"edges[{pos}]: unknown tail vertex {edge.tail!r}"
                )
            if edge.head not in self._vertex_index:
                raise GraphError(
                    f"edges[{pos}]: unknown head vertex {edge.head!r}"
                )
            self._edge_by_id[edge.id] = edge
            out[edge.tail].append(edge)
        self._out: dict[str, tuple[Edge, ...]] = {
            v: tuple(sorted(es, key=lambda e: e.id)) for v, es in out.items()
        }

    @property
    def n(self) -> int:
        return len(self.vertices)

    def has_vertex(self, name: str) -> bool:
        return name in self._vertex_index

    def vertex_index(self, name: str) -> int:
        try:
            return self._vertex_index[name]
        except KeyError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise GraphError(f"unknown edge {edge_id!r}") from None

    def out_edges(self, vertex: str) -> tuple[Edge, ...]:
        """Out-edges of a vertex, sorted by edge id."""
        self.vertex_index(vertex)
        return self._out[vertex]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    __hash__ = None

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


def graph_from_dict(doc: Mapping) -> Graph:
    """Build a Graph from a parsed document, reporting the failing element."""
    if not isinstance(doc, Mapping):
        raise GraphError("document must be a JSON object")
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or any(
        not isinstance(v, str) for v in vertices
    ):
        raise GraphError("'vertices' must be a list of strings")
    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise GraphError("'edges' must be a list of objects")
    edges = []
    for pos, item in enumerate(raw_edges):
        if not isinstance(item, Mapping):
            raise GraphError(f"edges[{pos}]: must be an object")
        missing = [k for k in ("id", "tail", "head") if k not in item]
        if missing:
            raise GraphError(f"edges[{pos}]: missing key {missing[0]!r}")
        ident, tail, head = item["id"], item["tail"], item["head"]
        if not all(isinstance(x, str) for x in (ident, tail, head)):
            raise GraphError(f"edges[{pos}]: id/tail/head must be strings")
        edges.append(Edge(ident, tail, head))
    return Graph(vertices, edges)


def graph_to_dict(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head} for e in g.edges
        ],
    }


def parse_graph(text: str) -> Graph:
    """Parse a JSON graph document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from None
    return graph_from_dict(doc)


def parse_query(text: str) -> tuple[Graph, "SourceSinkSpec | None"]:
    """Parse a graph document with optional 'sources'/'sinks' lists."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from None
    g = graph_from_dict(doc)
    spec = None
    if "sources" in doc or "sinks" in doc:
        sources = doc.get("sources", [])
        sinks = doc.get("sinks", [])
        if not isinstance(sources, list) or not isinstance(sinks, list):
            raise GraphError("'sources' and 'sinks' must be lists")
        spec = SourceSinkSpec(tuple(sources), tuple(sinks))
        check_spec(g, spec)
    return g, spec


@dataclass(frozen=True)
class Walk:
    """A directed walk: a start vertex plus a sequence of edge ids.

    An empty edge sequence is the trivial path at the start vertex.
    """

    start: str
    edges: tuple[str, ...] = ()

    def __len__(self):
        return len(self.edges)


def walk_vertices(g: Graph, w: Walk) -> tuple[str, ...]:
    """The visited vertex sequence: start, then the head of each edge.

    Raises WalkError if consecutive edges are not incident or the first
    edge does not leave the start vertex.
    """
    if not g.has_vertex(w.start):
        raise WalkError(f"walk starts at unknown vertex {w.start!r}")
    seq = [w.start]
    at = w.start
    for edge_id in w.edges:
        edge = g.edge(edge_id)
        if edge.tail != at:
            raise WalkError(
                f"edge {edge_id!r} leaves {edge.tail!r}, walk is at {at!r}"
            )
        at = edge.head
        seq.append(at)
    return tuple(seq)


def walk_end(g: Graph, w: Walk) -> str:
    return walk_vertices(g, w)[-1]


def walk_weight(g: Graph, w: Walk) -> Monomial:
    """Product of the walk's edge variables, counting repeated edges."""
    walk_vertices(g, w)
    return monomial_from_edges(w.edges)


def is_self_avoiding(g: Graph, w: Walk) -> bool:
    """True iff the walk visits no vertex twice."""
    seq = walk_vertices(g, w)
    return len(set(seq)) == len(seq)


def vertex_set(g: Graph, w: Walk) -> frozenset[str]:
    """All vertices the walk touches, including start and end."""
    return frozenset(walk_vertices(g, w))


@dataclass(frozen=True)
class CanonicalCycle:
    """A self-avoiding directed cycle in canonical rotation.

    `edges` is the edge-id sequence; `vertices` holds the tail of each edge
    in the same order, rotated so the lexicographically smallest vertex
    comes first.  Two cycles are equal iff these tuples are equal, which
    makes equality rotation-invariant.
    """

    edges: tuple[str, ...]
    vertices: tuple[str, ...]

    def __len__(self):
        return len(self.edges)

    @property
    def weight(self) -> Monomial:
        return monomial_from_edges(self.edges)


def canonical_cycle(g: Graph, edge_ids: Sequence[str]) -> CanonicalCycle:
    """Canonicalize a closed self-avoiding edge sequence into a cycle.

    The sequence must be a closed walk whose tail vertices are all
    distinct (length-1 loops qualify).
    """
    if not edge_ids:
        raise WalkError("a cycle must contain at least one edge")
    edges = [g.edge(i) for i in edge_ids]
    tails = [e.tail for e in edges]
    for k, e in enumerate(edges):
        succ = edges[(k + 1) % len(edges)]
        if e.head != succ.tail:
            raise WalkError(
                f"edges {e.id!r} and {succ.id!r} are not consecutive"
            )
    if len(set(tails)) != len(tails):
        raise WalkError("cycle revisits a vertex")
    pivot = tails.index(min(tails))
    rotated_edges = tuple(edge_ids[pivot:]) + tuple(edge_ids[:pivot])
    rotated_tails = tuple(tails[pivot:]) + tuple(tails[:pivot])
    return CanonicalCycle(rotated_edges, rotated_tails)


@dataclass(frozen=True)
class SourceSinkSpec:
    """Ordered source and sink lists of equal length k >= 0.

    Order matters: the minor's rows follow the source order and its columns
    the sink order, which fixes the sign convention.  Repeats within either
    list are rejected; sources and sinks may overlap.
    """

    sources: tuple[str, ...]
    sinks: tuple[str, ...]

    def __post_init__(self):
        if len(self.sources) != len(self.sinks):
            raise SpecError(
                f"{len(self.sources)} sources vs {len(self.sinks)} sinks"
            )
        if len(set(self.sources)) != len(self.sources):
            raise SpecError("duplicate source vertex")
        if len(set(self.sinks)) != len(self.sinks):
            raise SpecError("duplicate sink vertex")

    @property
    def k(self) -> int:
        return len(self.sources)


def check_spec(g: Graph, spec: SourceSinkSpec) -> None:
    """Validate that every source and sink names a vertex of g."""
    for name in (*spec.sources, *spec.sinks):
        if not g.has_vertex(name):
            raise SpecError(f"unknown vertex {name!r}")
