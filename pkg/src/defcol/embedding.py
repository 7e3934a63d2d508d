"""Plane embeddings as rotation systems, with faces derived by face tracing.

An embedding never infers planarity: the rotation is supplied (or produced
by a generator) and certified after the fact through Euler's formula
V - E + F = 2 on the traced faces.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .graphs import (
    EDGELIST_HEADER,
    Graph,
    Vertex,
    _content_lines,
    dump_graph,
    is_connected,
    parse_graph_lines,
)

EMBEDDING_HEADER = "# defcol-embedding v1"

Dart = tuple[Vertex, Vertex]


@dataclass(frozen=True)
class Face:
    """One face of an embedding: a cyclic walk of directed edges.

    The degree is the walk length; a cut vertex crossed twice contributes
    two incidences, and a bridge contributes both of its directions.
    """

    walk: tuple[Dart, ...]

    @property
    def degree(self) -> int:
        return len(self.walk)

    def vertices(self) -> tuple[Vertex, ...]:
        """Boundary vertices in walk order, with multiplicity."""
        return tuple(u for u, _ in self.walk)

    def edge_multiset(self) -> Counter:
        """Undirected boundary edges with multiplicity (bridges count twice)."""
        return Counter(frozenset(d) for d in self.walk)


class PlaneEmbedding:
    """A graph together with a cyclic neighbor order at every vertex."""

    __slots__ = ("graph", "_rotation", "_succ")

    def __init__(self, graph: Graph, rotation: Mapping[Vertex, Sequence[Vertex]]):
        if set(rotation) != set(graph.vertices):
            raise ValueError("rotation must list every vertex exactly once")
        rot: dict[Vertex, tuple[Vertex, ...]] = {}
        succ: dict[Dart, Vertex] = {}
        for v in graph.vertices:
            around = tuple(rotation[v])
            if len(around) != len(set(around)):
                raise ValueError(f"rotation at {v!r} repeats a neighbor")
            if set(around) != set(graph.neighbors(v)):
                raise ValueError(f"rotation at {v!r} does not match its neighbors")
            rot[v] = around
            for i, u in enumerate(around):
                succ[(v, u)] = around[(i + 1) % len(around)]
        self.graph = graph
        self._rotation = rot
        self._succ = succ

    def rotation_of(self, v: Vertex) -> tuple[Vertex, ...]:
        return self._rotation[v]

    @property
    def rotation(self) -> dict[Vertex, tuple[Vertex, ...]]:
        return dict(self._rotation)

    def successor(self, v: Vertex, u: Vertex) -> Vertex:
        """Neighbor following u in the cyclic order around v."""
        return self._succ[(v, u)]

    def __repr__(self) -> str:
        return f"PlaneEmbedding({self.graph!r})"


def trace_faces(emb: PlaneEmbedding) -> list[Face]:
    """All faces of the embedding, each walk starting at its lowest dart.

    The traced walks partition the 2|E| directed edges; the face list is
    ordered by the lowest directed edge each face contains.
    """
    g = emb.graph
    if not is_connected(g):
        raise ValueError("face tracing requires a connected graph")
    if g.vertex_count == 1:
        return [Face(())]  # a lone vertex still bounds the one outer face
    idx = g.index_of
    darts: list[Dart] = []
    for u in g.vertices:
        for w in g.ordered_neighbors(u):
            darts.append((u, w))
    unused = set(darts)
    faces = []
    for start in darts:
        if start not in unused:
            continue
        walk = []
        cur = start
        while True:
            walk.append(cur)
            unused.discard(cur)
            u, w = cur
            cur = (w, emb.successor(w, u))
            if cur == start:
                break
        faces.append(Face(tuple(walk)))
    return faces


def check_planarity_certificate(emb: PlaneEmbedding) -> bool:
    """True iff the traced faces satisfy V - E + F = 2.

    False means the rotation system realizes a higher-genus surface (as any
    rotation of a nonplanar graph must).
    """
    g = emb.graph
    if not is_connected(g):
        raise ValueError("planarity certificate requires a connected graph")
    faces = trace_faces(emb)
    return g.vertex_count - g.edge_count + len(faces) == 2


def embedding_from_positions(
    g: Graph, positions: Mapping[Vertex, tuple[float, float]]
) -> PlaneEmbedding:
    """Embedding read off a crossing-free straight-line drawing.

    Neighbors are ordered counterclockwise by angle; two neighbors at the
    same angle are rejected.
    """
    for v in g.vertices:
        if v not in positions:
            raise ValueError(f"no position for vertex {v!r}")
    rotation = {}
    for v in g.vertices:
        x0, y0 = positions[v]
        angled = []
        for w in g.ordered_neighbors(v):
            x1, y1 = positions[w]
            angled.append((math.atan2(y1 - y0, x1 - x0), w))
        angles = [a for a, _ in angled]
        if len(set(angles)) != len(angles):
            raise ValueError(f"two neighbors of {v!r} share an angle")
        angled.sort()
        rotation[v] = [w for _, w in angled]
    return PlaneEmbedding(g, rotation)


# -- embedding text format ----------------------------------------------


def dump_embedding(emb: PlaneEmbedding) -> str:
    g = emb.graph
    idx = g.index_of
    body = dump_graph(g)[len(EDGELIST_HEADER) + 1 :]
    lines = [EMBEDDING_HEADER, body.rstrip("\n")]
    for v in g.vertices:
        around = " ".join(str(idx(w)) for w in emb.rotation_of(v))
        lines.append(f"rot {idx(v)}: {around}".rstrip())
    return "\n".join(lines) + "\n"


def load_embedding(text: str) -> PlaneEmbedding:
    g, leftover = parse_graph_lines(_content_lines(text))
    rotation: dict[Vertex, list[Vertex]] = {}
    for line in leftover:
        parts = line.split()
        if parts[0] != "rot":
            raise ValueError(f"unexpected line {line!r} in embedding document")
        if len(parts) < 2 or not parts[1].endswith(":"):
            raise ValueError(f"malformed rotation line {line!r}")
        v = int(parts[1][:-1])
        rotation[v] = [int(tok) for tok in parts[2:]]
    missing = [v for v in g.vertices if v not in rotation]
    if missing:
        raise ValueError(f"no rotation record for vertex {missing[0]}")
    return PlaneEmbedding(g, rotation)
