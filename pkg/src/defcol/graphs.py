"""Simple undirected graphs and the structural queries everything else builds on.

Graphs are immutable values: every mutating operation returns a new graph.
Vertex identifiers are opaque hashable objects; the order in which vertices
were supplied at construction is the canonical order used wherever a
deterministic ordering is needed (edge listings, cycle enumeration, solver
tie-breaking).
"""

from __future__ import annotations

import math
from collections import deque
from typing import Hashable, Iterable, Iterator, Mapping

Vertex = Hashable

MIN_CYCLE_LENGTH = 3
MAX_CYCLE_LENGTH = 8

EDGELIST_HEADER = "# defcol-edgelist v1"


class Graph:
    """Immutable simple undirected graph with ordered, opaque vertex ids."""

    __slots__ = ("_order", "_index", "_adj", "_labels")

    def __init__(
        self,
        vertices: Iterable[Vertex],
        edges: Iterable[tuple[Vertex, Vertex]] = (),
        labels: Mapping[Vertex, str] | None = None,
    ):
        order: list[Vertex] = []
        index: dict[Vertex, int] = {}
        for v in vertices:
            if v in index:
                raise ValueError(f"duplicate vertex {v!r}")
            index[v] = len(order)
            order.append(v)
        adj: dict[Vertex, set[Vertex]] = {v: set() for v in order}
        for u, v in edges:
            if u not in index:
                raise ValueError(f"edge endpoint {u!r} is not a vertex")
            if v not in index:
                raise ValueError(f"edge endpoint {v!r} is not a vertex")
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            adj[u].add(v)
            adj[v].add(u)
        label_map = dict(labels or {})
        for v in label_map:
            if v not in index:
                raise ValueError(f"label attached to unknown vertex {v!r}")
        names = list(label_map.values())
        if len(set(names)) != len(names):
            raise ValueError("vertex labels must be unique")
        self._order = tuple(order)
        self._index = index
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._labels = label_map

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._order

    @property
    def labels(self) -> dict[Vertex, str]:
        return dict(self._labels)

    @property
    def vertex_count(self) -> int:
        return len(self._order)

    @property
    def edge_count(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._order)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self._order)

    def __contains__(self, v: Vertex) -> bool:
        return v in self._index

    def index_of(self, v: Vertex) -> int:
        return self._index[v]

    def neighbors(self, v: Vertex) -> frozenset[Vertex]:
        return self._adj[v]

    def ordered_neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        idx = self._index
        return tuple(sorted(self._adj[v], key=idx.__getitem__))

    def degree(self, v: Vertex) -> int:
        return len(self._adj[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        """All edges (u, v) with u before v in vertex order, sorted."""
        idx = self._index
        out = []
        for u in self._order:
            iu = idx[u]
            for w in self._adj[u]:
                if idx[w] > iu:
                    out.append((u, w))
        out.sort(key=lambda e: (idx[e[0]], idx[e[1]]))
        return out

    def label_of(self, v: Vertex) -> str | None:
        return self._labels.get(v)

    def vertex_by_label(self, name: str) -> Vertex:
        for v, lab in self._labels.items():
            if lab == name:
                return v
        raise KeyError(name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._order == other._order
            and self._adj == other._adj
            and self._labels == other._labels
        )

    def __hash__(self):
        return hash((self._order, frozenset(self._adj.items())))

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count} vertices, {self.edge_count} edges)"


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on vertices 0..n-1 from an unordered pair list.

    Duplicate pairs collapse to a single edge; out-of-range indices and
    self-loops are rejected.
    """
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    checked = []
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        checked.append((i, j))
    return Graph(range(n), checked)


def identify(g: Graph, u: Vertex, v: Vertex) -> Graph:
    """Merge v into u: neighborhoods union, loops dropped, parallels collapse.

    The merged vertex keeps u's identifier (and u's label, if any); v's
    label disappears with it.
    """
    if u == v:
        raise ValueError("cannot identify a vertex with itself")
    if u not in g:
        raise ValueError(f"vertex {u!r} not in graph")
    if v not in g:
        raise ValueError(f"vertex {v!r} not in graph")
    vertices = [w for w in g.vertices if w != v]
    edges = []
    for a, b in g.edges():
        a2 = u if a == v else a
        b2 = u if b == v else b
        if a2 != b2:
            edges.append((a2, b2))
    labels = {w: name for w, name in g.labels.items() if w != v}
    return Graph(vertices, edges, labels)


def delete_vertex(g: Graph, v: Vertex) -> Graph:
    """Induced subgraph on V(g) minus v."""
    if v not in g:
        raise ValueError(f"vertex {v!r} not in graph")
    vertices = [w for w in g.vertices if w != v]
    edges = [(a, b) for a, b in g.edges() if a != v and b != v]
    labels = {w: name for w, name in g.labels.items() if w != v}
    return Graph(vertices, edges, labels)


def _iter_cycles(g: Graph, length: int) -> Iterator[tuple[Vertex, ...]]:
    # Anchor each cycle at its lowest-index vertex; interior vertices must
    # rank above the anchor, and the second-vs-last index comparison drops
    # the reflected traversal, so each cycle appears exactly once.
    idx = g.index_of
    path: list[Vertex] = []
    on_path: set[Vertex] = set()

    def extend():
        last = path[-1]
        if len(path) == length:
            if g.has_edge(last, path[0]) and idx(path[1]) < idx(last):
                yield tuple(path)
            return
        anchor = idx(path[0])
        for w in g.ordered_neighbors(last):
            if idx(w) > anchor and w not in on_path:
                path.append(w)
                on_path.add(w)
                yield from extend()
                path.pop()
                on_path.discard(w)

    for s in g.vertices:
        path.append(s)
        on_path.add(s)
        yield from extend()
        path.pop()
        on_path.discard(s)


def cycles_of_length(g: Graph, length: int) -> list[tuple[Vertex, ...]]:
    """Every simple cycle on exactly `length` vertices, once up to rotation
    and reflection, in deterministic order. Supported for 3 <= length <= 8."""
    if not (MIN_CYCLE_LENGTH <= length <= MAX_CYCLE_LENGTH):
        raise ValueError(
            f"cycle length {length} outside supported range "
            f"[{MIN_CYCLE_LENGTH}, {MAX_CYCLE_LENGTH}]"
        )
    return list(_iter_cycles(g, length))


def is_c4c5_free(g: Graph) -> bool:
    """True iff the graph has no 4-cycle and no 5-cycle."""
    return not any(_iter_cycles(g, 4)) and not any(_iter_cycles(g, 5))


def girth(g: Graph) -> int | float:
    """Length of a shortest simple cycle; math.inf for forests.

    BFS from every root; candidate lengths from non-tree edges never
    undercount, and the root on a shortest cycle yields the exact value.
    """
    best: int | float = math.inf
    for root in g.vertices:
        dist = {root: 0}
        parent: dict[Vertex, Vertex | None] = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best - 1:
                continue
            for w in g.ordered_neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cand = dist[u] + dist[w] + 1
                    if cand < best:
                        best = cand
    return best


def is_connected(g: Graph) -> bool:
    if g.vertex_count == 0:
        return True
    seen = {g.vertices[0]}
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.vertex_count


# -- edge-list text format ---------------------------------------------


def dump_graph(g: Graph) -> str:
    """Serialize to the versioned edge-list format (0-based indices)."""
    idx = g.index_of
    lines = [EDGELIST_HEADER, f"{g.vertex_count} {g.edge_count}"]
    for u, v in g.edges():
        lines.append(f"{idx(u)} {idx(v)}")
    for v in g.vertices:
        name = g.label_of(v)
        if name is not None:
            lines.append(f"label {idx(v)} {name}")
    return "\n".join(lines) + "\n"


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def parse_graph_lines(lines: list[str]) -> tuple[Graph, list[str]]:
    """Parse the edge-list section; returns the graph and leftover lines."""
    if not lines:
        raise ValueError("empty graph document")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"expected 'n m' header, got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    pairs = []
    for line in lines[1 : 1 + m]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line {line!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    if len(pairs) != m:
        raise ValueError(f"expected {m} edge lines, found {len(pairs)}")
    rest = lines[1 + m :]
    labels: dict[int, str] = {}
    leftover = []
    for line in rest:
        parts = line.split()
        if parts[0] == "label":
            if len(parts) != 3:
                raise ValueError(f"malformed label line {line!r}")
            labels[int(parts[1])] = parts[2]
        else:
            leftover.append(line)
    g = make_graph(n, pairs)
    if labels:
        g = Graph(g.vertices, g.edges(), labels)
    return g, leftover


def load_graph(text: str) -> Graph:
    g, leftover = parse_graph_lines(_content_lines(text))
    ignorable = all(line.split()[0] == "rot" for line in leftover)
    if leftover and not ignorable:
        raise ValueError(f"unexpected trailing line {leftover[0]!r}")
    return g
