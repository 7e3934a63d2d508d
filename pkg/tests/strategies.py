"""Shared hypothesis strategies for random small graphs."""

from __future__ import annotations

from hypothesis import strategies as st

from defcol import make_graph


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if pairs:
        edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    else:
        edges = []
    return make_graph(n, edges)


@st.composite
def graphs_with_edge(draw, max_n=7):
    g = draw(graphs(min_n=2, max_n=max_n))
    edges = g.edges()
    if not edges:
        i = draw(st.integers(0, g.vertex_count - 2))
        return make_graph(g.vertex_count, [(i, i + 1)]), (i, i + 1)
    return g, draw(st.sampled_from(edges))


SPECS = [(0, 0), (0, 1), (1, 1), (0, 2), (2, 2)]
