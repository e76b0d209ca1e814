"""Hypothesis strategies for random graphs and vertex sets."""

import itertools

from hypothesis import strategies as st

from ortholat.core.graph import Graph, build_graph


@st.composite
def graphs(draw, min_vertices: int = 1, max_vertices: int = 8) -> Graph:
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [pair for pair, kept in zip(pairs, keep) if kept])


@st.composite
def graphs_with_subsets(draw, count: int = 1, min_vertices: int = 1, max_vertices: int = 8):
    graph = draw(graphs(min_vertices, max_vertices))
    subsets = [draw(st.integers(0, graph.vertices)) for _ in range(count)]
    return (graph, *subsets)


@st.composite
def graphs_with_simplex(draw, min_vertices: int = 1, max_vertices: int = 6):
    """A graph and a subset of one of its cliques."""
    graph = draw(graphs(min_vertices, max_vertices))
    order = draw(st.permutations(range(graph.n)))
    simplex = 0
    for v in order:
        if graph.perp(v) & simplex == simplex and draw(st.booleans()):
            simplex |= 1 << v
    return graph, simplex
