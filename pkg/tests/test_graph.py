"""Tests for vertex-set bitmasks and the graph core."""

import math

import pytest
from hypothesis import given, settings

from ortholat.core.bits import canonical_key, is_subset, iter_bits, lowest, mask_of, submasks, to_list
from ortholat.core.graph import (
    Graph,
    adjoin_vertex,
    all_labelled_graphs,
    build_graph,
    classify_subset,
    complete_graph,
    delete_vertex,
    disjoint_union,
    distance,
    from_networkx,
    induced_subgraph,
    join_graphs,
    null_graph,
    relabel,
    star_graph,
)
from ortholat.exceptions import CapacityError, GraphError
from strategies import graphs, graphs_with_subsets


def test_mask_helpers():
    """Known values for the bitmask helpers."""
    assert mask_of([0, 2]) == 0b101
    assert to_list(0b1011) == [0, 1, 3]
    assert list(iter_bits(0)) == []
    assert lowest(0b1100) == 2
    assert is_subset(0b100, 0b110)
    assert not is_subset(0b001, 0b110)


def test_submasks_enumerates_every_subset():
    """submasks yields each subset exactly once, including ∅ and the mask."""
    subs = list(submasks(0b1011))
    assert len(subs) == 8
    assert set(subs) == {s for s in range(16) if is_subset(s, 0b1011)}
    assert list(submasks(0)) == [0]


def test_canonical_order_is_by_size_then_value():
    """Canonical order sorts by cardinality first."""
    assert sorted([0b100, 0b011, 0b001, 0], key=canonical_key) == [0, 0b001, 0b100, 0b011]


def test_build_graph_rejects_bad_edges():
    """Self-loops and out-of-range endpoints are graph errors."""
    with pytest.raises(GraphError):
        build_graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        build_graph(3, [(0, 3)])
    with pytest.raises(GraphError):
        build_graph(2, [], names=["a", "a"])


def test_width_cap():
    """Graphs beyond 64 vertices are refused."""
    assert null_graph(64).n == 64
    with pytest.raises(CapacityError):
        null_graph(65)


def test_graph_validates_adjacency():
    """Asymmetric rows and loops are rejected at construction."""
    with pytest.raises(GraphError):
        Graph(n=2, adj=(0b10, 0))
    with pytest.raises(GraphError):
        Graph(n=1, adj=(0b1,))


def test_perps_and_common_perp(p4):
    """x⊥ includes x itself; O^X(∅) = X."""
    assert p4.perp(0) == 0b0011
    assert p4.perp(1) == 0b0111
    assert p4.common_perp(0) == p4.vertices
    assert p4.common_perp(0b0110) == 0b0110


def test_names_and_lookup(p4):
    """Vertex names resolve both ways; unnamed graphs use decimal indices."""
    assert p4.format_set(0b1010) == "{b,d}"
    assert p4.mask_from_names(["b", "d"]) == 0b1010
    with pytest.raises(GraphError):
        p4.vertex_index("z")
    assert complete_graph(3).name(2) == "2"
    assert complete_graph(3).vertex_index("1") == 1


def test_classify_subset_examples(p4):
    """Simplex, clique and co-simplex predicates on the path."""
    bc = classify_subset(p4, 0b0110)
    assert bc.is_simplex and bc.is_clique
    assert not bc.is_co_simplex
    b = classify_subset(p4, 0b0010)
    assert b.is_simplex and not b.is_clique
    ac = classify_subset(p4, 0b0101)
    assert ac.is_co_simplex and ac.is_free_co_simplex and not ac.is_simplex
    empty = classify_subset(p4, 0)
    assert empty.is_simplex and empty.is_co_simplex


@pytest.mark.property_based
@given(graphs_with_subsets())
@settings(max_examples=100)
def test_classify_subset_implications(case):
    """A clique is a simplex and a free co-simplex is a co-simplex."""
    graph, subset = case
    kind = classify_subset(graph, subset)
    assert not kind.is_clique or kind.is_simplex
    assert not kind.is_free_co_simplex or kind.is_co_simplex


def test_adjoin_and_delete_vertex(p4):
    """t is appended last with the given link; deletion shifts later vertices down."""
    extended = adjoin_vertex(p4, 0b0101)
    assert extended.n == 5
    assert extended.name(4) == "t"
    assert extended.has_edge(4, 0) and extended.has_edge(4, 2)
    assert not extended.has_edge(4, 1)
    assert delete_vertex(extended, 4) == p4

    shrunk = delete_vertex(p4, 0)
    assert [shrunk.name(v) for v in range(3)] == ["b", "c", "d"]
    assert list(shrunk.edges()) == [(0, 1), (1, 2)]


def test_adjoin_vertex_avoids_name_clash():
    """A graph already using the name t gets a fresh name for the new vertex."""
    graph = build_graph(1, [], names=["t"])
    assert adjoin_vertex(graph, 0).name(1) == "t1"


def test_distance(p4):
    """Path length, and infinity across components."""
    assert distance(p4, 0, 3) == 3
    assert distance(p4, 2, 2) == 0
    assert distance(null_graph(2), 0, 1) == math.inf


def test_induced_subgraph_relabels(p4):
    """The full subgraph on {b,c,d} keeps names and maps masks back."""
    sub = induced_subgraph(p4, 0b1110)
    assert sub.graph.n == 3
    assert sub.graph.name(0) == "b"
    assert sub.to_parent(0b011) == 0b0110
    assert sub.to_sub(0b1100) == 0b110


def test_disjoint_union_and_join():
    """Edge counts of Γ₁ ⊔ Γ₂ and Γ₁ ⊕ Γ₂."""
    k2 = complete_graph(2)
    assert disjoint_union(k2, k2).edge_count() == 2
    assert join_graphs(k2, k2) == complete_graph(4)
    assert join_graphs(null_graph(1), null_graph(3)) == star_graph(3)


def test_relabel():
    """Relabelling by a permutation moves the edges."""
    graph = build_graph(3, [(0, 1)])
    assert list(relabel(graph, [2, 1, 0]).edges()) == [(1, 2)]
    with pytest.raises(GraphError):
        relabel(graph, [0, 0, 1])


def test_all_labelled_graphs_count():
    """There are 2^(n choose 2) labelled graphs on n vertices."""
    assert sum(1 for _ in all_labelled_graphs(4)) == 64
    assert sum(1 for _ in all_labelled_graphs(0)) == 1


@pytest.mark.property_based
@given(graphs())
@settings(max_examples=100)
def test_networkx_conversion_preserves_graph(graph):
    """from_networkx inverts to_networkx on unnamed graphs."""
    assert from_networkx(graph.to_networkx()) == graph
