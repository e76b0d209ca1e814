"""Tests for the edge-list and graph6 codecs and the DOT emitters."""

import pytest
from hypothesis import given, settings

from ortholat.core.graph import complete_graph, null_graph
from ortholat.core.lattice import enumerate_closed_sets
from ortholat.engine.compression import compress
from ortholat.exceptions import CapacityError, ParseError
from ortholat.formats import (
    emit_compressed_dot,
    emit_hasse_dot,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    serialize_edge_list,
    serialize_graph6,
)
from strategies import graphs

P4_TEXT = "vertices a b c d\nedges a-b b-c c-d\n"


def test_parse_path(p4):
    assert parse_edge_list(P4_TEXT) == p4


def test_parse_single_vertex():
    graph = parse_edge_list("vertices x\nedges\n")
    assert graph.n == 1
    assert graph.name(0) == "x"
    assert graph.edge_count() == 0


def test_comments_and_continuation_lines(p4):
    text = "# the path\nvertices a b c d  # four\n\nedges a-b\n  b-c # middle\n c-d\n"
    assert parse_edge_list(text) == p4


@pytest.mark.parametrize(
    "text, line",
    [
        ("vertices a a\nedges\n", 1),
        ("vertices a-b\nedges\n", 1),
        ("vertex a b\nedges\n", 1),
        ("vertices a b\nnodes a-b\n", 2),
        ("vertices a b\nedges a-c\n", 2),
        ("vertices a b\nedges a-a\n", 2),
        ("vertices a b\nedges\na-b-a\n", 3),
        ("vertices a b\nedges ab\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as excinfo:
        parse_edge_list(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}:")


def test_empty_input_is_rejected():
    with pytest.raises(ParseError):
        parse_edge_list("# nothing\n")


def test_serialize_edge_list(p4):
    assert serialize_edge_list(p4) == P4_TEXT
    assert serialize_edge_list(null_graph(2)) == "vertices 0 1\nedges\n"


def test_graph6():
    assert parse_graph6("C~") == complete_graph(4)
    assert parse_graph6(">>graph6<<C~\n") == complete_graph(4)
    assert serialize_graph6(complete_graph(4)) == "C~"
    with pytest.raises(ParseError):
        parse_graph6("C~\nC~\n")
    with pytest.raises(ParseError):
        parse_graph6("\x7f\x7f")


def test_graph6_size_limit():
    with pytest.raises(CapacityError):
        serialize_graph6(null_graph(63))


def test_format_detection(p4):
    assert parse_graph(P4_TEXT) == p4
    assert parse_graph("C~") == complete_graph(4)
    assert parse_graph(P4_TEXT, "edges") == p4
    with pytest.raises(ParseError):
        parse_graph(P4_TEXT, "graph6")
    with pytest.raises(ParseError):
        parse_graph(P4_TEXT, "adjacency")


@pytest.mark.property_based
@given(graphs())
@settings(max_examples=100)
def test_codecs_preserve_the_graph(graph):
    """Both formats reproduce the vertex count and adjacency; edge lists also fix the names."""
    assert parse_graph6(serialize_graph6(graph)) == graph
    parsed = parse_edge_list(serialize_edge_list(graph))
    assert parsed.n == graph.n
    assert parsed.adj == graph.adj
    assert [parsed.name(v) for v in range(parsed.n)] == [graph.name(v) for v in range(graph.n)]


def test_hasse_dot_single_element():
    dot = emit_hasse_dot(enumerate_closed_sets(complete_graph(1)))
    assert dot.startswith("digraph hasse {\n")
    assert dot.count("[label=") == 1
    assert "->" not in dot


def test_hasse_dot_path(p4):
    dot = emit_hasse_dot(enumerate_closed_sets(p4))
    assert dot.count("[label=") == 9
    assert dot.count(" -> ") == 12
    assert 'n0 [label="{}"];' in dot
    assert 'n8 [label="{a,b,c,d}"];' in dot
    assert dot == emit_hasse_dot(enumerate_closed_sets(p4))


def test_compressed_dot(k3, n3):
    """A ⊥-class is a looped circle, an o-class a double circle."""
    k3_dot = emit_compressed_dot(compress(k3))
    assert 'c0 [shape=circle, label="3"' in k3_dot
    assert "c0 -- c0;" in k3_dot
    n3_dot = emit_compressed_dot(compress(n3))
    assert 'c0 [shape=doublecircle, label="3"' in n3_dot
    assert "--" not in n3_dot
