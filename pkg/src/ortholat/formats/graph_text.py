"""
Text formats for graphs: a named edge list and graph6.

Edge-list format::

    # comment
    vertices a b c d
    edges a-b b-c
      c-d

``vertices`` comes first; ``edges`` may carry tokens on its own line and on
any following line.
"""

import logging
from typing import Dict, List, Optional, Tuple

import networkx as nx

from ..core.graph import Graph, build_graph, from_networkx
from ..exceptions import CapacityError, GraphError, ParseError

logger = logging.getLogger(__name__)

GRAPH6_MAX_VERTICES = 62
GRAPH6_HEADER = ">>graph6<<"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def parse_edge_list(text: str) -> Graph:
    """
    Parse the edge-list format.

    Raises:
        ParseError: on missing keywords, unknown or duplicate names, bad
            tokens and self-loops, with the offending line number
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("Empty input")
    number, first = lines[0]
    words = first.split()
    if words[0] != "vertices":
        raise ParseError(f"Expected 'vertices', got '{words[0]}'", number)
    names = words[1:]
    index: Dict[str, int] = {}
    for name in names:
        if name in index:
            raise ParseError(f"Duplicate vertex name '{name}'", number)
        if "-" in name:
            raise ParseError(f"Vertex name '{name}' contains '-'", number)
        index[name] = len(index)

    edges: List[Tuple[int, int]] = []
    in_edges = False
    for number, line in lines[1:]:
        tokens = line.split()
        if not in_edges:
            if tokens[0] != "edges":
                raise ParseError(f"Expected 'edges', got '{tokens[0]}'", number)
            in_edges = True
            tokens = tokens[1:]
        for token in tokens:
            edges.append(_parse_edge_token(token, index, number))
    try:
        return build_graph(len(names), edges, names)
    except GraphError as e:
        raise ParseError(str(e)) from e


def _parse_edge_token(token: str, index: Dict[str, int], number: int) -> Tuple[int, int]:
    parts = token.split("-")
    if len(parts) != 2 or not all(parts):
        raise ParseError(f"Malformed edge '{token}'", number)
    u, v = parts
    for name in parts:
        if name not in index:
            raise ParseError(f"Unknown vertex '{name}'", number)
    if u == v:
        raise ParseError(f"Self-loop at '{u}'", number)
    return index[u], index[v]


def serialize_edge_list(graph: Graph) -> str:
    names = " ".join(graph.name(v) for v in range(graph.n))
    edges = " ".join(f"{graph.name(u)}-{graph.name(v)}" for u, v in graph.edges())
    vertex_line = f"vertices {names}".rstrip()
    edge_line = f"edges {edges}".rstrip()
    return f"{vertex_line}\n{edge_line}\n"


def parse_graph6(text: str) -> Graph:
    """Decode a single graph6 line (an optional ``>>graph6<<`` header is accepted)."""
    lines = _content_lines(text)
    if len(lines) != 1:
        raise ParseError(f"Expected one graph6 line, got {len(lines)}")
    number, line = lines[0]
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    try:
        decoded = nx.from_graph6_bytes(line.encode("ascii"))
    except (ValueError, UnicodeEncodeError, nx.NetworkXError) as e:
        raise ParseError(f"Invalid graph6 data: {e}", number) from e
    if decoded.number_of_nodes() > GRAPH6_MAX_VERTICES:
        raise ParseError(f"graph6 input has {decoded.number_of_nodes()} vertices; at most {GRAPH6_MAX_VERTICES} are supported", number)
    return from_networkx(decoded)


def serialize_graph6(graph: Graph) -> str:
    if graph.n > GRAPH6_MAX_VERTICES:
        raise CapacityError(f"graph6 output is limited to {GRAPH6_MAX_VERTICES} vertices")
    return nx.to_graph6_bytes(graph.to_networkx(), header=False).decode("ascii").strip()


def parse_graph(text: str, fmt: Optional[str] = None) -> Graph:
    """
    Parse either format; without ``fmt`` the first content line decides.

    Args:
        text: Input text
        fmt: "edges", "graph6" or None to detect

    Returns:
        The parsed graph
    """
    if fmt is None:
        lines = _content_lines(text)
        fmt = "edges" if lines and lines[0][1].split()[0] == "vertices" else "graph6"
    if fmt == "edges":
        graph = parse_edge_list(text)
    elif fmt == "graph6":
        graph = parse_graph6(text)
    else:
        raise ParseError(f"Unknown input format '{fmt}'")
    logger.debug(f"Parsed {fmt} input: {graph}")
    return graph
