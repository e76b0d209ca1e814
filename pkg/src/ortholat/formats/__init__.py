"""
Graph input/output formats and DOT rendering.
"""

from .dot import emit_compressed_dot, emit_hasse_dot
from .graph_text import parse_edge_list, parse_graph, parse_graph6, serialize_edge_list, serialize_graph6

__all__ = [
    "parse_graph",
    "parse_edge_list",
    "parse_graph6",
    "serialize_edge_list",
    "serialize_graph6",
    "emit_hasse_dot",
    "emit_compressed_dot",
]
