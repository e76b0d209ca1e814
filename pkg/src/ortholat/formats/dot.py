"""
Graphviz DOT output for Hasse diagrams and compressed graphs.

Output is deterministic: nodes appear in canonical element (or class) order.
"""

from typing import Callable, List, Optional

from ..core.bits import VertexSet
from ..core.lattice import ClosedSetLattice
from ..engine.compression import ClassKind, CompressedGraph


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _default_format(lattice: ClosedSetLattice) -> Callable[[VertexSet], str]:
    if lattice.graph is not None:
        return lattice.graph.format_set
    return lambda mask: f"{mask:#x}"


def emit_hasse_dot(lattice: ClosedSetLattice, format_set: Optional[Callable[[VertexSet], str]] = None) -> str:
    """
    Render the cover relation, bottom at the bottom.

    Args:
        lattice: Any closed-set lattice
        format_set: Label for an element; defaults to the lattice's graph names

    Returns:
        DOT source ending with a newline
    """
    label = format_set or _default_format(lattice)
    lines: List[str] = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box];"]
    for i, element in enumerate(lattice.sets):
        lines.append(f"  n{i} [label={_quote(label(element))}];")
    for low, high in lattice.covers:
        lines.append(f"  n{low} -> n{high};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_compressed_dot(compressed: CompressedGraph) -> str:
    """
    Render Γ^c: every class is labelled with its size, o-classes as double circles.

    ⊥-classes of size at least two carry a loop.
    """
    lines: List[str] = ["graph compressed {"]
    for i, label in enumerate(compressed.labels):
        shape = "doublecircle" if label.kind is ClassKind.ORTHO else "circle"
        members = compressed.graph.format_set(compressed.classes[i])
        lines.append(f"  c{i} [shape={shape}, label={_quote(str(label.size))}, tooltip={_quote(members)}];")
    for i, j in compressed.edges():
        lines.append(f"  c{i} -- c{j};")
    for i in compressed.loops():
        lines.append(f"  c{i} -- c{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
