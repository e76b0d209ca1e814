"""
Orthogonal complements and the closure operator they induce.

O^Z(Y) is the set of vertices of Z within distance one of every vertex of Y;
O^Z(∅) = Z. Distance ≤ 1 means equal or adjacent, so no path search is needed.
"""

from typing import Optional

from .bits import VertexSet
from .graph import Graph


def ortho_complement(graph: Graph, subset: VertexSet, within: Optional[VertexSet] = None) -> VertexSet:
    """
    Compute O^Z(Y).

    Args:
        graph: The ambient graph Γ
        subset: Y ⊆ X (need not lie inside Z)
        within: Z ⊆ X, defaults to X

    Returns:
        Members of Z at distance ≤ 1 from every member of Y
    """
    graph.check_subset(subset)
    if within is None:
        return graph.common_perp(subset)
    graph.check_subset(within)
    return graph.common_perp(subset) & within


def perp(graph: Graph, subset: VertexSet) -> VertexSet:
    """Y⊥ = O^X(Y)."""
    return ortho_complement(graph, subset)


def closure(graph: Graph, subset: VertexSet, within: Optional[VertexSet] = None) -> VertexSet:
    """cl^Z(Y) = O^Z(O^Z(Y))."""
    return ortho_complement(graph, ortho_complement(graph, subset, within), within)


def is_closed(graph: Graph, subset: VertexSet, within: Optional[VertexSet] = None) -> bool:
    return closure(graph, subset, within) == subset


def kernel(graph: Graph) -> VertexSet:
    """O^X(X): the vertices adjacent to every other vertex."""
    return graph.common_perp(graph.vertices)


def commutes(graph: Graph, left: VertexSet, right: VertexSet) -> bool:
    """[Y, Z] = 1, i.e. Z ⊆ O^X(Y)."""
    return right & ~ortho_complement(graph, left) == 0


def punctured_complement(graph: Graph, subset: VertexSet) -> VertexSet:
    """O^X(Y) \\ Y, the quantity compared by o-equivalence."""
    return ortho_complement(graph, subset) & ~subset
