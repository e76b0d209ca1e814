"""
⊥-equivalence and o-equivalence of vertex sets, Abelian and free closures,
and elementary inflation / deflation moves.

S ∼⊥ T when S⊥ = T⊥; Y ∼_o Z when O^X(Y) \\ Y = O^X(Z) \\ Z. An elementary
inflation adjoins a vertex whose link is the complement of a simplex
(Abelian) or of a non-empty free co-simplex (free); deflation removes a vertex
that such a move could have produced.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from ..core.bits import VertexSet, is_subset, submasks
from ..core.graph import Graph, adjoin_vertex, classify_subset, delete_vertex, is_simplex
from ..core.lattice import enumerate_closed_sets, poset_isomorphic
from ..core.ortho import closure, ortho_complement, punctured_complement
from ..exceptions import PreconditionError, VerificationError

logger = logging.getLogger(__name__)


class InflationKind(str, Enum):
    ABELIAN = "abelian"
    FREE = "free"


@dataclass(frozen=True)
class Deflation:
    """Result of removing ``vertex``; ``witness`` is in the original numbering."""

    graph: Graph
    vertex: int
    witness: VertexSet
    kind: InflationKind


def perp_equivalent(graph: Graph, left: VertexSet, right: VertexSet) -> bool:
    return ortho_complement(graph, left) == ortho_complement(graph, right)


def o_equivalent(graph: Graph, left: VertexSet, right: VertexSet) -> bool:
    return punctured_complement(graph, left) == punctured_complement(graph, right)


def abelian_closure(graph: Graph, simplex: VertexSet) -> VertexSet:
    """
    acl(S), the largest set ⊥-equivalent to the simplex S.

    This is cl(S): it is a simplex ⊥-equivalent to S and contains every T
    with T⊥ = S⊥.
    """
    if not is_simplex(graph, simplex):
        raise PreconditionError(f"{graph.format_set(simplex)} is not a simplex")
    return closure(graph, simplex)


def abelian_closure_brute_force(graph: Graph, simplex: VertexSet) -> VertexSet:
    """Union of all T ⊆ X with T⊥ = S⊥."""
    target = ortho_complement(graph, simplex)
    union = 0
    for candidate in submasks(graph.vertices):
        if ortho_complement(graph, candidate) == target:
            union |= candidate
    return union


def is_free_co_simplex(graph: Graph, subset: VertexSet) -> bool:
    return classify_subset(graph, subset).is_free_co_simplex


def _o_class_candidates(graph: Graph, punctured: VertexSet) -> VertexSet:
    """Vertices that can belong to a set B with O^X(B) \\ B = K: outside K and seeing all of K."""
    return sum(
        1 << x for x in range(graph.n)
        if not punctured >> x & 1 and is_subset(punctured, graph.perp(x))
    )


def free_closure(graph: Graph, cosimplex: VertexSet) -> VertexSet:
    """
    fcl(A): the union of all free co-simplexes o-equivalent to A.

    The union is taken literally; it is itself a free co-simplex whenever the
    members it collects are pairwise non-adjacent.
    """
    if not is_free_co_simplex(graph, cosimplex):
        raise PreconditionError(f"{graph.format_set(cosimplex)} is not a free co-simplex")
    punctured = punctured_complement(graph, cosimplex)
    union = 0
    for candidate in submasks(_o_class_candidates(graph, punctured)):
        if punctured_complement(graph, candidate) == punctured and is_free_co_simplex(graph, candidate):
            union |= candidate
    return union


def free_closure_brute_force(graph: Graph, cosimplex: VertexSet) -> VertexSet:
    punctured = punctured_complement(graph, cosimplex)
    union = 0
    for candidate in submasks(graph.vertices):
        if punctured_complement(graph, candidate) == punctured and is_free_co_simplex(graph, candidate):
            union |= candidate
    return union


def _check_witness(graph: Graph, kind: InflationKind, witness: VertexSet) -> None:
    graph.check_subset(witness)
    if kind is InflationKind.ABELIAN and not is_simplex(graph, witness):
        raise PreconditionError(f"Abelian inflation needs a simplex, got {graph.format_set(witness)}")
    if kind is InflationKind.FREE and (witness == 0 or not is_free_co_simplex(graph, witness)):
        raise PreconditionError(f"Free inflation needs a non-empty free co-simplex, got {graph.format_set(witness)}")


def elementary_inflate(graph: Graph, kind: InflationKind, witness: VertexSet) -> Graph:
    """
    Adjoin t with J_t = O^X(witness).

    Args:
        graph: Base graph
        kind: ABELIAN (witness a simplex) or FREE (witness a non-empty free co-simplex)
        witness: The set whose complement becomes the link

    Returns:
        The inflated graph; t is the last vertex and is ⊥-equivalent
        (Abelian) or o-equivalent (free) to the witness
    """
    kind = InflationKind(kind)
    _check_witness(graph, kind, witness)
    inflated = adjoin_vertex(graph, ortho_complement(graph, witness))
    t_bit = 1 << graph.n
    if kind is InflationKind.ABELIAN:
        holds = perp_equivalent(inflated, t_bit, witness)
    else:
        holds = o_equivalent(inflated, t_bit, witness)
    if not holds:
        raise VerificationError(f"Inflated vertex is not {kind.value}-equivalent to its witness")
    logger.debug(f"Inflated ({kind.value}) along {graph.format_set(witness)}")
    return inflated


def _deflation_candidates(graph: Graph, kind: InflationKind, vertex: int) -> Iterable[VertexSet]:
    """Possible witnesses, largest first, then by ascending bitmask."""
    y_bit = 1 << vertex
    if kind is InflationKind.ABELIAN:
        pool = graph.perp(vertex) & ~y_bit
    else:
        pool = _o_class_candidates(graph, graph.perp(vertex) & ~y_bit) & ~y_bit
    return sorted(submasks(pool), key=lambda s: (-s.bit_count(), s))


def elementary_deflate(graph: Graph, kind: InflationKind, vertex: int) -> Optional[Deflation]:
    """
    Remove ``vertex`` if some witness in X \\ {y} would re-create it by inflation.

    Abelian: a simplex S with O^X(S) = y⊥. Free: a free co-simplex A with
    O^X(A) \\ A = y⊥ \\ {y}.
    """
    kind = InflationKind(kind)
    graph.check_vertex(vertex)
    target = graph.perp(vertex)
    for candidate in _deflation_candidates(graph, kind, vertex):
        if kind is InflationKind.ABELIAN:
            found = is_simplex(graph, candidate) and ortho_complement(graph, candidate) == target
        else:
            found = (
                is_free_co_simplex(graph, candidate)
                and punctured_complement(graph, candidate) == target & ~(1 << vertex)
            )
        if found:
            logger.debug(f"Deflating {graph.name(vertex)} with witness {graph.format_set(candidate)}")
            return Deflation(graph=delete_vertex(graph, vertex), vertex=vertex, witness=candidate, kind=kind)
    return None


def apply_inflations(graph: Graph, steps: Sequence[VertexSet], kind: InflationKind = InflationKind.ABELIAN) -> Graph:
    """Apply elementary inflations in order; each witness refers to the current graph."""
    current = graph
    for witness in steps:
        current = elementary_inflate(current, kind, witness)
    return current


def verify_inflation_invariance(graph: Graph, steps: Sequence[VertexSet]) -> bool:
    """An Abelian inflation leaves the closed-set lattice unchanged up to isomorphism."""
    inflated = apply_inflations(graph, steps, InflationKind.ABELIAN)
    return poset_isomorphic(enumerate_closed_sets(graph), enumerate_closed_sets(inflated))


def simplices(graph: Graph) -> Iterable[VertexSet]:
    """Every simplex of the graph (including ∅), in ascending bitmask order."""
    return sorted(s for s in submasks(graph.vertices) if is_simplex(graph, s))


def free_co_simplices(graph: Graph) -> Iterable[VertexSet]:
    return sorted(a for a in submasks(graph.vertices) if is_free_co_simplex(graph, a))


def union_complement_check(graph: Graph, cosimplex: VertexSet, other: VertexSet) -> bool:
    """For a co-simplex Y with Y ∼_o Z, O^X(Y ∪ Z) = O^X(Y)."""
    if not classify_subset(graph, cosimplex).is_co_simplex:
        raise PreconditionError(f"{graph.format_set(cosimplex)} is not a co-simplex")
    if not o_equivalent(graph, cosimplex, other):
        raise PreconditionError("Sets are not o-equivalent")
    return ortho_complement(graph, cosimplex | other) == ortho_complement(graph, cosimplex)
