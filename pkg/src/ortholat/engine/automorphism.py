"""
Automorphism groups of a graph and of its compression, and the split
sequence 1 → ∏ S_μ(v) → Aut(Γ) → Aut(Γ^c) → 1.

Groups are small and held as explicit lists of permutations; a permutation
is a tuple ``p`` with ``p[v]`` the image of ``v``.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher, categorical_node_match

from ..config import Settings, get_settings
from ..core.bits import VertexSet, iter_bits
from ..core.graph import Graph
from ..exceptions import CapacityError, PreconditionError, VerificationError
from .compression import CompressedGraph, compress

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """outer ∘ inner."""
    return tuple(outer[v] for v in inner)


def inverse(perm: Permutation) -> Permutation:
    result = [0] * len(perm)
    for v, image in enumerate(perm):
        result[image] = v
    return tuple(result)


class PermGroup:
    """A permutation group given by all of its elements."""

    def __init__(self, degree: int, elements: Iterable[Permutation]):
        self.degree = degree
        self.elements: Tuple[Permutation, ...] = tuple(sorted(set(elements)))
        self._members: Set[Permutation] = set(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, perm: object) -> bool:
        return perm in self._members

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def is_group(self) -> bool:
        """Contains the identity and is closed under composition and inverse."""
        if identity(self.degree) not in self:
            return False
        if any(inverse(p) not in self for p in self.elements):
            return False
        return all(compose(p, q) in self for p in self.elements for q in self.generators)

    @cached_property
    def generators(self) -> Tuple[Permutation, ...]:
        """A generating set picked greedily in element order."""
        gens: List[Permutation] = []
        generated = {identity(self.degree)}
        for perm in self.elements:
            if perm in generated:
                continue
            gens.append(perm)
            frontier = list(generated)
            while frontier:
                current = frontier.pop()
                for g in gens:
                    product = compose(current, g)
                    if product not in generated:
                        generated.add(product)
                        frontier.append(product)
        return tuple(gens)


def _collect(matcher: GraphMatcher, degree: int, max_order: int) -> PermGroup:
    elements = []
    for mapping in matcher.isomorphisms_iter():
        elements.append(tuple(mapping[v] for v in range(degree)))
        if len(elements) > max_order:
            raise CapacityError(f"Automorphism group exceeds {max_order} elements")
    return PermGroup(degree, elements)


def _check_cap(count: int, what: str, settings: Settings) -> None:
    if count > settings.aut_cap:
        raise CapacityError(f"{what} has {count} vertices; the automorphism cap is {settings.aut_cap}")


def automorphism_group(graph: Graph, settings: Optional[Settings] = None) -> PermGroup:
    """
    Aut(Γ) by VF2 matching of the graph against itself.

    Args:
        graph: Graph with at most ``settings.aut_cap`` vertices
        settings: Caps; defaults to the process settings

    Returns:
        Every adjacency-preserving bijection of the vertex set
    """
    settings = settings or get_settings()
    _check_cap(graph.n, "Graph", settings)
    nx_graph = graph.to_networkx()
    group = _collect(GraphMatcher(nx_graph, nx_graph), graph.n, settings.max_group_order)
    logger.debug(f"|Aut| = {group.order} on {graph.n} vertices")
    return group


def compressed_to_networkx(compressed: CompressedGraph) -> nx.Graph:
    """Γ^c with self-loops for ⊥-classes and the class label as node attribute ``label``."""
    result = nx.Graph()
    for i, label in enumerate(compressed.labels):
        result.add_node(i, label=(label.size, label.kind.value))
    result.add_edges_from(compressed.edges())
    result.add_edges_from((i, i) for i in compressed.loops())
    return result


def labelled_automorphism_group(compressed: CompressedGraph, settings: Optional[Settings] = None) -> PermGroup:
    """Automorphisms of Γ^c preserving adjacency, loops and labels."""
    settings = settings or get_settings()
    _check_cap(compressed.size, "Compressed graph", settings)
    nx_graph = compressed_to_networkx(compressed)
    matcher = GraphMatcher(nx_graph, nx_graph, node_match=categorical_node_match("label", None))
    return _collect(matcher, compressed.size, settings.max_group_order)


def is_automorphism(graph: Graph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(graph.n)):
        return False
    # A bijection mapping edges to edges is onto the edge set.
    return all(graph.has_edge(perm[u], perm[v]) for u, v in graph.edges())


def is_labelled_automorphism(compressed: CompressedGraph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(compressed.size)):
        return False
    for i in range(compressed.size):
        if compressed.labels[perm[i]] != compressed.labels[i]:
            return False
        for j in range(compressed.size):
            if compressed.has_edge(i, j) != compressed.has_edge(perm[i], perm[j]):
                return False
    return True


def map_set(perm: Sequence[int], mask: VertexSet) -> VertexSet:
    result = 0
    for v in iter_bits(mask):
        result |= 1 << perm[v]
    return result


def preserves_perps(graph: Graph, perm: Sequence[int]) -> bool:
    """φ(u⊥) = φ(u)⊥ for every vertex u."""
    return all(map_set(perm, graph.perp(u)) == graph.perp(perm[u]) for u in range(graph.n))


def induced_aut(compressed: CompressedGraph, perm: Sequence[int]) -> Permutation:
    """
    φ_c = c ∘ φ on classes.

    Raises:
        PreconditionError: if φ is not an automorphism of Γ
        VerificationError: if φ does not respect the classes
    """
    graph = compressed.graph
    if not is_automorphism(graph, perm):
        raise PreconditionError(f"{tuple(perm)} is not an automorphism")
    quotient = compressed.quotient
    image = [0] * compressed.size
    for i, members in enumerate(compressed.classes):
        image[i] = quotient[perm[min(iter_bits(members))]]
    for v in range(graph.n):
        if quotient[perm[v]] != image[quotient[v]]:
            raise VerificationError(f"Automorphism {tuple(perm)} splits the class of {graph.name(v)}")
    return tuple(image)


def section_iota(compressed: CompressedGraph, perm: Sequence[int]) -> Permutation:
    """
    ι(ψ): send the j-th member of [v] to the j-th member of ψ([v]), members in index order.

    Raises:
        PreconditionError: if ψ is not a labelled automorphism of Γ^c
    """
    if not is_labelled_automorphism(compressed, perm):
        raise PreconditionError(f"{tuple(perm)} is not a labelled automorphism of the compression")
    result = [0] * compressed.graph.n
    for i, members in enumerate(compressed.classes):
        targets = list(iter_bits(compressed.classes[perm[i]]))
        for j, v in enumerate(iter_bits(members)):
            result[v] = targets[j]
    return tuple(result)


def in_kernel(compressed: CompressedGraph, perm: Sequence[int]) -> bool:
    """φ(v) ∈ [v] for every vertex."""
    return all(compressed.quotient[perm[v]] == compressed.quotient[v] for v in range(compressed.graph.n))


def class_factorial_product(compressed: CompressedGraph) -> int:
    """∏ μ(v)! over the classes."""
    return math.prod(math.factorial(label.size) for label in compressed.labels)


@dataclass(frozen=True)
class SplitSequenceReport:
    """Orders and verdicts for the split sequence of Aut(Γ)."""

    aut_order: int
    compressed_aut_order: int
    kernel_order: int
    class_factorial_product: int
    homomorphism: bool
    surjective: bool
    section_is_right_inverse: bool
    section_homomorphism: bool

    @property
    def order_identity(self) -> bool:
        return self.aut_order == self.compressed_aut_order * self.class_factorial_product


def _is_homomorphism(source: PermGroup, image_of) -> bool:
    """h(φ∘g) = h(φ)∘h(g) for every φ and every generator g."""
    for g in source.generators:
        h_g = image_of(g)
        for perm in source.elements:
            if image_of(compose(perm, g)) != compose(image_of(perm), h_g):
                return False
    return True


def verify_split_sequence(graph: Graph, settings: Optional[Settings] = None) -> SplitSequenceReport:
    """
    Check that Aut(c) is onto with kernel ∏ S_μ(v) and that ι splits it.

    Raises:
        VerificationError: if any part of the statement fails
        CapacityError: if a group is too large to enumerate
    """
    settings = settings or get_settings()
    compressed = compress(graph)
    aut = automorphism_group(graph, settings)
    aut_c = labelled_automorphism_group(compressed, settings)

    def induced(perm: Permutation) -> Permutation:
        return induced_aut(compressed, perm)

    def iota(perm: Permutation) -> Permutation:
        return section_iota(compressed, perm)

    for perm in aut:
        if not preserves_perps(graph, perm):
            raise VerificationError(f"Automorphism {perm} does not commute with ⊥")
    images = {induced(perm) for perm in aut}
    kernel = [perm for perm in aut if in_kernel(compressed, perm)]
    sections = {psi: iota(psi) for psi in aut_c}

    report = SplitSequenceReport(
        aut_order=aut.order,
        compressed_aut_order=aut_c.order,
        kernel_order=len(kernel),
        class_factorial_product=class_factorial_product(compressed),
        homomorphism=images <= set(aut_c.elements) and _is_homomorphism(aut, induced),
        surjective=images == set(aut_c.elements),
        section_is_right_inverse=all(
            section in aut and induced(section) == psi for psi, section in sections.items()
        ),
        section_homomorphism=_is_homomorphism(aut_c, iota),
    )
    failures = [
        name
        for name, ok in (
            ("homomorphism", report.homomorphism),
            ("surjective", report.surjective),
            ("kernel order", report.kernel_order == report.class_factorial_product),
            ("order identity", report.order_identity),
            ("section", report.section_is_right_inverse),
            ("section homomorphism", report.section_homomorphism),
        )
        if not ok
    ]
    if failures:
        logger.error(f"Split sequence fails ({', '.join(failures)}) on {graph}")
        raise VerificationError(f"Split sequence fails: {', '.join(failures)}")
    logger.info(f"|Aut| = {report.aut_order} = {report.compressed_aut_order} · {report.class_factorial_product}")
    return report
