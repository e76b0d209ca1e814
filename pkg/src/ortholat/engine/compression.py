"""
Compression of a graph by its vertex equivalences.

x ∼⊥ y when x⊥ = y⊥ and x ∼_o y when x⊥ \\ {x} = y⊥ \\ {y}. Their union ∼ is
an equivalence whose classes become the vertices of Γ^c. Each class carries
the label (μ, ν): its size and whether it is a singleton, a ⊥-class or an
o-class. ⊥-classes of size at least two carry a loop.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterator, Tuple

from ..core.bits import VertexSet, iter_bits, lowest, mask_of, submasks
from ..core.graph import Graph, classify_subset, is_simplex
from ..core.lattice import ClosedSetLattice, enumerate_closed_sets
from ..core.ortho import ortho_complement
from ..exceptions import VerificationError

logger = logging.getLogger(__name__)


class ClassKind(str, Enum):
    """ν(v): membership of v in M₁, M⊥ or M_o."""

    SINGLE = "1"
    PERP = "perp"
    ORTHO = "o"

    @property
    def symbol(self) -> str:
        return {"1": "1", "perp": "⊥", "o": "o"}[self.value]


@dataclass(frozen=True)
class ClassLabel:
    """l([v]) = (μ(v), ν(v))."""

    size: int
    kind: ClassKind

    def __str__(self) -> str:
        return f"({self.size},{self.kind.symbol})"


@dataclass(frozen=True)
class VertexClasses:
    """Per-vertex [x]⊥, [x]_o and [x], with the vertex kind."""

    perp_classes: Tuple[VertexSet, ...]
    o_classes: Tuple[VertexSet, ...]
    classes: Tuple[VertexSet, ...]
    kinds: Tuple[ClassKind, ...]

    def members(self, kind: ClassKind) -> VertexSet:
        """M₁, M⊥ or M_o as a vertex set."""
        return mask_of(v for v, k in enumerate(self.kinds) if k is kind)


def _check_classes(graph: Graph, perp_class: VertexSet, o_class: VertexSet, x: int) -> None:
    if not is_simplex(graph, perp_class):
        raise VerificationError(f"[{graph.name(x)}]⊥ = {graph.format_set(perp_class)} is not a simplex")
    if perp_class & o_class != 1 << x:
        raise VerificationError(f"[{graph.name(x)}]⊥ and [{graph.name(x)}]_o do not meet in the vertex alone")
    if perp_class.bit_count() >= 2 and o_class.bit_count() != 1:
        raise VerificationError(f"{graph.name(x)} has non-trivial ⊥- and o-classes")
    if o_class.bit_count() >= 2 and not classify_subset(graph, o_class).is_free_co_simplex:
        raise VerificationError(f"[{graph.name(x)}]_o = {graph.format_set(o_class)} is not a free co-simplex")


def vertex_classes(graph: Graph) -> VertexClasses:
    """
    Compute the ∼⊥, ∼_o and ∼ classes of every vertex.

    Raises:
        VerificationError: if a class fails the simplex / free co-simplex
            structure or ∼ is not transitive
    """
    perps = graph.perps
    perp_classes = []
    o_classes = []
    for x in range(graph.n):
        punctured = perps[x] & ~(1 << x)
        perp_classes.append(mask_of(y for y in range(graph.n) if perps[y] == perps[x]))
        o_classes.append(mask_of(y for y in range(graph.n) if perps[y] & ~(1 << y) == punctured))

    kinds = []
    classes = []
    for x in range(graph.n):
        _check_classes(graph, perp_classes[x], o_classes[x], x)
        classes.append(perp_classes[x] | o_classes[x])
        if perp_classes[x].bit_count() >= 2:
            kinds.append(ClassKind.PERP)
        elif o_classes[x].bit_count() >= 2:
            kinds.append(ClassKind.ORTHO)
        else:
            kinds.append(ClassKind.SINGLE)

    for x in range(graph.n):
        for y in iter_bits(classes[x]):
            if classes[y] != classes[x]:
                raise VerificationError(f"∼ is not transitive at {graph.name(x)}, {graph.name(y)}")

    return VertexClasses(
        perp_classes=tuple(perp_classes),
        o_classes=tuple(o_classes),
        classes=tuple(classes),
        kinds=tuple(kinds),
    )


@dataclass(frozen=True)
class CompressedGraph:
    """
    Γ^c: classes indexed by least member, adjacency as class bitmasks.

    Bit i of ``adj[i]`` is a loop. Complements use distance semantics, so every
    class lies in its own complement whether or not it carries a loop.
    """

    graph: Graph
    classes: Tuple[VertexSet, ...]
    adj: Tuple[VertexSet, ...]
    labels: Tuple[ClassLabel, ...]
    quotient: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.classes)

    @property
    def vertices(self) -> VertexSet:
        return (1 << self.size) - 1

    def has_loop(self, i: int) -> bool:
        return bool(self.adj[i] >> i & 1)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges (i, j) with i < j; loops are reported by :meth:`loops`."""
        for i in range(self.size):
            for j in iter_bits(self.adj[i] >> (i + 1) << (i + 1)):
                yield (i, j)

    def loops(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.size) if self.has_loop(i))

    def perp(self, i: int) -> VertexSet:
        return self.adj[i] | (1 << i)

    def common_perp(self, classes: VertexSet) -> VertexSet:
        result = self.vertices
        for i in iter_bits(classes):
            result &= self.perp(i)
        return result

    def image(self, subset: VertexSet) -> VertexSet:
        """c(Z) as a set of class indices."""
        return mask_of(self.quotient[v] for v in iter_bits(subset))

    def preimage(self, classes: VertexSet) -> VertexSet:
        result = 0
        for i in iter_bits(classes):
            result |= self.classes[i]
        return result

    def class_name(self, i: int) -> str:
        members = self.classes[i]
        if members.bit_count() == 1:
            return self.graph.name(members.bit_length() - 1)
        return self.graph.format_set(members)

    def format_set(self, classes: VertexSet) -> str:
        return "{" + ",".join(f"[{self.class_name(i)}]" for i in iter_bits(classes)) + "}"

    @cached_property
    def vertex_kinds(self) -> Tuple[ClassKind, ...]:
        return tuple(self.labels[self.quotient[v]].kind for v in range(self.graph.n))


def compress(graph: Graph) -> CompressedGraph:
    """
    Build Γ^c.

    Args:
        graph: The graph Γ

    Returns:
        The labelled quotient; c maps every edge of Γ to an edge or loop of Γ^c
    """
    vc = vertex_classes(graph)
    classes = []
    quotient = [0] * graph.n
    index: Dict[VertexSet, int] = {}
    for v in range(graph.n):
        members = vc.classes[v]
        if members not in index:
            index[members] = len(classes)
            classes.append(members)
        quotient[v] = index[members]

    labels = tuple(ClassLabel(members.bit_count(), vc.kinds[lowest(members)]) for members in classes)
    adj = []
    for i, members in enumerate(classes):
        row = 0
        common = graph.vertices
        for u in iter_bits(members):
            common &= graph.adj[u]
        for j, other in enumerate(classes):
            if j != i and other & ~common == 0:
                row |= 1 << j
        if labels[i].kind is ClassKind.PERP:
            row |= 1 << i
        adj.append(row)

    compressed = CompressedGraph(
        graph=graph,
        classes=tuple(classes),
        adj=tuple(adj),
        labels=labels,
        quotient=tuple(quotient),
    )
    for u, v in graph.edges():
        if not compressed.has_edge(quotient[u], quotient[v]):
            raise VerificationError(f"Edge {graph.name(u)}-{graph.name(v)} has no image in the compression")
    logger.debug(f"Compressed {graph.n} vertices into {compressed.size} classes")
    return compressed


def quotient_complement(compressed: CompressedGraph, classes: VertexSet) -> VertexSet:
    """W⊥ in Γ^c, a class counting as adjacent to itself."""
    if classes & ~compressed.vertices:
        raise VerificationError(f"Class set {classes:#x} is not a subset of the compressed vertices")
    return compressed.common_perp(classes)


def compressed_lattice(compressed: CompressedGraph) -> ClosedSetLattice:
    """L(Γ^c) over class indices."""
    return ClosedSetLattice.from_generators(
        (compressed.perp(i) for i in range(compressed.size)),
        compressed.vertices,
        join_closure=lambda w: compressed.common_perp(compressed.common_perp(w)),
        complement=compressed.common_perp,
    )


def complement_commutes(compressed: CompressedGraph, subset: VertexSet) -> bool:
    """c(Z)⊥ = c(Z⊥)."""
    left = quotient_complement(compressed, compressed.image(subset))
    right = compressed.image(ortho_complement(compressed.graph, subset))
    return left == right


def meets_o_classes_once(compressed: CompressedGraph, subset: VertexSet) -> bool:
    """Z has at most one vertex in each o-class of size ≥ 2."""
    for members, label in zip(compressed.classes, compressed.labels):
        if label.kind is ClassKind.ORTHO and (members & subset).bit_count() > 1:
            return False
    return True


@dataclass(frozen=True)
class LatticeQuotientMap:
    """c_L : L(Γ) → L(Γ^c) with the verdict on each lattice property."""

    compressed: CompressedGraph
    source: ClosedSetLattice
    target: ClosedSetLattice
    table: Dict[VertexSet, VertexSet]
    well_defined: bool
    surjective: bool
    injective: bool
    preserves_complement: bool
    preserves_meet: bool
    preserves_join: bool

    @property
    def is_epimorphism(self) -> bool:
        return (
            self.well_defined
            and self.surjective
            and self.preserves_complement
            and self.preserves_meet
            and self.preserves_join
        )


def lattice_quotient_map(graph: Graph) -> LatticeQuotientMap:
    """
    Tabulate Y ↦ c(Y) on L(Γ) and test it against L(Γ^c).

    Images are compared as plain class sets so the verdict is available even
    when an image falls outside L(Γ^c). Without o-classes the map must be a
    ⊥-preserving lattice isomorphism; a failure then raises.
    """
    compressed = compress(graph)
    source = enumerate_closed_sets(graph)
    target = compressed_lattice(compressed)
    table = {y: compressed.image(y) for y in source}

    def join_c(left: VertexSet, right: VertexSet) -> VertexSet:
        union = left | right
        return compressed.common_perp(compressed.common_perp(union))

    images = set(table.values())
    well_defined = images <= target.as_set()
    surjective = target.as_set() <= images
    injective = len(images) == len(table)
    preserves_complement = all(
        table[source.complement(y)] == compressed.common_perp(table[y]) for y in source
    )
    preserves_meet = True
    preserves_join = True
    for s in source:
        for t in source:
            if table[s & t] != table[s] & table[t]:
                preserves_meet = False
            if table[source.join(s, t)] != join_c(table[s], table[t]):
                preserves_join = False

    result = LatticeQuotientMap(
        compressed=compressed,
        source=source,
        target=target,
        table=table,
        well_defined=well_defined,
        surjective=surjective,
        injective=injective,
        preserves_complement=preserves_complement,
        preserves_meet=preserves_meet,
        preserves_join=preserves_join,
    )
    has_o_classes = any(label.kind is ClassKind.ORTHO for label in compressed.labels)
    if not has_o_classes and not (result.is_epimorphism and injective):
        logger.error(f"c_L is not an isomorphism on {graph}")
        raise VerificationError("Lattice quotient map fails without o-classes")
    if has_o_classes and not result.is_epimorphism:
        logger.info(f"c_L is not an epimorphism ({compressed.size} classes, o-classes present)")
    return result


def complement_commutes_everywhere(compressed: CompressedGraph) -> bool:
    """c(Z)⊥ = c(Z⊥) for every Z meeting each non-trivial o-class at most once."""
    return all(
        complement_commutes(compressed, z)
        for z in submasks(compressed.graph.vertices)
        if meets_o_classes_once(compressed, z)
    )
