"""
Closed-set lattices.

L(Γ) is enumerated as the intersection-closure of the vertex complements x⊥
together with X: every closed set is Y⊥ = ⋂_{y∈Y} y⊥ for some Y, and ∅⊥ = X.
The same machinery serves any intersection-closed family with a join
closure (relative lattices L(Z) and the intermediate lattice of an
extension).
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import categorical_node_match

from ..exceptions import LatticeError, VerificationError
from .bits import VertexSet, canonical_key, is_subset, iter_bits, submasks
from .graph import Graph, InducedSubgraph, disjoint_union, induced_subgraph, join_graphs
from .ortho import closure, kernel, ortho_complement

logger = logging.getLogger(__name__)

Closure = Callable[[VertexSet], VertexSet]


class ClosedSetLattice:
    """
    A finite lattice of vertex sets ordered by inclusion.

    Elements are kept in canonical order (cardinality, then bitmask). Meet is
    intersection; join is the supplied closure of the union.
    """

    def __init__(
        self,
        sets: Iterable[VertexSet],
        universe: VertexSet,
        join_closure: Closure,
        complement: Optional[Closure] = None,
        graph: Optional[Graph] = None,
    ):
        self.sets: Tuple[VertexSet, ...] = tuple(sorted(set(sets), key=canonical_key))
        if not self.sets:
            raise LatticeError("A lattice needs at least one element")
        self.universe = universe
        self.graph = graph
        self._join_closure = join_closure
        self._complement = complement
        self._index: Dict[VertexSet, int] = {s: i for i, s in enumerate(self.sets)}

        top, bottom = self.sets[-1], self.sets[0]
        if any(not is_subset(s, top) or not is_subset(bottom, s) for s in self.sets):
            raise LatticeError("Family has no unique top and bottom under inclusion")

        self.lower_covers: List[List[int]] = [[] for _ in self.sets]
        self.upper_covers: List[List[int]] = [[] for _ in self.sets]
        for i, low in enumerate(self.sets):
            for j in range(i + 1, len(self.sets)):
                high = self.sets[j]
                if not is_subset(low, high):
                    continue
                # Intermediate sets are smaller, so their covers were seen first.
                if any(is_subset(self.sets[c], high) for c in self.upper_covers[i]):
                    continue
                self.upper_covers[i].append(j)
                self.lower_covers[j].append(i)
        self.covers: Tuple[Tuple[int, int], ...] = tuple(
            (i, j) for i in range(len(self.sets)) for j in self.upper_covers[i]
        )

        self.ranks: List[int] = [0] * len(self.sets)
        for j in range(len(self.sets)):
            if self.lower_covers[j]:
                self.ranks[j] = max(self.ranks[i] for i in self.lower_covers[j]) + 1
        self.height = max(self.ranks)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.sets)

    def __contains__(self, item: object) -> bool:
        return item in self._index

    def __repr__(self) -> str:
        return f"ClosedSetLattice(size={len(self)}, height={self.height})"

    @property
    def top(self) -> VertexSet:
        return self.sets[-1]

    @property
    def bottom(self) -> VertexSet:
        return self.sets[0]

    def as_set(self) -> FrozenSet[VertexSet]:
        return frozenset(self.sets)

    def index(self, element: VertexSet) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise LatticeError(f"Vertex set {element:#x} is not an element of the lattice") from None

    def rank(self, element: VertexSet) -> int:
        return self.ranks[self.index(element)]

    def require(self, *elements: VertexSet) -> None:
        for element in elements:
            self.index(element)

    def meet(self, left: VertexSet, right: VertexSet) -> VertexSet:
        self.require(left, right)
        return left & right

    def join(self, left: VertexSet, right: VertexSet) -> VertexSet:
        self.require(left, right)
        result = self._join_closure(left | right)
        if result not in self:
            raise VerificationError(f"Join of {left:#x} and {right:#x} left the lattice")
        return result

    def complement(self, element: VertexSet) -> VertexSet:
        """The ambient orthogonal complement, for lattices that carry one."""
        if self._complement is None:
            raise LatticeError("This lattice carries no orthogonal complement")
        self.require(element)
        return self._complement(element)

    def rank_profile(self) -> Tuple[int, ...]:
        return tuple(sorted(self.ranks))

    def degree_profile(self) -> Tuple[Tuple[int, int, int], ...]:
        return tuple(sorted(
            (self.ranks[i], len(self.lower_covers[i]), len(self.upper_covers[i])) for i in range(len(self))
        ))

    @cached_property
    def hasse(self) -> nx.DiGraph:
        return hasse_diagram(self)

    def maximal_chains(self) -> Iterator[Tuple[VertexSet, ...]]:
        return maximal_chains(self)

    def is_strict_chain(self, chain: Sequence[VertexSet]) -> bool:
        return all(c in self for c in chain) and all(
            a != b and is_subset(a, b) for a, b in zip(chain, chain[1:])
        )

    @classmethod
    def from_generators(
        cls,
        generators: Iterable[VertexSet],
        universe: VertexSet,
        join_closure: Closure,
        complement: Optional[Closure] = None,
        graph: Optional[Graph] = None,
    ) -> "ClosedSetLattice":
        """Lattice of all intersections of ``generators`` with the universe on top."""
        family = {universe}
        for generator in generators:
            family |= {s & generator for s in family}
        return cls(family, universe, join_closure, complement, graph)


def enumerate_closed_sets(graph: Graph) -> ClosedSetLattice:
    """
    Enumerate L(Γ).

    Args:
        graph: The graph Γ

    Returns:
        The lattice of closed sets with covers and height populated
    """
    lattice = ClosedSetLattice.from_generators(
        graph.perps,
        graph.vertices,
        join_closure=lambda y: closure(graph, y),
        complement=lambda y: ortho_complement(graph, y),
        graph=graph,
    )
    logger.debug(f"Enumerated {len(lattice)} closed sets of height {lattice.height} on {graph.n} vertices")
    return lattice


def relative_lattice(graph: Graph, subset: VertexSet) -> ClosedSetLattice:
    """L(Z): closed sets of the full subgraph on Z, as subsets of X."""
    graph.check_subset(subset)
    return ClosedSetLattice.from_generators(
        (graph.perp(z) & subset for z in iter_bits(subset)),
        subset,
        join_closure=lambda y: closure(graph, y, subset),
        complement=lambda y: ortho_complement(graph, y, subset),
        graph=graph,
    )


def brute_force_closed_sets(graph: Graph) -> FrozenSet[VertexSet]:
    """{cl(Y) : Y ⊆ X} over all 2^n subsets."""
    return frozenset(closure(graph, y) for y in submasks(graph.vertices))


def height(lattice: ClosedSetLattice) -> int:
    return lattice.height


def brute_force_height(lattice: ClosedSetLattice) -> int:
    """Longest strictly ascending chain over the full containment order."""
    longest = [0] * len(lattice)
    for j, high in enumerate(lattice.sets):
        for i in range(j):
            low = lattice.sets[i]
            if low != high and is_subset(low, high):
                longest[j] = max(longest[j], longest[i] + 1)
    return max(longest)


def meet(lattice: ClosedSetLattice, left: VertexSet, right: VertexSet) -> VertexSet:
    return lattice.meet(left, right)


def join(lattice: ClosedSetLattice, left: VertexSet, right: VertexSet) -> VertexSet:
    return lattice.join(left, right)


def ortho_dual(lattice: ClosedSetLattice, element: VertexSet) -> VertexSet:
    """Y ↦ Y⊥, an inclusion-reversing involution of L(Γ)."""
    return lattice.complement(element)


def hasse_diagram(lattice: ClosedSetLattice) -> nx.DiGraph:
    """Cover relation as a digraph (lower → upper) with ``rank`` and ``members`` node attributes."""
    diagram = nx.DiGraph()
    for i, element in enumerate(lattice.sets):
        diagram.add_node(i, rank=lattice.ranks[i], members=element)
    diagram.add_edges_from(lattice.covers)
    return diagram


def maximal_chains(lattice: ClosedSetLattice) -> Iterator[Tuple[VertexSet, ...]]:
    """Every bottom-to-top path in the Hasse diagram."""
    bottom, top = 0, len(lattice) - 1
    if bottom == top:
        yield (lattice.sets[0],)
        return
    for path in nx.all_simple_paths(lattice.hasse, bottom, top):
        yield tuple(lattice.sets[i] for i in path)


def rank_profile(lattice: ClosedSetLattice) -> Tuple[int, ...]:
    return lattice.rank_profile()


def poset_isomorphic(first: ClosedSetLattice, second: ClosedSetLattice) -> bool:
    """
    Decide order-isomorphism of two finite lattices.

    Cheap invariants (size, height, rank and cover-degree profiles) prune first;
    otherwise the Hasse digraphs are matched with ranks as node colours.
    """
    if len(first) != len(second) or first.height != second.height:
        return False
    if first.degree_profile() != second.degree_profile():
        return False
    return nx.is_isomorphic(first.hasse, second.hasse, node_match=categorical_node_match("rank", None))


@dataclass(frozen=True)
class KernelStrip:
    """Γ* = Γ(X \\ X⊥) with the isomorphism Y ↦ Y \\ X⊥ from L(Γ) to L(Γ*)."""

    kernel: VertexSet
    reduced: InducedSubgraph
    mapping: Dict[VertexSet, VertexSet]

    @property
    def graph(self) -> Graph:
        return self.reduced.graph


def strip_kernel(graph: Graph) -> KernelStrip:
    center = kernel(graph)
    reduced = induced_subgraph(graph, graph.vertices & ~center)
    star = reduced.graph
    if kernel(star) != 0:
        raise VerificationError(f"Reduced graph of {graph} still has a non-empty kernel")

    source = enumerate_closed_sets(graph)
    target = enumerate_closed_sets(star)
    mapping = {y: reduced.to_sub(y & ~center) for y in source}
    if set(mapping.values()) != target.as_set() or len(target) != len(source):
        raise VerificationError(f"Kernel strip of {graph} is not a bijection of closed-set lattices")
    logger.debug(f"Stripped kernel {graph.format_set(center)} from {graph}")
    return KernelStrip(kernel=center, reduced=reduced, mapping=mapping)


def is_realisable(graph: Graph, subset: VertexSet, lattice: Optional[ClosedSetLattice] = None) -> bool:
    """
    Decide whether a closed set J satisfies L(J) = {Y ∈ L : Y ⊆ J}.

    J is realisable exactly when O^X(s) ∩ J lies in L(J) for every s outside J.
    """
    if lattice is None:
        lattice = enumerate_closed_sets(graph)
    if subset not in lattice:
        raise LatticeError(f"{graph.format_set(subset)} is not closed")
    relative = relative_lattice(graph, subset)
    return all((graph.perp(s) & subset) in relative for s in iter_bits(graph.vertices & ~subset))


def is_realisable_by_definition(graph: Graph, subset: VertexSet, lattice: Optional[ClosedSetLattice] = None) -> bool:
    if lattice is None:
        lattice = enumerate_closed_sets(graph)
    if subset not in lattice:
        raise LatticeError(f"{graph.format_set(subset)} is not closed")
    below = {y for y in lattice if is_subset(y, subset)}
    return relative_lattice(graph, subset).as_set() == below


def _shift(mask: VertexSet, offset: int) -> VertexSet:
    return mask << offset


def disjoint_union_check(first: Graph, second: Graph) -> bool:
    """
    Compare L(Γ₁ ⊔ Γ₂) with L(Γ₁) and L(Γ₂) for non-empty Γ₁, Γ₂.

    ∅ is closed; a non-empty set other than X, X₁, X₂ is closed exactly when it
    is a proper closed set of one component; X_i is closed exactly when Γ_i
    has a non-empty kernel (and then ∅ is not closed in Γ_i).
    """
    if first.n == 0 or second.n == 0:
        raise LatticeError("Both parts of the decomposition must be non-empty")
    whole = enumerate_closed_sets(disjoint_union(first, second))
    x1, x2 = first.vertices, _shift(second.vertices, first.n)
    parts = [
        (x1, {y for y in enumerate_closed_sets(first)}, kernel(first)),
        (x2, {_shift(y, first.n) for y in enumerate_closed_sets(second)}, kernel(second)),
    ]
    if 0 not in whole:
        return False
    excluded = {whole.top, x1, x2}
    for y in whole:
        if y == 0 or y in excluded:
            continue
        if sum(1 for top, family, _ in parts if y in family and y != top) != 1:
            return False
    for top, family, center in parts:
        if any(y != 0 and y != top and y not in whole for y in family):
            return False
        if (top in whole) != (center != 0):
            return False
        if (0 in family) != (center == 0):
            return False
    return True


def join_product_check(first: Graph, second: Graph) -> bool:
    """L(Γ₁ ⊕ Γ₂) equals {Y₁ ∪ Y₂ : Y_i ∈ L(Γ_i)}."""
    whole = enumerate_closed_sets(join_graphs(first, second)).as_set()
    product = {
        y1 | _shift(y2, first.n)
        for y1 in enumerate_closed_sets(first)
        for y2 in enumerate_closed_sets(second)
    }
    return whole == product
