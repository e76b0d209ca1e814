"""
Finite simple graphs over dense integer vertices with bitmask adjacency.

Every other module consumes :class:`Graph` values; they are immutable and
safe to share.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from ..config import WIDTH_CAP
from ..exceptions import CapacityError, GraphError
from .bits import VertexSet, iter_bits, mask_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Graph:
    """Undirected loopless graph on vertices 0..n-1."""

    n: int
    adj: Tuple[VertexSet, ...]
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {self.n}")
        if self.n > WIDTH_CAP:
            raise CapacityError(f"Graph has {self.n} vertices; the width cap is {WIDTH_CAP}")
        if len(self.adj) != self.n:
            raise GraphError(f"Adjacency has {len(self.adj)} rows for {self.n} vertices")
        if self.names is not None and len(self.names) != self.n:
            raise GraphError(f"Got {len(self.names)} names for {self.n} vertices")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"Vertex {u} has a neighbour outside 0..{self.n - 1}")
            if row >> u & 1:
                raise GraphError(f"Self-loop at vertex {u}")
            for v in iter_bits(row):
                if not self.adj[v] >> u & 1:
                    raise GraphError(f"Adjacency is not symmetric at ({u}, {v})")

    @property
    def vertices(self) -> VertexSet:
        """The full vertex set X."""
        return (1 << self.n) - 1

    @cached_property
    def perps(self) -> Tuple[VertexSet, ...]:
        """x⊥ = {x} ∪ adj(x) for every vertex x."""
        return tuple(row | (1 << v) for v, row in enumerate(self.adj))

    def perp(self, v: int) -> VertexSet:
        return self.perps[v]

    def common_perp(self, mask: VertexSet) -> VertexSet:
        """O^X(mask): vertices at distance ≤ 1 from every member; X for the empty set."""
        result = self.vertices
        perps = self.perps
        for v in iter_bits(mask):
            result &= perps[v]
        return result

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def name(self, v: int) -> str:
        if self.names is None:
            return str(v)
        return self.names[v]

    def format_set(self, mask: VertexSet) -> str:
        return "{" + ",".join(self.name(v) for v in iter_bits(mask)) + "}"

    def set_names(self, mask: VertexSet) -> List[str]:
        return [self.name(v) for v in iter_bits(mask)]

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {self.name(v): v for v in range(self.n)}

    def vertex_index(self, name: Union[str, int]) -> int:
        """Resolve a vertex by display name (the decimal index for unnamed graphs)."""
        key = str(name)
        if key in self._index:
            return self._index[key]
        raise GraphError(f"Unknown vertex '{name}'")

    def mask_from_names(self, names: Iterable[Union[str, int]]) -> VertexSet:
        return mask_of(self.vertex_index(name) for name in names)

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"Vertex {v} out of range 0..{self.n - 1}")

    def check_subset(self, mask: VertexSet) -> None:
        if mask < 0 or mask & ~self.vertices:
            raise GraphError(f"Vertex set {mask:#x} is not a subset of 0..{self.n - 1}")

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def __str__(self) -> str:
        edges = " ".join(f"{self.name(u)}-{self.name(v)}" for u, v in self.edges())
        return f"Graph(n={self.n}, edges=[{edges}])"


@dataclass(frozen=True)
class SubsetKind:
    """Simplex, clique and co-simplex predicates of a vertex set."""

    is_simplex: bool
    is_clique: bool
    is_co_simplex: bool
    is_free_co_simplex: bool


@dataclass(frozen=True)
class InducedSubgraph:
    """A full subgraph together with its vertex relabelling."""

    graph: Graph
    parent_vertices: Tuple[int, ...]

    def to_sub(self, mask: VertexSet) -> VertexSet:
        """Map a parent vertex set (inside the subgraph) to subgraph indices."""
        return mask_of(i for i, v in enumerate(self.parent_vertices) if mask >> v & 1)

    def to_parent(self, mask: VertexSet) -> VertexSet:
        return mask_of(self.parent_vertices[i] for i in iter_bits(mask))


def _checked_names(names: Optional[Sequence[str]], n: int) -> Optional[Tuple[str, ...]]:
    if names is None:
        return None
    names = tuple(str(name) for name in names)
    if len(names) != n:
        raise GraphError(f"Got {len(names)} names for {n} vertices")
    if len(set(names)) != len(names):
        raise GraphError("Duplicate vertex name")
    return names


def build_graph(n: int, edges: Iterable[Tuple[int, int]], names: Optional[Sequence[str]] = None) -> Graph:
    """
    Build a simple graph from an edge list.

    Args:
        n: Number of vertices
        edges: Vertex pairs; duplicates collapse
        names: Optional display names, one per vertex

    Returns:
        The graph with symmetric irreflexive adjacency
    """
    if n > WIDTH_CAP:
        raise CapacityError(f"Graph has {n} vertices; the width cap is {WIDTH_CAP}")
    if n < 0:
        raise GraphError(f"Vertex count must be non-negative, got {n}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"Edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"Self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n=n, adj=tuple(adj), names=_checked_names(names, n))


def from_networkx(graph: nx.Graph) -> Graph:
    """Convert a networkx graph with nodes 0..n-1 (any order)."""
    nodes = sorted(graph.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    return build_graph(len(nodes), ((index[u], index[v]) for u, v in graph.edges() if u != v))


def complete_graph(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(n), 2))


def null_graph(n: int) -> Graph:
    return build_graph(n, [])


def path_graph(n: int, names: Optional[Sequence[str]] = None) -> Graph:
    return build_graph(n, ((i, i + 1) for i in range(n - 1)), names)


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the centre at index 0."""
    return build_graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def all_labelled_graphs(n: int) -> Iterator[Graph]:
    """Every labelled simple graph on n vertices (2^(n choose 2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield build_graph(n, (pair for i, pair in enumerate(pairs) if code >> i & 1))


def distance(graph: Graph, x: int, y: int) -> Union[int, float]:
    """Shortest path length; ``math.inf`` across components."""
    graph.check_vertex(x)
    graph.check_vertex(y)
    try:
        return nx.shortest_path_length(graph.to_networkx(), x, y)
    except nx.NetworkXNoPath:
        return math.inf


def induced_subgraph(graph: Graph, subset: VertexSet) -> InducedSubgraph:
    """Full subgraph on ``subset``, vertices renumbered in increasing order."""
    graph.check_subset(subset)
    kept = tuple(iter_bits(subset))
    position = {v: i for i, v in enumerate(kept)}
    edges = [(position[u], position[v]) for u, v in graph.edges() if u in position and v in position]
    names = None if graph.names is None else [graph.names[v] for v in kept]
    return InducedSubgraph(graph=build_graph(len(kept), edges, names), parent_vertices=kept)


def _merged_names(g1: Graph, g2: Graph) -> Optional[List[str]]:
    if g1.names is None or g2.names is None:
        return None
    names = list(g1.names) + list(g2.names)
    if len(set(names)) != len(names):
        return None
    return names


def _shifted_edges(g1: Graph, g2: Graph) -> List[Tuple[int, int]]:
    return list(g1.edges()) + [(u + g1.n, v + g1.n) for u, v in g2.edges()]


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Γ₁ ⊔ Γ₂: vertices of g2 follow those of g1, no cross edges."""
    if g1.n + g2.n > WIDTH_CAP:
        raise CapacityError(f"Disjoint union would have {g1.n + g2.n} vertices")
    return build_graph(g1.n + g2.n, _shifted_edges(g1, g2), _merged_names(g1, g2))


def join_graphs(g1: Graph, g2: Graph) -> Graph:
    """Γ₁ ⊕ Γ₂: the disjoint union plus every cross edge."""
    if g1.n + g2.n > WIDTH_CAP:
        raise CapacityError(f"Join would have {g1.n + g2.n} vertices")
    cross = [(u, g1.n + v) for u in range(g1.n) for v in range(g2.n)]
    return build_graph(g1.n + g2.n, _shifted_edges(g1, g2) + cross, _merged_names(g1, g2))


def classify_subset(graph: Graph, subset: VertexSet) -> SubsetKind:
    graph.check_subset(subset)
    complement = graph.common_perp(subset)
    is_simplex = subset & ~complement == 0
    # A simplex is maximal exactly when no outside vertex sees all of it.
    is_clique = is_simplex and complement == subset
    is_co_simplex = subset & complement == 0
    is_null = all(graph.adj[v] & subset == 0 for v in iter_bits(subset))
    return SubsetKind(
        is_simplex=is_simplex,
        is_clique=is_clique,
        is_co_simplex=is_co_simplex,
        is_free_co_simplex=is_co_simplex and is_null,
    )


def is_simplex(graph: Graph, subset: VertexSet) -> bool:
    return subset & ~graph.common_perp(subset) == 0


def adjoin_vertex(graph: Graph, link: VertexSet, name: str = "t") -> Graph:
    """
    Append a vertex t (index n) adjacent exactly to ``link``.

    Args:
        graph: Base graph Γ
        link: J_t ⊆ X
        name: Display name for t when the graph carries names

    Returns:
        Γ̄ on X ∪ {t}
    """
    graph.check_subset(link)
    if graph.n + 1 > WIDTH_CAP:
        raise CapacityError(f"Adjoining a vertex would exceed the width cap of {WIDTH_CAP}")
    t = graph.n
    adj = [row | ((link >> v & 1) << t) for v, row in enumerate(graph.adj)]
    adj.append(link)
    names = None
    if graph.names is not None:
        if name in graph.names:
            name = f"t{t}"
        names = graph.names + (name,)
    return Graph(n=t + 1, adj=tuple(adj), names=names)


def delete_vertex(graph: Graph, v: int) -> Graph:
    """Γ minus vertex v; later vertices shift down by one."""
    graph.check_vertex(v)
    return induced_subgraph(graph, graph.vertices & ~(1 << v)).graph


def relabel(graph: Graph, permutation: Sequence[int]) -> Graph:
    """Image of the graph under the vertex bijection v ↦ permutation[v]."""
    if sorted(permutation) != list(range(graph.n)):
        raise GraphError("Relabelling is not a permutation of the vertices")
    return build_graph(graph.n, ((permutation[u], permutation[v]) for u, v in graph.edges()))
