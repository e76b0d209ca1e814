"""
Property suites run by the check engine.

Each suite takes a graph and a :class:`CheckContext`, raises
:class:`VerificationError` on the first violated property and returns the
number of instances it examined. Instances are enumerated exhaustively when
there are few enough of them and sampled otherwise.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Sequence, Tuple, TypeVar

import networkx as nx

from ..config import WIDTH_CAP, Settings
from ..core.bits import VertexSet, is_subset, iter_bits, mask_of, submasks
from ..core.graph import Graph, all_labelled_graphs, induced_subgraph, is_simplex
from ..core.lattice import (
    brute_force_closed_sets,
    brute_force_height,
    disjoint_union_check,
    enumerate_closed_sets,
    is_realisable,
    is_realisable_by_definition,
    join_product_check,
    strip_kernel,
)
from ..core.ortho import closure, ortho_complement
from ..exceptions import PreconditionError, VerificationError
from .automorphism import verify_split_sequence
from .compression import complement_commutes, compress, lattice_quotient_map, meets_o_classes_once, vertex_classes
from .extension import (
    alpha_transform,
    analyze_extension,
    admits_doubling,
    closed_link_height_check,
    cosimplex_doubling_check,
    find_cosimplex,
    find_extension_witnesses,
    gamma_isomorphism_verdict,
)
from .inflation import (
    InflationKind,
    abelian_closure,
    abelian_closure_brute_force,
    elementary_deflate,
    elementary_inflate,
    free_closure,
    free_closure_brute_force,
    is_free_co_simplex,
    o_equivalent,
    perp_equivalent,
    union_complement_check,
    verify_inflation_invariance,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class CheckContext:
    """Sampling policy shared by the suites of one run."""

    settings: Settings
    rng: random.Random
    exhaustive: bool = False

    @classmethod
    def from_settings(cls, settings: Settings, exhaustive: bool = False) -> "CheckContext":
        return cls(settings=settings, rng=random.Random(settings.random_seed), exhaustive=exhaustive)

    def enumerates(self, graph: Graph) -> bool:
        """Whether suites walk every instance of ``graph`` rather than a sample."""
        return self.exhaustive and graph.n <= self.settings.exhaustive_limit

    def tuples(self, graph: Graph, arity: int) -> List[Tuple[VertexSet, ...]]:
        """All ``arity``-tuples of subsets, or ``random_trials`` random ones."""
        trials = self.settings.random_trials
        if self.enumerates(graph) or (1 << (graph.n * arity)) <= trials:
            return list(itertools.product(range(1 << graph.n), repeat=arity))
        return [tuple(self.rng.getrandbits(graph.n) if graph.n else 0 for _ in range(arity)) for _ in range(trials)]

    def limit(self, graph: Graph, items: Iterable[T]) -> Iterable[T]:
        """``items`` in full when enumerating, else the first ``random_trials`` of them."""
        if self.enumerates(graph):
            return items
        return itertools.islice(items, self.settings.random_trials)

    def subsets(self, graph: Graph) -> List[VertexSet]:
        return [t[0] for t in self.tuples(graph, 1)]

    def can_scan(self, graph: Graph) -> bool:
        return graph.n <= self.settings.scan_limit


def _require(condition: bool, message: str) -> None:
    if not condition:
        logger.error(message)
        raise VerificationError(message)


def _components(graph: Graph) -> List[VertexSet]:
    return sorted(mask_of(c) for c in nx.connected_components(graph.to_networkx()))


def _random_simplex(graph: Graph, rng: random.Random) -> VertexSet:
    """A random subset of a greedily grown clique."""
    order = list(range(graph.n))
    rng.shuffle(order)
    chosen = 0
    for v in order:
        if graph.perp(v) & chosen == chosen and rng.random() < 0.5:
            chosen |= 1 << v
    return chosen


def _pairwise_adjacent(graph: Graph, subset: VertexSet) -> bool:
    return all(graph.has_edge(u, v) for u, v in itertools.combinations(iter_bits(subset), 2))


def check_complement_laws(graph: Graph, ctx: CheckContext) -> int:
    """Monotonicity, union and relativity laws of O^Z, and the simplex / clique tests."""
    components = _components(graph)
    triples = ctx.tuples(graph, 3)
    for y1, y2, z in triples:

        def oz(y: VertexSet) -> VertexSet:
            return ortho_complement(graph, y, z)

        y = y1 & z
        _require(is_subset(y, oz(oz(y))), f"Y ⊄ O^Z(O^Z(Y)) for Y={y:#x}, Z={z:#x}")
        _require(oz(y) == oz(oz(oz(y))), f"O^Z(Y) ≠ O^Z(O^Z(O^Z(Y))) for Y={y:#x}, Z={z:#x}")
        low = y1 & y2
        _require(is_subset(oz(y2), oz(low)), "O^Z is not inclusion-reversing")
        _require(is_subset(oz(y1) | oz(y2), oz(low)), "O^Z(Y₁∩Y₂) ⊉ O^Z(Y₁) ∪ O^Z(Y₂)")
        _require(oz(y1 | y2) == oz(y1) & oz(y2), "O^Z(Y₁∪Y₂) ≠ O^Z(Y₁) ∩ O^Z(Y₂)")
        _require(oz(y1) == ortho_complement(graph, y1) & z, "O^Z(Y) ≠ O^X(Y) ∩ Z")

        perp = ortho_complement(graph, y1)
        simplex = _pairwise_adjacent(graph, y1)
        _require(simplex == is_subset(y1, perp), f"Simplex test disagrees at {graph.format_set(y1)}")
        maximal = simplex and not any(
            graph.perp(x) & y1 == y1 for x in iter_bits(graph.vertices & ~y1)
        )
        _require(maximal == (y1 == perp), f"Clique test disagrees at {graph.format_set(y1)}")

        if len(components) > 1:
            for part in components:
                u = y1 & part
                if u:
                    _require(
                        ortho_complement(graph, u, part) == ortho_complement(graph, u),
                        f"Complement of {graph.format_set(u)} depends on the other components",
                    )
    return len(triples)


def check_closure_laws(graph: Graph, ctx: CheckContext) -> int:
    """The closure identities of cl = O^X ∘ O^X."""
    pairs = ctx.tuples(graph, 2)

    def cl(y: VertexSet) -> VertexSet:
        return closure(graph, y)

    def perp(y: VertexSet) -> VertexSet:
        return ortho_complement(graph, y)

    for y1, y2 in pairs:
        low = y1 & y2
        _require(is_subset(y1, cl(y1)), "Y ⊄ cl(Y)")
        _require(cl(perp(y1)) == perp(y1), "cl(Y⊥) ≠ Y⊥")
        _require(cl(cl(y1)) == cl(y1), "cl is not idempotent")
        _require(is_subset(cl(low), cl(y2)), "cl is not monotone")
        _require(is_subset(cl(low), cl(y1) & cl(y2)), "cl(Y₁∩Y₂) ⊄ cl(Y₁) ∩ cl(Y₂)")
        _require(is_subset(cl(y1) | cl(y2), cl(y1 | y2)), "cl(Y₁) ∪ cl(Y₂) ⊄ cl(Y₁∪Y₂)")
        u = perp(y1)
        _require(cl(y1) == perp(u) and cl(u) == perp(cl(y1)) == perp(y1), "cl(Y) is not the complement of Y⊥")
        if cl(y1) == cl(y2):
            _require(perp(y1) == perp(y2), "Equal closures with different complements")
        simplex = is_simplex(graph, y1)
        _require(
            simplex == is_simplex(graph, cl(y1)) == is_subset(cl(y1), perp(y1)),
            f"Simplex criteria disagree at {graph.format_set(y1)}",
        )
        _require(cl(cl(low) & y2) == cl(low), "cl(cl(Y₁) ∩ Y₂) ≠ cl(Y₁) for Y₁ ⊆ Y₂")
        _require(cl(cl(y1) | cl(y2)) == cl(y1 | y2), "cl(cl(Y₁) ∪ cl(Y₂)) ≠ cl(Y₁ ∪ Y₂)")
        _require(cl(cl(y1) & y2) & y2 == cl(y1) & y2, "cl(cl(Y₁) ∩ Y₂) ∩ Y₂ ≠ cl(Y₁) ∩ Y₂")
    return len(pairs)


def check_lattice_structure(graph: Graph, ctx: CheckContext) -> int:
    """L(Γ) against the brute-force oracle, its bounds, meets, joins and ⊥."""
    lattice = enumerate_closed_sets(graph)
    if ctx.can_scan(graph):
        _require(lattice.as_set() == brute_force_closed_sets(graph), "Closed sets differ from the brute-force oracle")
    _require(lattice.height == brute_force_height(lattice), "Height differs from the longest-chain oracle")
    _require(lattice.top == graph.vertices, "X is not the top of L")
    _require(lattice.bottom == ortho_complement(graph, graph.vertices), "O^X(X) is not the bottom of L")
    for y in ctx.subsets(graph):
        _require(closure(graph, y) in lattice, f"cl({graph.format_set(y)}) is not closed")
    for y in lattice:
        dual = lattice.complement(y)
        _require(dual in lattice and lattice.complement(dual) == y, f"⊥ is not an involution at {graph.format_set(y)}")
    elements = lattice.sets
    for s, t in ctx.limit(graph, itertools.product(elements, repeat=2)):
        _require(s & t in lattice, "L is not closed under intersection")
        upper = [u for u in elements if is_subset(s | t, u)]
        _require(lattice.join(s, t) == min(upper, key=lambda u: u.bit_count()), "Join is not the least upper bound")
        if is_subset(s, t):
            _require(is_subset(lattice.complement(t), lattice.complement(s)), "⊥ is not inclusion-reversing")
    strip_kernel(graph)
    return len(lattice)


def check_lattice_decomposition(graph: Graph, ctx: CheckContext) -> int:
    """Disjoint-union and join decompositions, and realisability of closed sets."""
    checked = 0
    components = _components(graph)
    if len(components) > 1:
        first = induced_subgraph(graph, components[0]).graph
        rest = induced_subgraph(graph, graph.vertices & ~components[0]).graph
        _require(disjoint_union_check(first, rest), "L of a disjoint union does not decompose")
        checked += 1
    co_components = sorted(mask_of(c) for c in nx.connected_components(nx.complement(graph.to_networkx())))
    if len(co_components) > 1:
        first = induced_subgraph(graph, co_components[0]).graph
        rest = induced_subgraph(graph, graph.vertices & ~co_components[0]).graph
        _require(join_product_check(first, rest), "L of a join is not the product of the parts")
        checked += 1
    lattice = enumerate_closed_sets(graph)
    for j in lattice:
        _require(
            is_realisable(graph, j, lattice) == is_realisable_by_definition(graph, j, lattice),
            f"Realisability tests disagree at {graph.format_set(j)}",
        )
        checked += 1
    return checked


def check_extension(graph: Graph, ctx: CheckContext) -> int:
    """Every link: doubling counts, height increments, the γ criterion and chain straightening."""
    lattice = enumerate_closed_sets(graph)
    links = ctx.subsets(graph)
    for link in links:
        analysis = analyze_extension(graph, link, lattice, ctx.settings.scan_limit)
        gamma_isomorphism_verdict(analysis)
        bar = analysis.extended_lattice
        t_bit = analysis.t_bit
        if ctx.can_scan(graph):
            for y in submasks(graph.vertices):
                both = y in bar and (y | t_bit) in bar
                _require(both == admits_doubling(graph, link, y), f"Doubling criterion fails at {graph.format_set(y)}")
        if analysis.link_closed:
            _require(closed_link_height_check(analysis), f"{analysis}: h(L) ≠ h(L̄) for a closed link")
            if not analysis.is_simplex_complement:
                for chain in ctx.limit(graph, bar.maximal_chains()):
                    alpha_transform(analysis, chain)
        cosimplex = find_cosimplex(graph, link)
        if cosimplex is not None and is_realisable(graph, link, lattice):
            _require(cosimplex_doubling_check(analysis, cosimplex), f"{analysis}: co-simplex doubling fails")
    return len(links)


def check_inflation(graph: Graph, ctx: CheckContext) -> int:
    """⊥- and o-equivalence laws, closures, and inflation / deflation round trips."""
    lattice = enumerate_closed_sets(graph)
    pairs = ctx.tuples(graph, 2)
    for s, t in pairs:
        cl_s, cl_t = closure(graph, s), closure(graph, t)
        equivalent = perp_equivalent(graph, s, t)
        _require(equivalent == (is_subset(t, cl_s) and is_subset(s, cl_t)), "∼⊥ is not mutual containment in closures")
        if equivalent:
            for y in lattice:
                if is_subset(s, y):
                    _require(is_subset(t, y), "A closed set containing S misses an equivalent T")
            if is_simplex(graph, s):
                _require(is_simplex(graph, t) and is_simplex(graph, s | t), "∼⊥ does not preserve simplices")
        if o_equivalent(graph, s, t) and ortho_complement(graph, s) & s == 0:
            _require(union_complement_check(graph, s, t), "O^X(Y ∪ Z) ≠ O^X(Y) for o-equivalent Y, Z")

    for s in ctx.subsets(graph):
        if is_simplex(graph, s):
            acl = abelian_closure(graph, s)
            if ctx.can_scan(graph):
                _require(acl == abelian_closure_brute_force(graph, s), "acl differs from the brute-force union")
            inflated = elementary_inflate(graph, InflationKind.ABELIAN, s)
            deflated = elementary_deflate(inflated, InflationKind.ABELIAN, graph.n)
            _require(deflated is not None and deflated.graph == graph, "Deflation does not undo Abelian inflation")
            _require(verify_inflation_invariance(graph, [s]), "Abelian inflation changed L up to isomorphism")
        if is_free_co_simplex(graph, s):
            fcl = free_closure(graph, s)
            if ctx.can_scan(graph):
                _require(fcl == free_closure_brute_force(graph, s), "fcl differs from the brute-force union")
            if is_free_co_simplex(graph, fcl):
                _require(
                    is_subset(s, fcl) and o_equivalent(graph, s, fcl) and free_closure(graph, fcl) == fcl,
                    f"fcl({graph.format_set(s)}) is not the maximal o-equivalent free co-simplex",
                )

    steps: List[VertexSet] = []
    current = graph
    for _ in range(3):
        if current.n + 1 > WIDTH_CAP:
            break
        choice = _random_simplex(current, ctx.rng)
        steps.append(choice)
        current = elementary_inflate(current, InflationKind.ABELIAN, choice)
    _require(verify_inflation_invariance(graph, steps), "A sequence of Abelian inflations changed L")
    return len(pairs)


def check_compression(graph: Graph, ctx: CheckContext) -> int:
    """Class structure, the edge-homomorphism c, c(Z)⊥ = c(Z⊥) and the lattice map."""
    vertex_classes(graph)
    compressed = compress(graph)
    subsets = ctx.subsets(graph)
    for z in subsets:
        if meets_o_classes_once(compressed, z):
            _require(complement_commutes(compressed, z), f"c(Z)⊥ ≠ c(Z⊥) at {graph.format_set(z)}")
    lattice_quotient_map(graph)
    return len(subsets)


def check_automorphisms(graph: Graph, ctx: CheckContext) -> int:
    """Aut(Γ) splits over Aut(Γ^c) with kernel ∏ S_μ(v)."""
    report = verify_split_sequence(graph, ctx.settings)
    return report.aut_order


GraphCheck = Callable[[Graph, CheckContext], int]


@dataclass(frozen=True)
class Check:
    """A named property suite."""

    check_id: str
    module: str
    description: str
    run: GraphCheck


CHECKS: Tuple[Check, ...] = (
    Check("ortho.complement_laws", "ortho", "Laws of the relative orthogonal complement", check_complement_laws),
    Check("ortho.closure_laws", "ortho", "Laws of the closure operator", check_closure_laws),
    Check("lattice.structure", "lattice", "Closed-set lattice against oracles", check_lattice_structure),
    Check("lattice.decomposition", "lattice", "Decompositions and realisability", check_lattice_decomposition),
    Check("extension.doubling", "extension", "Extension by one vertex", check_extension),
    Check("inflation.equivalences", "inflation", "Equivalences, closures and inflations", check_inflation),
    Check("compression.quotient", "compression", "Compression and its lattice map", check_compression),
    Check("automorphism.split_sequence", "automorphism", "Automorphism split sequence", check_automorphisms),
)

CHECKS_BY_ID: Dict[str, Check] = {check.check_id: check for check in CHECKS}


def select_checks(selection: Sequence[str] = ()) -> List[Check]:
    """Checks whose id or module is named in ``selection``; all of them when empty."""
    if not selection:
        return list(CHECKS)
    chosen = [c for c in CHECKS if c.check_id in selection or c.module in selection]
    unknown = set(selection) - {c.check_id for c in CHECKS} - {c.module for c in CHECKS}
    if unknown:
        raise PreconditionError(f"Unknown checks: {', '.join(sorted(unknown))}")
    return chosen


def graphs_up_to(max_vertices: int) -> Iterable[Graph]:
    """Every labelled graph with 1 to ``max_vertices`` vertices."""
    for n in range(1, max_vertices + 1):
        yield from all_labelled_graphs(n)


def check_extension_witnesses(max_vertices: int) -> Dict[str, object]:
    """Witnesses for each height increment and for the join / meet failures."""
    found = find_extension_witnesses(graphs_up_to(max_vertices))
    totals = {m1 + m2 for m1, m2 in found.by_increment}
    _require(totals <= {0, 1, 2}, f"Total height increments {sorted(totals)} outside 0..2")
    if max_vertices >= 5:
        _require(totals == {0, 1, 2}, f"Only total increments {sorted(totals)} were observed")
    if max_vertices >= 3:
        _require(found.join_failure is not None, "No extension where β̃ fails to preserve joins")
        _require(found.meet_failure is not None, "No extension where γ̃ fails to preserve meets")
    return {
        "increments": sorted(list(key) for key in found.by_increment),
        "join_failure": found.join_failure is not None,
        "meet_failure": found.meet_failure is not None,
    }
