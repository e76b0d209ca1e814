"""
Adjoining a vertex t with link J_t to a graph.

For Γ̄ = Γ + t the analysis relates three lattices:

* L = L(Γ)
* L̃ = L ∪ L_t, where L_t = {C ∩ J_t : C ∈ L}, ordered by inclusion with join icl
* L̄ = L(Γ̄)

L̃ is L doubled along R (via ρ), and L̄ is L̃ doubled along S = S₁ ∪ S₂ (via σ).
t is always the last vertex of Γ̄.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..config import get_settings
from ..core.bits import VertexSet, canonical_key, is_subset, lowest, submasks
from ..core.graph import Graph, adjoin_vertex, classify_subset, is_simplex
from ..core.lattice import (
    ClosedSetLattice,
    enumerate_closed_sets,
    is_realisable,
    poset_isomorphic,
    relative_lattice,
)
from ..core.ortho import closure, ortho_complement
from ..exceptions import LatticeError, PreconditionError, VerificationError

logger = logging.getLogger(__name__)


class MapKind(str, Enum):
    """The six maps between L, L̃ and L̄."""
    BETA_TILDE = "beta_tilde"    # L → L̃, inclusion
    GAMMA_TILDE = "gamma_tilde"  # L̃ → L, cl^X
    BETA_BAR = "beta_bar"        # L̃ → L̄, cl^X̄
    GAMMA_BAR = "gamma_bar"      # L̄ → L̃, icl(Z \ {t})
    BETA = "beta"                # L → L̄, cl^X̄
    GAMMA = "gamma"              # L̄ → L, cl^X(X ∩ Z)


def icl(graph: Graph, link: VertexSet, subset: VertexSet) -> VertexSet:
    """cl^X(U), intersected with J_t when U ⊆ J_t."""
    closed = closure(graph, subset)
    if is_subset(subset, link):
        return closed & link
    return closed


def link_family(lattice: ClosedSetLattice, link: VertexSet) -> Tuple[VertexSet, ...]:
    """L_t = {C ∩ J_t : C ∈ L} in canonical order."""
    return tuple(sorted({c & link for c in lattice}, key=canonical_key))


def tilde_lattice(graph: Graph, link: VertexSet, lattice: Optional[ClosedSetLattice] = None) -> ClosedSetLattice:
    """
    Build L̃ = L ∪ L_t.

    Meet is intersection; join is icl of the union, i.e. cl(U ∪ V) ∩ J_t when
    U ∪ V ⊆ J_t and cl(U ∪ V) otherwise.
    """
    graph.check_subset(link)
    if lattice is None:
        lattice = enumerate_closed_sets(graph)
    family = set(lattice.sets) | set(link_family(lattice, link))
    return ClosedSetLattice(family, graph.vertices, join_closure=lambda u: icl(graph, link, u), graph=graph)


@dataclass(frozen=True)
class DoublingData:
    """R with ρ (L → L̃) and S = S₁ ∪ S₂, T with σ (L̃ → L̄)."""

    r: Tuple[VertexSet, ...]
    rho: Dict[VertexSet, VertexSet]
    s1: Tuple[VertexSet, ...]
    s2: Tuple[VertexSet, ...]
    s: Tuple[VertexSet, ...]
    t: Tuple[VertexSet, ...]
    sigma: Dict[VertexSet, VertexSet]


@dataclass(frozen=True)
class GammaVerdict:
    """Simplex-complement criterion against the generic isomorphism oracle."""

    criterion: bool
    oracle: bool
    simplex_witness: Optional[VertexSet]


class ExtensionAnalysis:
    """Everything produced by adjoining t with link J_t to Γ."""

    def __init__(
        self,
        graph: Graph,
        link: VertexSet,
        lattice: ClosedSetLattice,
        tilde: ClosedSetLattice,
        extended_graph: Graph,
        extended_lattice: ClosedSetLattice,
        doubling: DoublingData,
    ):
        self.graph = graph
        self.link = link
        self.lattice = lattice
        self.tilde = tilde
        self.extended_graph = extended_graph
        self.extended_lattice = extended_lattice
        self.doubling = doubling

    @property
    def t(self) -> int:
        return self.graph.n

    @property
    def t_bit(self) -> VertexSet:
        return 1 << self.graph.n

    @cached_property
    def link_sets(self) -> Tuple[VertexSet, ...]:
        return link_family(self.lattice, self.link)

    @property
    def h_base(self) -> int:
        return self.lattice.height

    @property
    def h_tilde(self) -> int:
        return self.tilde.height

    @property
    def h_extended(self) -> int:
        return self.extended_lattice.height

    @property
    def m1(self) -> int:
        return self.h_tilde - self.h_base

    @property
    def m2(self) -> int:
        return self.h_extended - self.h_tilde

    @property
    def link_closed(self) -> bool:
        return self.link in self.lattice

    @cached_property
    def simplex_witness(self) -> Optional[VertexSet]:
        return is_simplex_complement(self.graph, self.link, self.lattice)

    @property
    def is_simplex_complement(self) -> bool:
        return self.simplex_witness is not None

    def cl_bar(self, subset: VertexSet) -> VertexSet:
        return closure(self.extended_graph, subset)

    def __repr__(self) -> str:
        return (
            f"ExtensionAnalysis(n={self.graph.n}, link={self.graph.format_set(self.link)}, "
            f"heights=({self.h_base}, {self.h_tilde}, {self.h_extended}))"
        )


def _domain(analysis: ExtensionAnalysis, which: MapKind) -> ClosedSetLattice:
    if which in (MapKind.BETA_TILDE, MapKind.BETA):
        return analysis.lattice
    if which in (MapKind.GAMMA_TILDE, MapKind.BETA_BAR):
        return analysis.tilde
    return analysis.extended_lattice


def eval_map(which: MapKind, analysis: ExtensionAnalysis, element: VertexSet) -> VertexSet:
    """
    Evaluate one of the six maps by its definition.

    Args:
        which: The map to evaluate
        analysis: The extension it belongs to
        element: A member of the map's domain lattice

    Returns:
        The image, a member of the codomain lattice
    """
    which = MapKind(which)
    domain = _domain(analysis, which)
    if element not in domain:
        raise LatticeError(f"{element:#x} is not in the domain of {which.value}")
    graph, link = analysis.graph, analysis.link
    if which is MapKind.BETA_TILDE:
        return element
    if which is MapKind.GAMMA_TILDE:
        return closure(graph, element)
    if which in (MapKind.BETA_BAR, MapKind.BETA):
        return analysis.cl_bar(element)
    if which is MapKind.GAMMA_BAR:
        return icl(graph, link, element & ~analysis.t_bit)
    return closure(graph, graph.vertices & element)


def beta_bar_closed_form(analysis: ExtensionAnalysis, element: VertexSet) -> VertexSet:
    """β̄(Y) is Y, or Y ∪ {t} when O^X(Y) ⊆ J_t (also the closed form of β on L)."""
    if is_subset(ortho_complement(analysis.graph, element), analysis.link):
        return element | analysis.t_bit
    return element


def admits_doubling(graph: Graph, link: VertexSet, subset: VertexSet) -> bool:
    """
    The condition under which both Y and Y ∪ {t} are closed in Γ̄.

    O^X(Y) ⊄ J_t, and Y = O^X(O^X(Y) ∩ J_t) (intersected with J_t when Y ⊆ J_t).
    """
    complement = ortho_complement(graph, subset)
    if is_subset(complement, link):
        return False
    rebuilt = ortho_complement(graph, complement & link)
    if is_subset(subset, link):
        rebuilt &= link
    return rebuilt == subset


def doubling_sets(
    graph: Graph,
    link: VertexSet,
    tilde: ClosedSetLattice,
    scan_limit: Optional[int] = None,
) -> DoublingData:
    """
    Compute R, ρ, S₁, S₂, S, T and σ from their defining equations.

    S₁ and S₂ are found by scanning every Y ⊆ X when n ≤ scan_limit, and by
    scanning L̃ (which contains S) otherwise.
    """
    if scan_limit is None:
        scan_limit = get_settings().scan_limit
    r = tuple(
        z for z in tilde
        if not is_subset(z, link) and closure(graph, z & link) == z
    )
    rho = {z: z & link for z in r}

    if graph.n <= scan_limit:
        candidates: Iterable[VertexSet] = submasks(graph.vertices)
    else:
        logger.warning(f"n={graph.n} exceeds the subset scan limit {scan_limit}; scanning L̃ for S")
        candidates = tilde.sets
    s1: List[VertexSet] = []
    s2: List[VertexSet] = []
    for y in candidates:
        if admits_doubling(graph, link, y):
            (s2 if is_subset(y, link) else s1).append(y)
    s1.sort(key=canonical_key)
    s2.sort(key=canonical_key)
    s = tuple(sorted(s1 + s2, key=canonical_key))
    t_bit = 1 << graph.n
    sigma = {y: y | t_bit for y in s}
    return DoublingData(
        r=r, rho=rho, s1=tuple(s1), s2=tuple(s2), s=s,
        t=tuple(sorted(sigma.values(), key=canonical_key)), sigma=sigma,
    )


def _fibres(analysis: ExtensionAnalysis, which: MapKind) -> Tuple[Tuple[VertexSet, ...], ...]:
    groups: Dict[VertexSet, List[VertexSet]] = {}
    for element in _domain(analysis, which):
        groups.setdefault(eval_map(which, analysis, element), []).append(element)
    fibres = [tuple(sorted(g, key=canonical_key)) for g in groups.values() if len(g) > 1]
    return tuple(sorted(fibres, key=lambda f: canonical_key(f[0])))


def gamma_tilde_fibres(analysis: ExtensionAnalysis) -> Tuple[Tuple[VertexSet, ...], ...]:
    """Groups of two or more elements of L̃ with the same closure in L."""
    return _fibres(analysis, MapKind.GAMMA_TILDE)


def gamma_bar_fibres(analysis: ExtensionAnalysis) -> Tuple[Tuple[VertexSet, ...], ...]:
    """Groups of two or more elements of L̄ with the same image under γ̄."""
    return _fibres(analysis, MapKind.GAMMA_BAR)


def _fail(message: str) -> None:
    logger.error(message)
    raise VerificationError(message)


def _verify(analysis: ExtensionAnalysis) -> None:
    """Assert the structural facts every extension satisfies."""
    graph, link = analysis.graph, analysis.link
    lattice, tilde, bar = analysis.lattice, analysis.tilde, analysis.extended_lattice
    doubling = analysis.doubling
    label = repr(analysis)

    if not (0 <= analysis.m1 <= 1 and 0 <= analysis.m2 <= 1):
        _fail(f"{label}: height increments ({analysis.m1}, {analysis.m2}) outside {{0, 1}}")

    # L̃ is L doubled along R.
    new_sets = tilde.as_set() - lattice.as_set()
    if len(tilde) != len(lattice) + len(doubling.r):
        _fail(f"{label}: |L̃| = {len(tilde)} but |L| + |R| = {len(lattice) + len(doubling.r)}")
    if set(doubling.rho.values()) != new_sets or len(set(doubling.rho.values())) != len(doubling.r):
        _fail(f"{label}: ρ is not a bijection from R onto L̃ \\ L")

    # L̄ is L̃ doubled along S.
    image = {eval_map(MapKind.BETA_BAR, analysis, y) for y in tilde}
    if len(image) != len(tilde):
        _fail(f"{label}: β̄ is not injective")
    if len(bar) != len(tilde) + len(doubling.s):
        _fail(f"{label}: |L̄| = {len(bar)} but |L̃| + |S| = {len(tilde) + len(doubling.s)}")
    if set(doubling.t) != bar.as_set() - image:
        _fail(f"{label}: T differs from L̄ \\ β̄(L̃)")
    if any(y not in bar or doubling.sigma[y] not in bar for y in doubling.s):
        _fail(f"{label}: S ∪ T is not contained in L̄")

    for y in tilde:
        if eval_map(MapKind.BETA_BAR, analysis, y) != beta_bar_closed_form(analysis, y):
            _fail(f"{label}: β̄({graph.format_set(y)}) disagrees with its closed form")
        if eval_map(MapKind.GAMMA_BAR, analysis, eval_map(MapKind.BETA_BAR, analysis, y)) != y:
            _fail(f"{label}: γ̄β̄ is not the identity at {graph.format_set(y)}")
    for z in bar:
        if eval_map(MapKind.GAMMA_BAR, analysis, z) != z & ~analysis.t_bit:
            _fail(f"{label}: γ̄(Z) ≠ Z \\ {{t}} at {z:#x}")
    for y in lattice:
        if eval_map(MapKind.GAMMA_TILDE, analysis, y) != y:
            _fail(f"{label}: γ̃β̃ is not the identity")
        if eval_map(MapKind.GAMMA, analysis, eval_map(MapKind.BETA, analysis, y)) != y:
            _fail(f"{label}: γβ is not the identity")

    # β̃ keeps meets, γ̃ keeps joins.
    for b in lattice:
        for c in lattice:
            if tilde.meet(b, c) != lattice.meet(b, c):
                _fail(f"{label}: β̃ does not preserve the meet of {b:#x} and {c:#x}")
    for u in tilde:
        for v in tilde:
            joined = eval_map(MapKind.GAMMA_TILDE, analysis, tilde.join(u, v))
            if joined != lattice.join(closure(graph, u), closure(graph, v)):
                _fail(f"{label}: γ̃ does not preserve the join of {u:#x} and {v:#x}")

    # γ̃ identifies only a set of L_t \ L with its closure in L \ L_t.
    link_sets = set(analysis.link_sets)
    for fibre in gamma_tilde_fibres(analysis):
        if len(fibre) != 2:
            _fail(f"{label}: γ̃ identifies {len(fibre)} elements")
        inside = [f for f in fibre if f in lattice and f not in link_sets]
        outside = [f for f in fibre if f in link_sets and f not in lattice]
        if len(inside) != 1 or len(outside) != 1 or closure(graph, outside[0]) != inside[0]:
            _fail(f"{label}: γ̃ fibre {[hex(f) for f in fibre]} is not a set and its closure")

    # γ̄ identifies exactly the pairs Y, Y ∪ {t} with Y ∈ S.
    pairs = {(y, doubling.sigma[y]) for y in doubling.s}
    if set(gamma_bar_fibres(analysis)) != pairs:
        _fail(f"{label}: the fibres of γ̄ are not the pairs Y, Y ∪ {{t}} for Y ∈ S")

    if analysis.link_closed:
        if tilde.as_set() != lattice.as_set():
            _fail(f"{label}: J_t is closed but L̃ ≠ L")
        if doubling.s1:
            _fail(f"{label}: J_t is closed but S₁ is non-empty")


def analyze_extension(
    graph: Graph,
    link: VertexSet,
    base_lattice: Optional[ClosedSetLattice] = None,
    scan_limit: Optional[int] = None,
) -> ExtensionAnalysis:
    """
    Adjoin t with link J_t and relate L, L̃ and L̄.

    Args:
        graph: Base graph Γ
        link: J_t ⊆ X
        base_lattice: L(Γ), if the caller already has it
        scan_limit: Largest n for literal subset scans

    Returns:
        The verified analysis

    Raises:
        VerificationError: if any structural identity fails
    """
    graph.check_subset(link)
    extended = adjoin_vertex(graph, link)
    lattice = base_lattice if base_lattice is not None else enumerate_closed_sets(graph)
    tilde = tilde_lattice(graph, link, lattice)
    bar = enumerate_closed_sets(extended)
    doubling = doubling_sets(graph, link, tilde, scan_limit)
    analysis = ExtensionAnalysis(graph, link, lattice, tilde, extended, bar, doubling)
    _verify(analysis)
    logger.debug(f"Analysed {analysis}")
    return analysis


def is_simplex_complement(graph: Graph, subset: VertexSet, lattice: Optional[ClosedSetLattice] = None) -> Optional[VertexSet]:
    """
    Find a simplex S with O^X(S) = J, if one exists.

    Such S exists exactly when J is closed and O^X(J) is a simplex; O^X(J)
    itself is then a witness.
    """
    graph.check_subset(subset)
    closed = subset in lattice if lattice is not None else closure(graph, subset) == subset
    if not closed:
        return None
    witness = ortho_complement(graph, subset)
    if not is_simplex(graph, witness):
        return None
    return witness


def gamma_isomorphism_verdict(analysis: ExtensionAnalysis) -> GammaVerdict:
    """
    γ: L̄ → L is an isomorphism exactly when J_t is the complement of a simplex.

    The criterion is cross-checked against a generic poset-isomorphism test of
    L and L̄; disagreement raises.
    """
    witness = analysis.simplex_witness
    criterion = witness is not None
    oracle = poset_isomorphic(analysis.lattice, analysis.extended_lattice)
    if criterion != oracle:
        _fail(f"{analysis}: simplex-complement criterion says {criterion}, isomorphism oracle says {oracle}")
    if criterion:
        gamma = {eval_map(MapKind.GAMMA, analysis, z) for z in analysis.extended_lattice}
        if len(gamma) != len(analysis.extended_lattice):
            _fail(f"{analysis}: γ is not injective although J_t is a simplex complement")
    elif len(analysis.lattice) >= len(analysis.extended_lattice):
        _fail(f"{analysis}: expected |L| < |L̄|")
    return GammaVerdict(criterion=criterion, oracle=oracle, simplex_witness=witness)


@dataclass(frozen=True)
class AlphaContext:
    """Fixed data of the chain-straightening map α for a closed link."""

    cosimplex: VertexSet
    pivot: int


def alpha_context(analysis: ExtensionAnalysis) -> AlphaContext:
    """A = O^X(J_t) and a = the least vertex of A \\ J_t."""
    if not analysis.link_closed:
        raise PreconditionError(f"J_t = {analysis.graph.format_set(analysis.link)} is not closed")
    a_set = ortho_complement(analysis.graph, analysis.link)
    if is_simplex(analysis.graph, a_set):
        raise PreconditionError("O^X(J_t) is a simplex; α needs a non-simplex witness")
    return AlphaContext(cosimplex=a_set, pivot=lowest(a_set & ~analysis.link))


def alpha(analysis: ExtensionAnalysis, element: VertexSet, context: Optional[AlphaContext] = None) -> VertexSet:
    """
    α(Y) = O^X̄(W ∪ {a}) when t ∈ Y and a ∉ Y, where O^X̄(Y) = W ∪ {t}; else Y.
    """
    if context is None:
        context = alpha_context(analysis)
    a_bit = 1 << context.pivot
    if not (element & analysis.t_bit) or element & a_bit:
        return element
    w = ortho_complement(analysis.extended_graph, element) & ~analysis.t_bit
    return ortho_complement(analysis.extended_graph, w | a_bit)


def alpha_transform(analysis: ExtensionAnalysis, chain: Sequence[VertexSet]) -> Tuple[VertexSet, ...]:
    """
    Apply α to a strictly ascending chain of L̄.

    The image is strictly ascending of the same length, every element Z of it
    has t ∉ Z or A ∪ {t} ⊆ Z, and its image under γ is strictly ascending in L.
    """
    context = alpha_context(analysis)
    bar = analysis.extended_lattice
    if not bar.is_strict_chain(chain):
        raise PreconditionError("Input is not a strictly ascending chain of L̄")
    image = tuple(alpha(analysis, z, context) for z in chain)

    if not bar.is_strict_chain(image):
        _fail(f"{analysis}: α did not preserve strictness of a chain")
    t_bit = analysis.t_bit
    for z in image:
        if z & t_bit and not is_subset(context.cosimplex | t_bit, z):
            _fail(f"{analysis}: α({z:#x}) contains t without A ∪ {{t}}")
    projected = [eval_map(MapKind.GAMMA, analysis, z) for z in image]
    if not analysis.lattice.is_strict_chain(projected):
        _fail(f"{analysis}: γ∘α collapsed a chain")
    return image


def closed_link_height_check(analysis: ExtensionAnalysis) -> bool:
    """For closed J_t, h(L) = h(L̄)."""
    if not analysis.link_closed:
        raise PreconditionError(f"J_t = {analysis.graph.format_set(analysis.link)} is not closed")
    return analysis.h_base == analysis.h_extended


def find_cosimplex(graph: Graph, link: VertexSet) -> Optional[VertexSet]:
    """Least non-empty co-simplex A (canonical order) with O^X(A) = J, if any."""
    found = [
        a for a in submasks(graph.vertices & ~link)
        if a and ortho_complement(graph, a) == link and classify_subset(graph, a).is_co_simplex
    ]
    return min(found, key=canonical_key) if found else None


def cosimplex_doubling_check(analysis: ExtensionAnalysis, cosimplex: Optional[VertexSet] = None) -> bool:
    """
    For J_t = O^X(A) with A a non-empty co-simplex and J_t realisable,
    S₁ = ∅ and S₂ = {Y ∈ L : Y ⊆ J_t} = L(J_t).
    """
    graph, link = analysis.graph, analysis.link
    if cosimplex is None:
        cosimplex = find_cosimplex(graph, link)
        if cosimplex is None:
            raise PreconditionError(f"{graph.format_set(link)} is not the complement of a non-empty co-simplex")
    kind = classify_subset(graph, cosimplex)
    if cosimplex == 0 or not kind.is_co_simplex:
        raise PreconditionError(f"{graph.format_set(cosimplex)} is not a non-empty co-simplex")
    if ortho_complement(graph, cosimplex) != link:
        raise PreconditionError("J_t is not the orthogonal complement of the co-simplex")
    if not is_realisable(graph, link, analysis.lattice):
        raise PreconditionError(f"{graph.format_set(link)} is not realisable")

    below = {y for y in analysis.lattice if is_subset(y, link)}
    return (
        not analysis.doubling.s1
        and set(analysis.doubling.s2) == below
        and relative_lattice(graph, link).as_set() == below
    )


def lattice_join_failure(analysis: ExtensionAnalysis) -> Optional[Tuple[VertexSet, VertexSet]]:
    """A pair B, C ∈ L with β̃(B ∨ C) ≠ β̃(B) ∨ β̃(C) in L̃, if any."""
    lattice, tilde = analysis.lattice, analysis.tilde
    for b in lattice:
        for c in lattice:
            if lattice.join(b, c) != tilde.join(b, c):
                return (b, c)
    return None


def lattice_meet_failure(analysis: ExtensionAnalysis) -> Optional[Tuple[VertexSet, VertexSet]]:
    """A pair U, V ∈ L̃ with γ̃(U ∧ V) ≠ γ̃(U) ∧ γ̃(V), if any."""
    tilde = analysis.tilde
    graph = analysis.graph
    for u in tilde:
        for v in tilde:
            if closure(graph, u & v) != closure(graph, u) & closure(graph, v):
                return (u, v)
    return None


@dataclass
class ExtensionWitnesses:
    """Search results over a family of (Γ, J_t) pairs."""

    by_increment: Dict[Tuple[int, int], Tuple[Graph, VertexSet]] = field(default_factory=dict)
    join_failure: Optional[Tuple[Graph, VertexSet, VertexSet, VertexSet]] = None
    meet_failure: Optional[Tuple[Graph, VertexSet, VertexSet, VertexSet]] = None


def iter_extensions(graphs: Iterable[Graph]) -> Iterator[ExtensionAnalysis]:
    """Analyse every link of every graph, sharing L(Γ) across links."""
    for graph in graphs:
        lattice = enumerate_closed_sets(graph)
        for link in submasks(graph.vertices):
            yield analyze_extension(graph, link, lattice)


def find_extension_witnesses(graphs: Iterable[Graph]) -> ExtensionWitnesses:
    """
    Search for one (Γ, J_t) per observed pair of height increments (m₁, m₂),
    and for failures of β̃ to preserve joins and of γ̃ to preserve meets.
    """
    found = ExtensionWitnesses()
    for analysis in iter_extensions(graphs):
        key = (analysis.m1, analysis.m2)
        found.by_increment.setdefault(key, (analysis.graph, analysis.link))
        if found.join_failure is None:
            pair = lattice_join_failure(analysis)
            if pair is not None:
                found.join_failure = (analysis.graph, analysis.link) + pair
        if found.meet_failure is None:
            pair = lattice_meet_failure(analysis)
            if pair is not None:
                found.meet_failure = (analysis.graph, analysis.link) + pair
    logger.info(f"Observed height increments {sorted(found.by_increment)}")
    return found
