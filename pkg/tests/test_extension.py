"""Tests for adjoining a vertex and the lattices L, L̃ and L̄."""

import networkx as nx
import pytest

from ortholat.core.graph import all_labelled_graphs, complete_graph, null_graph
from ortholat.engine.extension import (
    MapKind,
    admits_doubling,
    alpha_transform,
    analyze_extension,
    closed_link_height_check,
    cosimplex_doubling_check,
    eval_map,
    find_cosimplex,
    gamma_bar_fibres,
    gamma_isomorphism_verdict,
    gamma_tilde_fibres,
    icl,
    is_simplex_complement,
    iter_extensions,
    lattice_join_failure,
    lattice_meet_failure,
    tilde_lattice,
)
from ortholat.exceptions import LatticeError, PreconditionError


def test_edge_plus_isolated_vertex(s3):
    """Adjoining t to {b,d} of a-b, d raises the height by one at each step."""
    analysis = analyze_extension(s3, 0b110)
    assert (analysis.h_base, analysis.h_tilde, analysis.h_extended) == (2, 3, 4)
    assert (analysis.m1, analysis.m2) == (1, 1)
    assert analysis.tilde.as_set() == {0b111, 0b011, 0b100, 0, 0b110, 0b010}
    assert analysis.doubling.s1 == (0b011,)
    assert analysis.doubling.s2 == (0, 0b010)
    assert analysis.link_sets == (0, 0b010, 0b100, 0b110)
    assert len(analysis.extended_lattice) == 9
    assert nx.is_isomorphic(analysis.extended_graph.to_networkx(), nx.path_graph(4))
    assert not gamma_isomorphism_verdict(analysis).criterion


def test_path_with_link_ac(p4):
    """J_t = {a,c} on the path adds {a,c} and {a} to L̃ but keeps every height."""
    analysis = analyze_extension(p4, 0b0101)
    assert (analysis.h_base, analysis.h_tilde, analysis.h_extended) == (4, 4, 4)
    new = analysis.tilde.as_set() - analysis.lattice.as_set()
    assert new == {0b0101, 0b0001}
    assert len(analysis.doubling.r) == 2
    assert set(analysis.doubling.rho.values()) == new


def test_empty_link_on_single_vertex():
    """For K1 and J_t = ∅ the whole vertex set is doubled on the S₁ side."""
    analysis = analyze_extension(complete_graph(1), 0)
    assert analysis.doubling.s1 == (0b1,)
    assert analysis.doubling.s2 == (0,)
    assert len(analysis.extended_lattice) == 4


def test_icl_and_tilde_join(s3):
    """icl intersects with J_t only for sets inside J_t."""
    assert icl(s3, 0b110, 0b010) == 0b010 & 0b110
    assert icl(s3, 0b110, 0b110) == 0b110
    assert icl(s3, 0b110, 0b011) == 0b011
    tilde = tilde_lattice(s3, 0b110)
    assert tilde.join(0b010, 0b100) == 0b110


def test_admits_doubling(s3):
    assert admits_doubling(s3, 0b110, 0b011)
    assert not admits_doubling(s3, 0b110, 0b111)


def test_map_evaluation(s3):
    """β̄ adds t exactly when O^X(Y) ⊆ J_t and γ̄ strips it again."""
    analysis = analyze_extension(s3, 0b110)
    t = analysis.t_bit
    assert eval_map(MapKind.BETA_BAR, analysis, 0b100) == 0b100 | t
    assert eval_map(MapKind.BETA_BAR, analysis, 0b010) == 0b010
    assert eval_map(MapKind.GAMMA_BAR, analysis, 0b100 | t) == 0b100
    assert eval_map(MapKind.BETA_TILDE, analysis, 0b011) == 0b011
    assert eval_map(MapKind.GAMMA_TILDE, analysis, 0b110) == 0b111
    with pytest.raises(LatticeError):
        eval_map(MapKind.BETA, analysis, 0b010)


def test_simplex_complement_criterion(p4):
    """b⊥ is the complement of the simplex {b}; {b,d} is not closed."""
    assert is_simplex_complement(p4, 0b0111) == 0b0010
    assert is_simplex_complement(p4, 0b1010) is None
    verdict = gamma_isomorphism_verdict(analyze_extension(p4, 0b0111))
    assert verdict.criterion and verdict.oracle
    assert verdict.simplex_witness == 0b0010


def test_closed_link_keeps_height(p4):
    """A closed link leaves L̃ = L, S₁ = ∅ and the height unchanged."""
    analysis = analyze_extension(p4, 0b0111)
    assert analysis.link_closed
    assert analysis.tilde.as_set() == analysis.lattice.as_set()
    assert analysis.doubling.s1 == ()
    assert closed_link_height_check(analysis)
    with pytest.raises(PreconditionError):
        closed_link_height_check(analyze_extension(p4, 0b0101))


def test_alpha_straightens_chains():
    """α maps every maximal chain of L̄ to a chain of the same length."""
    analysis = analyze_extension(null_graph(3), 0)
    for chain in analysis.extended_lattice.maximal_chains():
        image = alpha_transform(analysis, chain)
        assert len(image) == len(chain)


def test_alpha_needs_non_simplex_complement(p4):
    with pytest.raises(PreconditionError):
        alpha_transform(analyze_extension(p4, 0b0111), (0,))


def test_cosimplex_doubling():
    """J_t = O^X(A) for a non-empty co-simplex A: S₁ = ∅ and S₂ = L(J_t)."""
    graph = null_graph(3)
    analysis = analyze_extension(graph, 0)
    assert find_cosimplex(graph, 0) == 0b011
    assert cosimplex_doubling_check(analysis)


def test_cosimplex_doubling_rejects_empty_cosimplex():
    """The empty co-simplex does not qualify even though O^X(∅) = X."""
    graph = null_graph(2)
    analysis = analyze_extension(graph, graph.vertices)
    with pytest.raises(PreconditionError):
        cosimplex_doubling_check(analysis, cosimplex=0)


def test_join_and_meet_failures(n3):
    """With J_t = {x,y} in N3, β̃ breaks a join and γ̃ breaks a meet."""
    analysis = analyze_extension(n3, 0b011)
    assert set(lattice_join_failure(analysis)) == {0b001, 0b010}
    assert set(lattice_meet_failure(analysis)) == {0b011, 0b100}


def test_no_failures_for_closed_link(p4):
    analysis = analyze_extension(p4, 0b0111)
    assert lattice_join_failure(analysis) is None


def test_extension_identities_on_small_graphs():
    """Every link of every graph on up to four vertices passes the structural identities."""
    graphs = [g for n in range(1, 5) for g in all_labelled_graphs(n)]
    for analysis in iter_extensions(graphs):
        assert analysis.m1 in (0, 1) and analysis.m2 in (0, 1)
        assert len(analysis.tilde) == len(analysis.lattice) + len(analysis.doubling.r)
        assert len(analysis.extended_lattice) == len(analysis.tilde) + len(analysis.doubling.s)
        verdict = gamma_isomorphism_verdict(analysis)
        assert verdict.criterion == verdict.oracle


def test_increments_observed_on_small_graphs():
    """Totals 0 and 2 already occur by three vertices, and nothing outside 0..2."""
    graphs = [g for n in range(1, 4) for g in all_labelled_graphs(n)]
    totals = {a.m1 + a.m2 for a in iter_extensions(graphs)}
    assert {0, 2} <= totals <= {0, 1, 2}



def test_fibres_of_gamma_maps(s3):
    """{b} and {b,d} close to {a,b} and X; γ̄ folds each doubled Y onto Y ∪ {t}."""
    analysis = analyze_extension(s3, 0b110)
    assert gamma_tilde_fibres(analysis) == ((0b010, 0b011), (0b110, 0b111))
    assert gamma_bar_fibres(analysis) == ((0, 0b1000), (0b010, 0b1010), (0b011, 0b1011))


def test_closed_link_has_no_gamma_tilde_fibres(p4):
    assert gamma_tilde_fibres(analyze_extension(p4, 0b0111)) == ()


def test_map_identities_on_small_graphs():
    """β̃ keeps meets, γ̃ keeps joins, and both γ maps only fold the expected pairs."""
    graphs = [g for n in range(1, 5) for g in all_labelled_graphs(n)]
    for analysis in iter_extensions(graphs):
        lattice, tilde = analysis.lattice, analysis.tilde
        for b in lattice:
            for c in lattice:
                assert tilde.meet(b, c) == lattice.meet(b, c)
        for u in tilde:
            for v in tilde:
                joined = eval_map(MapKind.GAMMA_TILDE, analysis, tilde.join(u, v))
                expected = lattice.join(
                    eval_map(MapKind.GAMMA_TILDE, analysis, u), eval_map(MapKind.GAMMA_TILDE, analysis, v)
                )
                assert joined == expected

        link_sets = set(analysis.link_sets)
        for fibre in gamma_tilde_fibres(analysis):
            assert len(fibre) == 2
            closed, other = sorted(fibre, key=lambda s: s not in lattice)
            assert closed in lattice and closed not in link_sets
            assert other in link_sets and other not in lattice
            assert eval_map(MapKind.GAMMA_TILDE, analysis, other) == closed

        t_bit = analysis.t_bit
        for fibre in gamma_bar_fibres(analysis):
            assert len(fibre) == 2
            low, high = fibre
            assert high == low | t_bit and not low & t_bit
        doubled = [y for y in analysis.extended_lattice if not y & t_bit and (y | t_bit) in analysis.extended_lattice]
        assert len(gamma_bar_fibres(analysis)) == len(doubled)
