"""End-to-end checks of the worked examples and the exhaustive small-graph sweeps."""

import random

import networkx as nx
import pytest

from ortholat.config import Settings
from ortholat.core.graph import all_labelled_graphs, complete_graph, from_networkx
from ortholat.core.lattice import enumerate_closed_sets
from ortholat.engine.automorphism import verify_split_sequence
from ortholat.engine.check_engine import run_checks, run_exhaustive
from ortholat.engine.extension import (
    alpha_transform,
    analyze_extension,
    closed_link_height_check,
    find_extension_witnesses,
    gamma_isomorphism_verdict,
)
from ortholat.engine.inflation import InflationKind, elementary_inflate, simplices, verify_inflation_invariance
from ortholat.engine.invariants import graphs_up_to


def test_path_lattice_elements(p4):
    """X, the four vertex complements, {b,c}, {b}, {c} and ∅."""
    lattice = enumerate_closed_sets(p4)
    assert lattice.as_set() == {0b1111, 0b0011, 0b0111, 0b1110, 0b1100, 0b0110, 0b0010, 0b0100, 0}
    assert lattice.height == 4


def test_path_extension_keeps_height(p4):
    analysis = analyze_extension(p4, 0b0101)
    assert analysis.h_base == analysis.h_tilde == analysis.h_extended == 4
    assert analysis.tilde.as_set() - analysis.lattice.as_set() == {0b0101, 0b0001}
    assert len(analysis.lattice) == 9 < len(analysis.extended_lattice)


def test_edge_plus_vertex_extends_to_path(s3):
    analysis = analyze_extension(s3, 0b110)
    assert (analysis.h_base, analysis.h_tilde, analysis.h_extended) == (2, 3, 4)
    assert nx.is_isomorphic(analysis.extended_graph.to_networkx(), nx.path_graph(4))


@pytest.mark.slow
def test_extension_sweep_up_to_five_vertices():
    """Every graph on at most five vertices with every link."""
    totals = set()
    for graph in graphs_up_to(5):
        lattice = enumerate_closed_sets(graph)
        for link in range(1 << graph.n):
            analysis = analyze_extension(graph, link, lattice)
            assert analysis.m1 in (0, 1) and analysis.m2 in (0, 1)
            totals.add(analysis.m1 + analysis.m2)

            doubling = analysis.doubling
            assert len(analysis.tilde) == len(lattice) + len(doubling.r)
            assert len(set(doubling.rho.values())) == len(doubling.r)
            assert len(analysis.extended_lattice) == len(analysis.tilde) + len(doubling.s)
            assert len(set(doubling.sigma.values())) == len(doubling.s)

            verdict = gamma_isomorphism_verdict(analysis)
            assert verdict.criterion == verdict.oracle

            if analysis.link_closed:
                assert closed_link_height_check(analysis)
                if not analysis.is_simplex_complement:
                    for chain in analysis.extended_lattice.maximal_chains():
                        assert len(alpha_transform(analysis, chain)) == len(chain)
    assert totals == {0, 1, 2}


@pytest.mark.slow
def test_join_and_meet_failures_are_found():
    found = find_extension_witnesses(graphs_up_to(5))
    assert found.join_failure is not None
    assert found.meet_failure is not None
    assert {m1 + m2 for m1, m2 in found.by_increment} == {0, 1, 2}


@pytest.mark.slow
def test_random_inflation_sequences():
    """500 random Abelian inflation sequences of length at most three leave L unchanged."""
    rng = random.Random(2024)
    for trial in range(500):
        n = rng.randint(1, 5)
        base = from_networkx(nx.gnp_random_graph(n, 0.5, seed=trial))
        steps = []
        current = base
        for _ in range(rng.randint(1, 3)):
            simplex = rng.choice(list(simplices(current)))
            steps.append(simplex)
            current = elementary_inflate(current, InflationKind.ABELIAN, simplex)
        assert verify_inflation_invariance(base, steps)


def test_order_identity_examples(two_edges):
    assert verify_split_sequence(complete_graph(5)).aut_order == 120
    report = verify_split_sequence(two_edges)
    assert report.aut_order == report.compressed_aut_order * report.class_factorial_product == 8


@pytest.mark.slow
def test_order_identity_on_labelled_graphs_up_to_five_vertices():
    for n in range(1, 6):
        for graph in all_labelled_graphs(n):
            assert verify_split_sequence(graph).order_identity


@pytest.mark.slow
def test_property_suites_exhaustively():
    run = run_exhaustive(4, settings=Settings())
    assert run.passed, run.error_message
    assert run.metadata["exhaustive_limit"] == 4
    assert run.skipped_graphs == 0


@pytest.mark.slow
def test_property_suites_on_random_graphs():
    """At least 1000 sampled instances per suite over graphs on six to eight vertices."""
    settings = Settings(random_trials=200)
    selection = ["ortho", "lattice", "extension", "inflation", "compression"]
    for seed in range(6):
        graph = from_networkx(nx.gnp_random_graph(6 + seed % 3, 0.4, seed=seed))
        run = run_checks(graph, selection, settings=settings)
        assert run.passed, run.error_message
