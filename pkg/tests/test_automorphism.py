"""Tests for automorphism groups and the split sequence."""

import math

import networkx as nx
import pytest

from ortholat.config import Settings
from ortholat.core.graph import build_graph, complete_graph, from_networkx, star_graph
from ortholat.engine.automorphism import (
    PermGroup,
    automorphism_group,
    compose,
    identity,
    in_kernel,
    induced_aut,
    inverse,
    is_automorphism,
    labelled_automorphism_group,
    preserves_perps,
    section_iota,
    verify_split_sequence,
)
from ortholat.engine.compression import compress
from ortholat.exceptions import CapacityError, PreconditionError


def test_permutation_helpers():
    p = (1, 2, 0)
    assert compose(p, inverse(p)) == identity(3)
    assert compose(p, p) == (2, 0, 1)


def test_group_orders(p4, k3, n3, two_edges):
    assert automorphism_group(p4).order == 2
    assert automorphism_group(k3).order == 6
    assert automorphism_group(n3).order == 6
    assert automorphism_group(star_graph(3)).order == 6
    assert automorphism_group(two_edges).order == 8


def test_group_structure(two_edges):
    """Enumerated groups are closed and their generators generate them."""
    group = automorphism_group(two_edges)
    assert group.is_group()
    assert len(group.generators) <= 3
    assert identity(4) in group
    assert not PermGroup(2, [(1, 0)]).is_group()


def test_automorphism_predicates(p4):
    assert is_automorphism(p4, (3, 2, 1, 0))
    assert not is_automorphism(p4, (1, 0, 2, 3))
    assert not is_automorphism(p4, (0, 0, 1, 2))
    assert preserves_perps(p4, (3, 2, 1, 0))


def test_induced_action_on_classes():
    """A leaf swap of the star fixes every class; a non-automorphism is rejected."""
    star = star_graph(3)
    compressed = compress(star)
    swap = (0, 2, 1, 3)
    assert induced_aut(compressed, swap) == (0, 1)
    assert in_kernel(compressed, swap)
    with pytest.raises(PreconditionError):
        induced_aut(compressed, (1, 0, 2, 3))


def test_section_maps_members_in_order(two_edges):
    compressed = compress(two_edges)
    assert section_iota(compressed, (1, 0)) == (2, 3, 0, 1)
    with pytest.raises(PreconditionError):
        section_iota(compressed, (0, 0))


def test_labels_restrict_compressed_automorphisms():
    """K2 ⊔ N2 compresses to a ⊥-class and an o-class that cannot be swapped."""
    graph = build_graph(4, [(0, 1)])
    compressed = compress(graph)
    assert labelled_automorphism_group(compressed).order == 1
    report = verify_split_sequence(graph)
    assert report.aut_order == 4
    assert report.class_factorial_product == 4


def test_split_sequence_for_complete_graphs():
    """|Aut(K_n)| = n! = 1 · n!."""
    for n in range(1, 6):
        report = verify_split_sequence(complete_graph(n))
        assert report.aut_order == math.factorial(n)
        assert report.compressed_aut_order == 1
        assert report.order_identity


def test_split_sequence_for_two_edges(two_edges):
    report = verify_split_sequence(two_edges)
    assert (report.aut_order, report.compressed_aut_order, report.kernel_order) == (8, 2, 4)
    assert report.homomorphism and report.surjective
    assert report.section_is_right_inverse and report.section_homomorphism


def test_order_identity_on_graph_atlas():
    """The order identity holds for every graph with one to six vertices, up to isomorphism."""
    for atlas_graph in nx.graph_atlas_g():
        if not 1 <= atlas_graph.number_of_nodes() <= 6:
            continue
        report = verify_split_sequence(from_networkx(atlas_graph))
        assert report.order_identity
        assert report.kernel_order == report.class_factorial_product


def test_capacity_limits(k3):
    with pytest.raises(CapacityError):
        automorphism_group(complete_graph(4), Settings(aut_cap=3))
    with pytest.raises(CapacityError):
        automorphism_group(k3, Settings(max_group_order=5))
