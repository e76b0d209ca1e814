"""
Builders that turn analysis results into report models, and their plain-text
renderings.
"""

from typing import List, Optional

from ..core.bits import VertexSet
from ..core.graph import Graph
from ..core.lattice import ClosedSetLattice
from ..engine.automorphism import SplitSequenceReport
from ..engine.compression import LatticeQuotientMap
from ..engine.extension import ExtensionAnalysis, GammaVerdict
from ..engine.inflation import Deflation, InflationKind
from ..models.checks import CheckRun
from ..models.reports import (
    AutomorphismReport,
    ClassReport,
    CompressionReport,
    DeflationReport,
    ExtensionReport,
    GraphSummary,
    InflationReport,
    LatticeMapReport,
    LatticeReport,
)


def _names(graph: Graph, mask: VertexSet) -> List[str]:
    return graph.set_names(mask)


def graph_summary(graph: Graph) -> GraphSummary:
    return GraphSummary(
        n=graph.n,
        vertices=[graph.name(v) for v in range(graph.n)],
        edges=[[graph.name(u), graph.name(v)] for u, v in graph.edges()],
    )


def lattice_report(graph: Graph, lattice: ClosedSetLattice) -> LatticeReport:
    return LatticeReport(
        graph=graph_summary(graph),
        size=len(lattice),
        height=lattice.height,
        cdim=lattice.height,
        kernel=_names(graph, lattice.bottom),
        elements=[_names(graph, y) for y in lattice],
        ranks=list(lattice.ranks),
        covers=[[low, high] for low, high in lattice.covers],
    )


def extension_report(analysis: ExtensionAnalysis, verdict: GammaVerdict) -> ExtensionReport:
    graph = analysis.graph
    lattice, tilde = analysis.lattice, analysis.tilde
    doubling = analysis.doubling
    return ExtensionReport(
        graph=graph_summary(graph),
        extended_graph=graph_summary(analysis.extended_graph),
        link=_names(graph, analysis.link),
        link_closed=analysis.link_closed,
        h_L=analysis.h_base,
        h_Ltilde=analysis.h_tilde,
        h_Lbar=analysis.h_extended,
        cdim_L=analysis.h_base,
        cdim_Lbar=analysis.h_extended,
        m1=analysis.m1,
        m2=analysis.m2,
        size_L=len(lattice),
        size_Ltilde=len(tilde),
        size_Lbar=len(analysis.extended_lattice),
        new_in_Ltilde=[_names(graph, y) for y in tilde if y not in lattice],
        R=[_names(graph, y) for y in doubling.r],
        S1=[_names(graph, y) for y in doubling.s1],
        S2=[_names(graph, y) for y in doubling.s2],
        gamma_iso=verdict.criterion,
        simplex_witness=None if verdict.simplex_witness is None else _names(graph, verdict.simplex_witness),
    )


def compression_report(quotient_map: LatticeQuotientMap) -> CompressionReport:
    compressed = quotient_map.compressed
    graph = compressed.graph
    return CompressionReport(
        graph=graph_summary(graph),
        classes=[
            ClassReport(
                members=_names(graph, members),
                size=label.size,
                kind=label.kind.value,
                loop=compressed.has_loop(i),
            )
            for i, (members, label) in enumerate(zip(compressed.classes, compressed.labels))
        ],
        edges=[[i, j] for i, j in compressed.edges()],
        lattice_size=len(quotient_map.target),
        lattice_map=LatticeMapReport(
            well_defined=quotient_map.well_defined,
            surjective=quotient_map.surjective,
            injective=quotient_map.injective,
            preserves_complement=quotient_map.preserves_complement,
            preserves_meet=quotient_map.preserves_meet,
            preserves_join=quotient_map.preserves_join,
            is_epimorphism=quotient_map.is_epimorphism,
        ),
    )


def inflation_report(
    graph: Graph, kind: InflationKind, witness: VertexSet, link: VertexSet, inflated: Graph, isomorphic: bool
) -> InflationReport:
    return InflationReport(
        kind=kind.value,
        witness=_names(graph, witness),
        link=_names(graph, link),
        graph=graph_summary(inflated),
        lattice_isomorphic=isomorphic,
    )


def deflation_report(graph: Graph, kind: InflationKind, vertex: int, deflation: Optional[Deflation]) -> DeflationReport:
    if deflation is None:
        return DeflationReport(kind=kind.value, vertex=graph.name(vertex), found=False)
    return DeflationReport(
        kind=kind.value,
        vertex=graph.name(vertex),
        found=True,
        witness=_names(graph, deflation.witness),
        graph=graph_summary(deflation.graph),
    )


def automorphism_report(split: SplitSequenceReport) -> AutomorphismReport:
    return AutomorphismReport(
        aut_order=split.aut_order,
        compressed_aut_order=split.compressed_aut_order,
        kernel_order=split.kernel_order,
        class_factorial_product=split.class_factorial_product,
        order_identity=split.order_identity,
        homomorphism=split.homomorphism,
        surjective=split.surjective,
        section_is_right_inverse=split.section_is_right_inverse,
        section_homomorphism=split.section_homomorphism,
    )


def _set_text(names: List[str]) -> str:
    return "{" + ",".join(names) + "}"


def lattice_text(report: LatticeReport) -> str:
    lines = [f"|L| = {report.size}", f"h(L) = {report.height}", f"kernel = {_set_text(report.kernel)}"]
    for rank, element in zip(report.ranks, report.elements):
        lines.append(f"  rank {rank}: {_set_text(element)}")
    return "\n".join(lines)


def extension_text(report: ExtensionReport) -> str:
    lines = [
        f"J_t = {_set_text(report.link)}{' (closed)' if report.link_closed else ''}",
        f"h(L) = {report.h_L}, h(L~) = {report.h_Ltilde}, h(L-) = {report.h_Lbar}",
        f"|L| = {report.size_L}, |L~| = {report.size_Ltilde}, |L-| = {report.size_Lbar}",
        f"L~ \\ L = {', '.join(_set_text(y) for y in report.new_in_Ltilde) or 'none'}",
        f"S1 = {', '.join(_set_text(y) for y in report.S1) or 'none'}",
        f"S2 = {', '.join(_set_text(y) for y in report.S2) or 'none'}",
        f"gamma is an isomorphism: {'yes' if report.gamma_iso else 'no'}",
    ]
    return "\n".join(lines)


def compression_text(report: CompressionReport) -> str:
    lines = [f"{len(report.classes)} classes"]
    for i, cls in enumerate(report.classes):
        loop = ", loop" if cls.loop else ""
        lines.append(f"  [{i}] {_set_text(cls.members)} ({cls.size},{cls.kind}){loop}")
    for i, j in report.edges:
        lines.append(f"  [{i}] -- [{j}]")
    verdict = "epimorphism" if report.lattice_map.is_epimorphism else "not an epimorphism"
    lines.append(f"c_L: {verdict}; |L(c)| = {report.lattice_size}")
    return "\n".join(lines)


def inflation_text(report: InflationReport) -> str:
    edges = " ".join(f"{u}-{v}" for u, v in report.graph.edges)
    return "\n".join([
        f"{report.kind} inflation along {_set_text(report.witness)}, J_t = {_set_text(report.link)}",
        f"vertices {' '.join(report.graph.vertices)}",
        f"edges {edges}".rstrip(),
        f"lattice unchanged up to isomorphism: {'yes' if report.lattice_isomorphic else 'no'}",
    ])


def deflation_text(report: DeflationReport) -> str:
    if not report.found:
        return f"no {report.kind} deflation removes {report.vertex}"
    edges = " ".join(f"{u}-{v}" for u, v in report.graph.edges)
    return "\n".join([
        f"{report.kind} deflation of {report.vertex}, witness {_set_text(report.witness)}",
        f"vertices {' '.join(report.graph.vertices)}",
        f"edges {edges}".rstrip(),
    ])


def automorphism_text(report: AutomorphismReport) -> str:
    return "\n".join([
        f"|Aut| = {report.aut_order}",
        f"|Aut(c)| = {report.compressed_aut_order}",
        f"kernel = {report.kernel_order} = prod mu! = {report.class_factorial_product}",
        f"split sequence verified: {'yes' if report.order_identity and report.section_is_right_inverse else 'no'}",
    ])


def check_text(run: CheckRun) -> str:
    lines = [f"{run.subject}"]
    for result in run.results:
        detail = f" ({result.error_message})" if result.error_message else ""
        lines.append(f"  {result.status.value:8} {result.check_id} [{result.items_processed}]{detail}")
    lines.append(f"{run.completed_checks} passed, {run.failed_checks} failed, {run.skipped_checks} skipped")
    if run.skipped_graphs:
        lines.append(f"{run.skipped_graphs} graphs skipped over a cap")
    return "\n".join(lines)
