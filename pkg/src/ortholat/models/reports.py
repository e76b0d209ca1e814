"""
Report models emitted by the command-line front-end.

Vertex sets appear as sorted lists of vertex names; every model serialises to
JSON with stable keys.
"""

from typing import List, Optional

from pydantic import BaseModel, Field

VertexNames = List[str]


class GraphSummary(BaseModel):
    """A graph as names and edges."""

    n: int = Field(..., description="Number of vertices")
    vertices: VertexNames = Field(..., description="Vertex names in index order")
    edges: List[List[str]] = Field(default_factory=list, description="Edges as name pairs, u < v")


class LatticeReport(BaseModel):
    """L(Γ) with its Hasse diagram."""

    graph: GraphSummary
    size: int = Field(..., description="Number of closed sets")
    height: int = Field(..., description="Length of the longest strict chain")
    cdim: int = Field(..., description="Centraliser dimension, equal to the height")
    kernel: VertexNames = Field(..., description="O^X(X)")
    elements: List[VertexNames] = Field(..., description="Closed sets in canonical order")
    ranks: List[int] = Field(..., description="Rank of each element")
    covers: List[List[int]] = Field(..., description="Cover pairs as element indices (lower, upper)")


class ExtensionReport(BaseModel):
    """Effect of adjoining t with link J_t."""

    graph: GraphSummary
    extended_graph: GraphSummary
    link: VertexNames
    link_closed: bool
    h_L: int
    h_Ltilde: int
    h_Lbar: int
    cdim_L: int = Field(..., description="Centraliser dimension of the graph, equal to h_L")
    cdim_Lbar: int = Field(..., description="Centraliser dimension of the extended graph, equal to h_Lbar")
    m1: int = Field(..., description="h(L̃) - h(L)")
    m2: int = Field(..., description="h(L̄) - h(L̃)")
    size_L: int
    size_Ltilde: int
    size_Lbar: int
    new_in_Ltilde: List[VertexNames] = Field(..., description="L̃ \\ L")
    R: List[VertexNames]
    S1: List[VertexNames]
    S2: List[VertexNames]
    gamma_iso: bool = Field(..., description="γ: L̄ → L is an isomorphism")
    simplex_witness: Optional[VertexNames] = Field(None, description="Simplex S with O^X(S) = J_t")


class ClassReport(BaseModel):
    """One vertex of Γ^c."""

    members: VertexNames
    size: int = Field(..., description="μ")
    kind: str = Field(..., description="ν: 1, perp or o")
    loop: bool


class LatticeMapReport(BaseModel):
    """Verdicts on c_L : L(Γ) → L(Γ^c)."""

    well_defined: bool
    surjective: bool
    injective: bool
    preserves_complement: bool
    preserves_meet: bool
    preserves_join: bool
    is_epimorphism: bool


class CompressionReport(BaseModel):
    """Γ^c with labels and the induced lattice map."""

    graph: GraphSummary
    classes: List[ClassReport]
    edges: List[List[int]] = Field(..., description="Edges between class indices, i < j")
    lattice_size: int = Field(..., description="|L(Γ^c)|")
    lattice_map: LatticeMapReport


class InflationReport(BaseModel):
    """An elementary inflation."""

    kind: str
    witness: VertexNames
    link: VertexNames
    graph: GraphSummary
    lattice_isomorphic: bool = Field(..., description="L of the result is isomorphic to L of the input")


class DeflationReport(BaseModel):
    """An attempted elementary deflation."""

    kind: str
    vertex: str
    found: bool
    witness: Optional[VertexNames] = None
    graph: Optional[GraphSummary] = None


class AutomorphismReport(BaseModel):
    """Orders in the split sequence of Aut(Γ)."""

    aut_order: int
    compressed_aut_order: int
    kernel_order: int
    class_factorial_product: int
    order_identity: bool
    homomorphism: bool
    surjective: bool
    section_is_right_inverse: bool
    section_homomorphism: bool
