"""
Pydantic models for analysis reports.

Field order is the JSON order; every section except validation and
verdict is optional and omitted from the text form when absent.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


# ---------------------------------------------------------------------------
# Input checks
# ---------------------------------------------------------------------------

class ValidationSection(BaseModel):
    dimension: int
    colors: list[str]
    expansion: list[list[int]]
    det: int
    primitive: bool
    admissible: bool
    admissibility_note: str = ""
    bijective: bool | None = None
    seed: str
    seed_period: int = 1


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

class ClassEntry(BaseModel):
    coset: str
    colors: list[str]


class CosetSection(BaseModel):
    lattice_sum: str
    index: int
    color_lattices: dict[str, str] = Field(default_factory=dict)
    classes: list[ClassEntry] = Field(default_factory=list)
    depth: int


# ---------------------------------------------------------------------------
# Verdict
# ---------------------------------------------------------------------------

class WitnessEntry(BaseModel):
    color: str
    coset: str
    modulus: str
    digits: list[str] = Field(default_factory=list)


class FastPathEntry(BaseModel):
    name: str
    implies: str | None = None
    note: str = ""


class VerdictSection(BaseModel):
    status: str  # "coincident", "not_coincident", "inconclusive"
    headline: str
    min_k: int | None = None
    bound: int
    witness: WitnessEntry | None = None
    source: str = "graph"  # graph, direct, collared
    note: str = ""


# ---------------------------------------------------------------------------
# Graphs & oracles
# ---------------------------------------------------------------------------

class GraphSection(BaseModel):
    vertices: int
    edges: int
    base_vertices: list[str] = Field(default_factory=list)
    singletons: list[str] = Field(default_factory=list)


class PairGraphSection(BaseModel):
    vertices: int
    all_reach_coincidence: bool
    stuck: list[str] = Field(default_factory=list)


class SubstitutionGraphSection(BaseModel):
    vertices: int
    constant_reachable: bool
    constant: str | None = None
    depth: int | None = None


class DirectWitnessEntry(BaseModel):
    coset: str
    color: str
    translations: list[str] = Field(default_factory=list)


class DirectCheckSection(BaseModel):
    k: int
    coincident: bool
    classes: int
    witnesses: list[DirectWitnessEntry] = Field(default_factory=list)


class DekkingSection(BaseModel):
    g: dict[str, int] = Field(default_factory=dict)
    r: int
    h: int
    pure_base: str
    coincident: bool
    k: int | None = None
    j: int | None = None
    kernel_size: int
    internal_space: str
    note: str = ""


class CollaringSection(BaseModel):
    radius: int
    classes: int
    nicely_growing: bool
    collared_status: str
    collared_min_k: int | None = None
    transfer: str
    refinement_ok: bool


class Report(BaseModel):
    source: str
    validation: ValidationSection
    verdict: VerdictSection
    cosets: CosetSection | None = None
    fast_paths: list[FastPathEntry] = Field(default_factory=list)
    graph: GraphSection | None = None
    pair_graph: PairGraphSection | None = None
    substitution_graph: SubstitutionGraphSection | None = None
    direct_check: DirectCheckSection | None = None
    dekking: DekkingSection | None = None
    collaring: CollaringSection | None = None
