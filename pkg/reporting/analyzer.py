"""
End-to-end analysis of one system description.

Pipeline:
1. Build the MFS, require primitivity, pick or check the seed
2. Admissibility and the coset profile (L_i, L', Ψ_0)
3. Admissible: coincidence graph, verdict, fast paths, optional pair and
   substitution graphs, Dekking data for 1D constant-length systems
4. Not admissible: collaring when requested, the verdict is transferred
   from the collared system; otherwise the verdict stays undecided
5. Optional direct check of Φ^K
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from analysis.collaring import (
    CollaredSystem,
    admissibilize,
    find_collaring_radius,
    is_nicely_growing,
    refinement_matches,
    transfer_verdict,
)
from analysis.cosets import CosetProfile, color_lattices
from analysis.dekking import (
    ConstantLengthSub,
    dekking_coincidence,
    height,
    internal_space_descriptor,
)
from coincidence.census import decide_spec
from coincidence.direct import DirectResult, direct_modular_coincidence
from coincidence.fast_paths import fast_path_verdicts
from coincidence.graph import (
    CoincidenceGraph,
    Status,
    Verdict,
    coincidence_bound,
    coincidence_graph,
    modular_coincidence,
)
from coincidence.pair_graph import PairGraph, pair_coincidence_graph
from coincidence.substitution_graph import SubstitutionGraph, substitution_graph
from lattice.sublattice import format_vector
from parsing.builtins import builtin
from parsing.models import SpecDocument
from parsing.spec_parser import parse_spec
from reporting import models
from substitution.lss import LSSSpec, find_seed, spec_from_seed
from substitution.mfs import MFS, DigitTable, is_admissible, is_primitive
from utils.errors import Diverged, InputError, NotAdmissible, NotPrimitive
from utils.logger import get_logger

log = get_logger("reporting.analyzer")

AUTO_RADIUS = -1
BUILTIN_PREFIX = "builtin:"


@dataclass
class AnalysisOptions:
    pair_graph: bool = False
    substitution_graph: bool = False
    direct_check: int | None = None
    collar: int | None = None  # radius, AUTO_RADIUS to scan, None to skip
    max_depth: int | None = None


@dataclass
class AnalysisResult:
    spec: LSSSpec
    verdict: Verdict
    report: models.Report | None = None
    profile: CosetProfile | None = None
    graph: CoincidenceGraph | None = None
    pair_graph: PairGraph | None = None
    substitution_graph: SubstitutionGraph | None = None
    collared: CollaredSystem | None = None
    direct: DirectResult | None = None


def load_source(source: str) -> SpecDocument:
    """``builtin:NAME`` (or ``builtin:worst:M``) or a path to a description file."""
    if source.startswith(BUILTIN_PREFIX):
        return builtin(source[len(BUILTIN_PREFIX) :])
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    return parse_spec(text)


def options_from_document(doc: SpecDocument, **overrides: object) -> AnalysisOptions:
    """Document options with explicit (non-None) overrides applied on top."""
    opts = AnalysisOptions(
        direct_check=doc.option("direct_check"),
        collar=doc.option("collar"),
        max_depth=doc.option("max_depth"),
    )
    for key, value in overrides.items():
        if value is not None:
            setattr(opts, key, value)
    return opts


def headline(verdict: Verdict) -> str:
    if verdict.status is Status.COINCIDENT:
        return f"model sets: YES ({verdict.reason})"
    if verdict.status is Status.NOT_COINCIDENT:
        return "model sets: NO"
    return f"model sets: UNDECIDED ({verdict.reason})"


def promote_direct(verdict: Verdict, direct: DirectResult) -> Verdict:
    """An undecided verdict becomes Coincident when Φ^K itself shows a coincidence (exactly k=K)."""
    if verdict.status is not Status.INCONCLUSIVE or not direct.coincident:
        return verdict
    return Verdict(
        Status.COINCIDENT,
        verdict.bound,
        reason=f"direct check: modular coincidence at k={direct.k}",
    )


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

def analyze(doc: SpecDocument, source: str = "<input>", options: AnalysisOptions | None = None) -> AnalysisResult:
    """
    Run the full analysis of one document.

    Raises:
        InputError: For non-primitive, non-expansive or otherwise unusable input.
        BudgetExceeded: If a configured cap is hit.
    """
    opts = options or AnalysisOptions()
    mfs = doc.build_mfs()
    names = doc.colors
    if not is_primitive(mfs):
        raise NotPrimitive("substitution matrix is not primitive")
    if doc.seed is not None:
        spec = spec_from_seed(mfs, doc.color_index(doc.seed.color), doc.seed.position, names)
    else:
        spec = find_seed(mfs, names)

    # Patches are grown around the seed; everything reported is in input coordinates
    admissible = is_admissible(mfs, names)
    profile = color_lattices(spec, max_depth=opts.max_depth).translated(spec.offset)
    result = AnalysisResult(
        spec=spec,
        verdict=Verdict(Status.INCONCLUSIVE, coincidence_bound(spec.m)),
        profile=profile,
    )
    sections: dict[str, object] = {"cosets": _coset_section(profile)}

    if admissible.ok and admissible.table is not None:
        _analyze_admissible(result, mfs, admissible.table, opts, sections)
        if spec.d == 1:
            sections["dekking"] = _dekking_section(mfs, names, opts)
    else:
        log.info("Not admissible: %s", admissible.diagnostic)
        result.verdict = Verdict(
            Status.INCONCLUSIVE,
            coincidence_bound(spec.m),
            reason="not admissible; rerun with --collar",
        )

    if opts.collar is not None:
        sections["collaring"] = _collar(result, opts, transfer=not admissible.ok)

    if opts.direct_check is not None:
        result.direct = direct_modular_coincidence(mfs, profile, opts.direct_check)
        sections["direct_check"] = _direct_section(result.direct, names)
        promoted = promote_direct(result.verdict, result.direct)
        if promoted is not result.verdict:
            result.verdict = promoted
            sections["verdict_source"] = "direct"

    bijective = None
    if admissible.ok and admissible.table is not None:
        bijective = all(len(set(row)) == spec.m for row in admissible.table.maps)
    validation = models.ValidationSection(
        dimension=spec.d,
        colors=list(names),
        expansion=[list(row) for row in mfs.q.matrix],
        det=mfs.q.det,
        primitive=True,
        admissible=admissible.ok,
        admissibility_note=admissible.diagnostic,
        bijective=bijective,
        seed=spec.describe_seed(),
        seed_period=spec.period,
    )
    verdict_source = str(sections.pop("verdict_source", "graph"))
    result.report = models.Report(
        source=source,
        validation=validation,
        verdict=_verdict_section(result.verdict, profile, names, verdict_source),
        fast_paths=[
            models.FastPathEntry(name=f.name, implies=f.implies.value if f.implies else None, note=f.note)
            for f in result.verdict.fast_paths
        ],
        **sections,
    )
    log.info("%s: %s", source, result.report.verdict.headline)
    return result


def _analyze_admissible(
    result: AnalysisResult,
    mfs: MFS,
    table: DigitTable,
    opts: AnalysisOptions,
    sections: dict[str, object],
) -> None:
    profile = result.profile
    assert profile is not None
    names = profile.color_names
    graph = coincidence_graph(profile, table)
    verdict = modular_coincidence(graph)
    findings = fast_path_verdicts(mfs, profile, table)
    for finding in findings:
        if finding.implies is not None and finding.implies is not verdict.status:
            raise AssertionError(f"fast path {finding.name} contradicts the graph verdict")
    result.graph = graph
    result.verdict = verdict.with_fast_paths(findings)
    sections["graph"] = models.GraphSection(
        vertices=len(graph.vertices),
        edges=graph.edge_count,
        base_vertices=[s.label(names) for s in graph.base],
        singletons=[s.label(names) for s in graph.singletons()],
    )
    if opts.pair_graph:
        pg = pair_coincidence_graph(profile, table)
        result.pair_graph = pg
        sections["pair_graph"] = models.PairGraphSection(
            vertices=len(pg.vertices),
            all_reach_coincidence=pg.all_reach_coincidence,
            stuck=[s.label(names) for s in pg.stuck],
        )
    if opts.substitution_graph:
        sg = substitution_graph(table, names)
        result.substitution_graph = sg
        sections["substitution_graph"] = models.SubstitutionGraphSection(
            vertices=sg.vertex_count,
            constant_reachable=sg.constant_reachable,
            constant=names[sg.constant[0]] if sg.constant else None,
            depth=len(sg.path) if sg.constant else None,
        )


def _collar(result: AnalysisResult, opts: AnalysisOptions, transfer: bool) -> models.CollaringSection:
    spec = result.spec
    radius = opts.collar
    if radius is None or radius == AUTO_RADIUS:
        radius = find_collaring_radius(spec, max_depth=opts.max_depth)
    nicely = is_nicely_growing(spec, radius, opts.max_depth)
    collared = admissibilize(spec, radius, opts.max_depth)
    collared_verdict = decide_spec(collared.spec, opts.max_depth)
    finding = transfer_verdict(spec, collared_verdict)
    result.collared = collared
    if transfer:
        if finding.status is Status.COINCIDENT:
            reason = f"collared at R={radius}, {collared_verdict.reason}"
            result.verdict = Verdict(Status.COINCIDENT, result.verdict.bound, reason=reason)
        else:
            result.verdict = Verdict(Status.INCONCLUSIVE, result.verdict.bound, reason=finding.message)
    return models.CollaringSection(
        radius=radius,
        classes=collared.n,
        nicely_growing=nicely,
        collared_status=collared_verdict.status.value,
        collared_min_k=collared_verdict.min_k,
        transfer=finding.message,
        refinement_ok=refinement_matches(collared, spec),
    )


def _dekking_section(mfs: MFS, names: tuple[str, ...], opts: AnalysisOptions) -> models.DekkingSection | None:
    try:
        sub = ConstantLengthSub.from_mfs(mfs, names)
    except NotAdmissible as exc:
        log.debug("No Dekking data: %s", exc)
        return None
    try:
        data = height(sub, opts.max_depth)
        found = dekking_coincidence(sub, max_depth=opts.max_depth)
    except Diverged as exc:
        log.warning("Dekking analysis skipped: %s", exc)
        return None
    space = internal_space_descriptor(sub, data)
    return models.DekkingSection(
        g={names[i]: g for i, g in enumerate(data.g)},
        r=data.r,
        h=data.h,
        pure_base=str(found.base),
        coincident=found.coincident,
        k=found.k,
        j=found.j,
        kernel_size=found.kernel_size,
        internal_space=str(space),
        note=space.note,
    )


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------

def _coset_section(profile: CosetProfile) -> models.CosetSection:
    names = profile.color_names
    return models.CosetSection(
        lattice_sum=str(profile.lprime),
        index=profile.index,
        color_lattices={names[i]: str(lat) for i, lat in enumerate(profile.color_lattices)},
        classes=[
            models.ClassEntry(coset=str(label), colors=[names[c] for c in s])
            for label, s in profile.psi0
        ],
        depth=profile.depth,
    )


def _verdict_section(
    verdict: Verdict, profile: CosetProfile, names: tuple[str, ...], source: str
) -> models.VerdictSection:
    witness = None
    if verdict.witness is not None:
        w = verdict.witness
        witness = models.WitnessEntry(
            color=names[w.color],
            coset=format_vector(w.coset.representative),
            modulus=str(w.coset.modulus),
            digits=[format_vector(z) for z in w.digits],
        )
    if verdict.reason.startswith("collared"):
        source = "collared"
    return models.VerdictSection(
        status=verdict.status.value,
        headline=headline(verdict),
        min_k=verdict.min_k,
        bound=verdict.bound,
        witness=witness,
        source=source,
        note=verdict.reason,
    )


def _direct_section(direct: DirectResult, names: tuple[str, ...]) -> models.DirectCheckSection:
    return models.DirectCheckSection(
        k=direct.k,
        coincident=direct.coincident,
        classes=direct.classes,
        witnesses=[
            models.DirectWitnessEntry(
                coset=format_vector(w.coset),
                color=names[w.color],
                translations=[format_vector(t) for t in w.translations],
            )
            for w in direct.witnesses
        ],
    )
