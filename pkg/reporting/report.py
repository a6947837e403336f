"""
Text and JSON rendering of analysis and census results.
"""

from __future__ import annotations

import json

from coincidence.census import CensusResult
from reporting.models import Report

FORMATS = ("text", "json")


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def emit_report(report: Report, fmt: str = "text") -> str:
    """Render a report; JSON keeps the model's field order."""
    _check_format(fmt)
    if fmt == "json":
        return report.model_dump_json(indent=2) + "\n"
    return "\n".join(_text_lines(report)) + "\n"


def _text_lines(report: Report) -> list[str]:
    v = report.validation
    lines = [
        f"source: {report.source}",
        f"dimension {v.dimension}, {len(v.colors)} colors ({' '.join(v.colors)}), |det Q| = {abs(v.det)}",
        f"primitive: {'yes' if v.primitive else 'no'}",
        f"admissible: {'yes' if v.admissible else 'no'}" + (f" ({v.admissibility_note})" if v.admissibility_note else ""),
    ]
    if v.bijective is not None:
        lines.append(f"bijective: {'yes' if v.bijective else 'no'}")
    lines.append(f"seed: {v.seed} (period {v.seed_period})")

    if report.cosets is not None:
        c = report.cosets
        lines.append(f"L' = {c.lattice_sum}, [Z^{v.dimension} : L'] = {c.index} (stable at depth {c.depth})")
        for name, lattice in c.color_lattices.items():
            lines.append(f"  L_{name} = {lattice}")
        for entry in c.classes:
            lines.append(f"  Ψ0[{entry.coset}] = {{{','.join(entry.colors)}}}")

    if report.graph is not None:
        g = report.graph
        lines.append(f"coincidence graph: {g.vertices} vertices, {g.edges} edges")

    verdict = report.verdict
    lines.append(verdict.headline)
    if verdict.witness is not None:
        w = verdict.witness
        lines.append(f"  coset {w.coset} mod {w.modulus} lies in color {w.color}")
        if w.digits:
            lines.append(f"  digit path: {' '.join(w.digits)}")
    lines.append(f"  bound on minimal k: {verdict.bound}")
    for f in report.fast_paths:
        lines.append(f"  fast path {f.name}: {f.note}")

    if report.pair_graph is not None:
        p = report.pair_graph
        state = "every pair reaches a coincidence" if p.all_reach_coincidence else f"stuck pairs: {' '.join(p.stuck)}"
        lines.append(f"pair graph: {p.vertices} vertices, {state}")
    if report.substitution_graph is not None:
        s = report.substitution_graph
        reached = f"constant {s.constant} after {s.depth} steps" if s.constant_reachable else "no constant tuple"
        lines.append(f"substitution graph: {s.vertices} vertices, {reached}")
    if report.direct_check is not None:
        d = report.direct_check
        lines.append(f"direct check k={d.k}: {'coincident' if d.coincident else 'no coincidence'} ({d.classes} classes)")
        for w in d.witnesses:
            lines.append(f"  class {w.coset}: row {w.color}, translations {' '.join(w.translations)}")
    if report.dekking is not None:
        k = report.dekking
        lines.append(f"height: r = {k.r}, h = {k.h}; pure base {k.pure_base}")
        if k.coincident:
            lines.append(f"Dekking coincidence: k = {k.k}, j = {k.j} (kernel size {k.kernel_size})")
        else:
            lines.append(f"Dekking coincidence: none (kernel size {k.kernel_size})")
        lines.append(f"internal space: {k.internal_space}" + (f" ({k.note})" if k.note else ""))
    if report.collaring is not None:
        c2 = report.collaring
        lines.append(
            f"collared at R={c2.radius}: {c2.classes} classes, collared verdict {c2.collared_status}"
            + (f" (k={c2.collared_min_k})" if c2.collared_min_k is not None else "")
        )
        lines.append(f"  {c2.transfer}")
    return lines


def emit_census(result: CensusResult, fmt: str = "text") -> str:
    """Render a census result."""
    _check_format(fmt)
    payload = {
        "m": result.m,
        "q": result.q,
        "candidates": result.candidates,
        "systems": result.systems,
        "not_coincident": result.not_coincident,
        "distribution": {str(k): int(n) for k, n in result.distribution.items()},
        "maximum": result.maximum,
        "maximizers": result.maximizers,
        "worst_case": result.worst_case_encoding,
        "worst_case_attains_max": result.worst_case_attains_max,
    }
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    lines = [
        f"census m={result.m} q={result.q}: {result.systems} primitive systems "
        f"({result.candidates} candidates up to renaming)",
        f"  not coincident: {result.not_coincident}",
    ]
    for k, n in payload["distribution"].items():
        lines.append(f"  minimal k = {k}: {n}")
    lines.append(f"  maximum minimal k: {result.maximum}")
    lines.append(f"  maximizers: {', '.join(result.maximizers)}")
    if result.worst_case_encoding:
        lines.append(
            f"  worst-case member {result.worst_case_encoding} attains the maximum: "
            f"{'yes' if result.worst_case_attains_max else 'no'}"
        )
    return "\n".join(lines) + "\n"
