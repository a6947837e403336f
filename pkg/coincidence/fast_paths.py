"""
Shortcut findings that decide or constrain the verdict without the graph.

- singleton_base_class: some Ψ_0 class is a single color, so there is a
  coincidence at k = 0
- no_pairwise_coincidence: no Ψ_0 singleton and no two colors of one class
  sent to the same color by one digit, so there is no coincidence
- bijective: all digit maps are permutations; such a system has no
  coincidence unless it is periodic
- paired_classes_disjoint: 2n colors, [L:L'] = n, classes {i, i+n} whose
  columns share no map, so there is no coincidence
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from analysis.cosets import ColorSet, CosetProfile
from coincidence.graph import Status
from substitution.mfs import MFS, DigitTable
from utils.logger import get_logger

log = get_logger("coincidence.fast_paths")

SINGLETON_BASE_CLASS = "singleton_base_class"
NO_PAIRWISE_COINCIDENCE = "no_pairwise_coincidence"
BIJECTIVE = "bijective"
PAIRED_CLASSES_DISJOINT = "paired_classes_disjoint"


@dataclass(frozen=True)
class FastPathFinding:
    name: str
    implies: Status | None
    note: str = ""


def _has_pairwise_coincidence(profile: CosetProfile, table: DigitTable) -> bool:
    for _, cls in profile.psi0:
        for j, k in combinations(cls.members, 2):
            if any(row[j] == row[k] for row in table.maps):
                return True
    return False


def _paired_classes_disjoint(mfs: MFS, profile: CosetProfile) -> bool:
    m = mfs.m
    if m % 2 or profile.index != m // 2:
        return False
    n = m // 2
    expected = {ColorSet.of([i, i + n]) for i in range(n)}
    if set(profile.base_sets) != expected:
        return False
    return all(
        not (mfs.rules[j][i] & mfs.rules[j][i + n]) for i in range(n) for j in range(m)
    )


def fast_path_verdicts(mfs: MFS, profile: CosetProfile, table: DigitTable) -> list[FastPathFinding]:
    """
    Evaluate every shortcut that applies to an admissible system.

    Returns:
        The findings in a fixed order; an empty list when none applies.
    """
    findings: list[FastPathFinding] = []
    singletons = [s for s in profile.base_sets if s.is_singleton]
    names = profile.color_names

    if singletons:
        findings.append(
            FastPathFinding(
                SINGLETON_BASE_CLASS,
                Status.COINCIDENT,
                f"base class {singletons[0].label(names)} is a single color",
            )
        )
    elif not _has_pairwise_coincidence(profile, table):
        findings.append(
            FastPathFinding(
                NO_PAIRWISE_COINCIDENCE,
                Status.NOT_COINCIDENT,
                "no two colors of one base class share a digit image",
            )
        )

    if all(len(set(row)) == mfs.m for row in table.maps):
        if len(singletons) == len(profile.psi0) and profile.index == mfs.m:
            findings.append(
                FastPathFinding(BIJECTIVE, Status.COINCIDENT, f"periodic (lattice {profile.lprime})")
            )
        elif not singletons:
            findings.append(
                FastPathFinding(
                    BIJECTIVE,
                    Status.NOT_COINCIDENT,
                    "bijective; not coincident unless periodic",
                )
            )
        else:
            findings.append(FastPathFinding(BIJECTIVE, None, "bijective"))

    if _paired_classes_disjoint(mfs, profile):
        findings.append(
            FastPathFinding(
                PAIRED_CLASSES_DISJOINT,
                Status.NOT_COINCIDENT,
                "classes {i, i+n} with disjoint columns",
            )
        )
    log.debug("Fast paths: %s", [f.name for f in findings])
    return findings
