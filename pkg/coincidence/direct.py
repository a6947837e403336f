"""
Brute-force modular-coincidence oracle.

Independent of the digit table and the graph: composes Φ^k explicitly and
sorts every map x -> Q^k x + a of entry (i, j) into the class of
Q^k y_j + a modulo Q^k L', where y_j is a known point of V_j. All of
φ(V_j) lies in that class. A class whose maps all land in one row is a
coset entirely covered by one color, i.e. a modular coincidence.

Works for nonadmissible systems as well.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

import config
from analysis.cosets import CosetProfile
from lattice.sublattice import Vector
from substitution.mfs import MFS, add, power, substitution_matrix
from utils.errors import BudgetExceeded
from utils.logger import get_logger

log = get_logger("coincidence.direct")


@dataclass(frozen=True)
class DirectWitness:
    coset: Vector
    color: int
    translations: tuple[Vector, ...]


@dataclass(frozen=True)
class DirectResult:
    k: int
    coincident: bool
    witnesses: tuple[DirectWitness, ...]
    classes: int


def predicted_map_count(mfs: MFS, k: int) -> int:
    """Sum of the entries of S(Φ)^k (exact, no overflow)."""
    s = substitution_matrix(mfs).astype(object)
    acc = s
    for _ in range(k - 1):
        acc = acc.dot(s)
    return int(np.sum(acc))


def direct_modular_coincidence(
    mfs: MFS,
    profile: CosetProfile,
    k: int,
    max_maps: int | None = None,
) -> DirectResult:
    """
    Decide whether Φ^k shows a modular coincidence modulo Q^k L'.

    Args:
        mfs: The system in the coordinates of the profile.
        profile: Lattice data, supplies L' and one point per color.
        k: Power to examine (>= 1).
        max_maps: Budget on composed maps (config.DIRECT_MAX_MAPS).

    Returns:
        DirectResult listing every single-row class, sorted by coset.

    Raises:
        BudgetExceeded: If Φ^k would hold more than max_maps maps.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    budget = config.DIRECT_MAX_MAPS if max_maps is None else max_maps
    predicted = predicted_map_count(mfs, k)
    if predicted > budget:
        raise BudgetExceeded(f"direct oracle maps for k={k}", budget)

    phik = power(mfs, k)
    modulus = phik.q.image_lattice(profile.lprime)
    rows: dict[Vector, set[int]] = {}
    translations: dict[Vector, set[Vector]] = {}
    for i, j, a in phik.maps():
        cls = modulus.reduce(add(phik.q.apply(profile.sample_points[j]), a))
        rows.setdefault(cls, set()).add(i)
        translations.setdefault(cls, set()).add(a)

    witnesses = tuple(
        DirectWitness(cls, next(iter(rows[cls])), tuple(sorted(translations[cls])))
        for cls in sorted(rows)
        if len(rows[cls]) == 1
    )
    log.debug(
        "Direct check k=%d: %d maps in %d classes, %d single-row",
        k,
        predicted,
        len(rows),
        len(witnesses),
    )
    return DirectResult(k, bool(witnesses), witnesses, len(rows))
