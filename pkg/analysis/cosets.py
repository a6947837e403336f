"""
Coset structure of a fixed point.

For each color i the lattice L_i is generated by differences of points of
V_i; their sum L' = L_1 + ... + L_m is the coarsest lattice such that each
V_i sits in a single coset c(i) + L'. Grouping colors by coset gives the
base partition Ψ_0, and the digit maps refine it level by level into the
sets Ψ_k[a] indexed by a mod Q^k L'.

The lattices are read off finite patches, so they are only accepted once
they have not changed over config.STABLE_STEPS consecutive depths and
the coset assignment is certified consistent with every map.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Sequence

import config
from lattice.expansion import ExpansionMap
from lattice.sublattice import (
    CosetLabel,
    Sublattice,
    Vector,
    coset_reduce,
    coset_representatives,
    hnf,
    index,
    lattice_sum,
)
from substitution.lss import LSSSpec, Patch, iter_patches
from substitution.mfs import MFS, DigitTable, add, sub
from utils.errors import Diverged, InputError, RankDeficient
from utils.logger import get_logger

log = get_logger("analysis.cosets")


# ---------------------------------------------------------------------------
# Color sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ColorSet:
    """A set of colors stored as a bitmask."""

    mask: int

    @classmethod
    def of(cls, colors: Iterable[int]) -> ColorSet:
        mask = 0
        for c in colors:
            mask |= 1 << c
        return cls(mask)

    @property
    def members(self) -> tuple[int, ...]:
        out = []
        mask, i = self.mask, 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return tuple(out)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, color: object) -> bool:
        return isinstance(color, int) and bool(self.mask >> color & 1)

    @property
    def is_singleton(self) -> bool:
        return len(self) == 1

    def label(self, names: Sequence[str]) -> str:
        return "{" + ",".join(names[c] for c in self.members) + "}"


def children(s: ColorSet, z: int, table: DigitTable) -> ColorSet:
    """Image of a color set under digit index z: {Φ(j)_z : j ∈ s}."""
    row = table.maps[z]
    return ColorSet.of(row[j] for j in s)


# ---------------------------------------------------------------------------
# Profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CosetProfile:
    """
    Lattice data of a fixed point.

    class_of[i]: the coset of L' containing V_i.
    psi0: the base partition, one (coset, colors) entry per coset of L'
        in canonical order.
    sample_points[i]: the first point of color i in the stabilized patch.
    """

    q: ExpansionMap
    color_names: tuple[str, ...]
    color_lattices: tuple[Sublattice, ...]
    lprime: Sublattice
    class_of: tuple[CosetLabel, ...]
    psi0: tuple[tuple[CosetLabel, ColorSet], ...]
    sample_points: tuple[Vector, ...]
    depth: int

    @property
    def m(self) -> int:
        return len(self.color_names)

    @property
    def d(self) -> int:
        return self.lprime.d

    @property
    def index(self) -> int:
        """[Z^d : L']."""
        return index(Sublattice.standard(self.d), self.lprime)

    @property
    def base_sets(self) -> tuple[ColorSet, ...]:
        return tuple(s for _, s in self.psi0)

    def translated(self, t: Vector) -> CosetProfile:
        """
        The same profile for the fixed point V + t.

        A normalized profile translated by LSSSpec.offset describes the
        input system: its cosets and sample points are in input coordinates
        and match the digit table of the untranslated MFS.
        """
        if not any(t):
            return self
        ambient = Sublattice.standard(self.d)
        class_of = tuple(
            coset_reduce(add(c.representative, t), self.lprime, ambient) for c in self.class_of
        )
        return replace(
            self,
            class_of=class_of,
            psi0=_partition(class_of, self.lprime, ambient),
            sample_points=tuple(add(x, t) for x in self.sample_points),
        )


def _patch_lattices(patch: Patch, m: int, d: int) -> tuple[tuple[Sublattice, ...], tuple[Vector, ...]] | None:
    firsts: dict[int, Vector] = {}
    diffs: list[list[Vector]] = [[] for _ in range(m)]
    for x in sorted(patch.points):
        c = patch.points[x]
        if c not in firsts:
            firsts[c] = x
        else:
            diffs[c].append(sub(x, firsts[c]))
    if len(firsts) < m:
        return None
    try:
        lats = tuple(hnf(diffs[i], d) for i in range(m))
    except RankDeficient:
        return None
    return lats, tuple(firsts[i] for i in range(m))


def verify_coset_consistency(mfs: MFS, lattice: Sublattice, class_of: Sequence[Vector]) -> bool:
    """
    Certify that every map sends the coset of its source color into the coset of its target.

    For each map x -> Qx + a in entry (i, j): Q c(j) + a ≡ c(i) mod lattice.
    """
    for i, j, a in mfs.maps():
        if lattice.reduce(add(mfs.q.apply(class_of[j]), a)) != lattice.reduce(class_of[i]):
            log.debug("Coset check failed on map (%d <- %d, %s)", i, j, a)
            return False
    return True


def color_lattices(
    spec: LSSSpec,
    max_depth: int | None = None,
    stable_steps: int | None = None,
) -> CosetProfile:
    """
    Compute L_i, L', the coset of each color and Ψ_0 from growing patches.

    Args:
        spec: The normalized system with its seed.
        max_depth: Patch depth cap (config.MAX_DEPTH).
        stable_steps: Number of unchanged transitions required (config.STABLE_STEPS).

    Returns:
        The certified CosetProfile.

    Raises:
        Diverged: If the lattices do not stabilize (or never certify) by max_depth.
        InputError: If some coset of L' contains no color.
    """
    max_depth = config.MAX_DEPTH if max_depth is None else max_depth
    stable_steps = config.STABLE_STEPS if stable_steps is None else stable_steps
    d, m = spec.d, spec.m

    history: list[tuple[Sublattice, ...]] = []
    for patch in iter_patches(spec, max_depth):
        found = _patch_lattices(patch, m, d)
        if found is None:
            history.clear()
            continue
        lats, firsts = found
        total = lattice_sum(lats, d)
        state = lats + (total,)
        history.append(state)
        if len(history) <= stable_steps or any(h != state for h in history[-stable_steps - 1:]):
            continue
        class_reps = [total.reduce(x) for x in firsts]
        if not verify_coset_consistency(spec.mfs, total, class_reps):
            log.warning(
                "Lattices stable at depth %d but coset assignment is inconsistent; going deeper",
                patch.depth,
            )
            continue
        log.info("Lattices stabilized at depth %d: L' = %s", patch.depth, total)
        return _build_profile(spec, lats, total, firsts, patch.depth)
    raise Diverged(max_depth, "color lattices did not stabilize")


def _build_profile(
    spec: LSSSpec,
    lats: tuple[Sublattice, ...],
    total: Sublattice,
    firsts: tuple[Vector, ...],
    depth: int,
) -> CosetProfile:
    ambient = Sublattice.standard(spec.d)
    class_of = tuple(coset_reduce(x, total, ambient) for x in firsts)
    return CosetProfile(
        q=spec.mfs.q,
        color_names=spec.color_names,
        color_lattices=lats,
        lprime=total,
        class_of=class_of,
        psi0=_partition(class_of, total, ambient),
        sample_points=firsts,
        depth=depth,
    )


def _partition(
    class_of: Sequence[CosetLabel], total: Sublattice, ambient: Sublattice
) -> tuple[tuple[CosetLabel, ColorSet], ...]:
    psi0 = []
    for label in coset_representatives(ambient, total):
        colors = ColorSet.of(i for i, c in enumerate(class_of) if c == label)
        if not len(colors):
            raise InputError(
                f"coset {label} of {total} holds no color: the support is not the full lattice"
            )
        psi0.append((label, colors))
    return tuple(psi0)


def psi_sets(profile: CosetProfile, table: DigitTable, k: int) -> dict[Vector, ColorSet]:
    """
    The sets Ψ_k[a] for all cosets a mod Q^k L'.

    Ψ_{k+1}[Q a + z] = {Φ(j)_z : j ∈ Ψ_k[a]}. Keys are canonical
    representatives modulo Q^k L'.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    current = {label.representative: s for label, s in profile.psi0}
    modulus = profile.lprime
    for _ in range(k):
        modulus = profile.q.image_lattice(modulus)
        nxt: dict[Vector, ColorSet] = {}
        for a, s in current.items():
            qa = profile.q.apply(a)
            for z, digit in enumerate(table.digits):
                nxt[modulus.reduce(add(qa, digit))] = children(s, z, table)
        current = nxt
    return dict(sorted(current.items()))
