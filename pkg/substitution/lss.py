"""
Lattice substitution systems: seeds and fixed-point patches.

A legal seed is a color i and a point x with Q^k x + a = x for some map
a ∈ (Φ^k)_ii. The whole system is then translated so the seed sits at
the origin; patches Φ^{n·k}(seed) are nested and their union is the
fixed point V = (V_1, ..., V_m).

Patches are plain dicts position -> color. A position produced twice,
whether with the same color or not, means the sets are not disjoint or
the maps are not injective on their domains, and raises NotAnLSS.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import config
from lattice.sublattice import Vector, format_vector
from substitution.mfs import MFS, add, is_primitive, power, translate
from utils.errors import BudgetExceeded, InputError, NoSeedFound, NotAnLSS, NotPrimitive
from utils.logger import get_logger

log = get_logger("substitution.lss")


@dataclass(frozen=True)
class LSSSpec:
    """
    A normalized system together with its seed.

    mfs: the system translated so the seed is at the origin.
    offset: where the seed sat in the coordinates of the input system;
        input position = normalized position + offset.
    period: the k with x = Q^k x + a; patches grow by Φ^period.
    """

    mfs: MFS
    seed_color: int
    color_names: tuple[str, ...]
    offset: Vector
    period: int = 1

    @property
    def m(self) -> int:
        return self.mfs.m

    @property
    def d(self) -> int:
        return self.mfs.d

    @property
    def origin(self) -> Vector:
        return tuple([0] * self.d)

    def name(self, color: int) -> str:
        return self.color_names[color]

    def describe_seed(self) -> str:
        return f"{self.name(self.seed_color)}@{format_vector(self.offset)}"


@dataclass
class Patch:
    """A finite colored patch of the fixed point (normalized coordinates)."""

    points: dict[Vector, int]
    depth: int
    d: int = field(default=1)

    def __len__(self) -> int:
        return len(self.points)

    def positions_of(self, color: int) -> list[Vector]:
        return sorted(x for x, c in self.points.items() if c == color)

    def first_occurrence(self, color: int) -> Vector | None:
        found = self.positions_of(color)
        return found[0] if found else None

    def colors_present(self) -> set[int]:
        return set(self.points.values())

    def as_word(self, names: Sequence[str], fill: str = "_") -> str:
        """1D patches only: the colors from the leftmost to the rightmost point."""
        if self.d != 1:
            raise ValueError("as_word is only defined for one-dimensional patches")
        if not self.points:
            return ""
        lo = min(x[0] for x in self.points)
        hi = max(x[0] for x in self.points)
        return "".join(
            names[self.points[(x,)]] if (x,) in self.points else fill for x in range(lo, hi + 1)
        )


# ---------------------------------------------------------------------------
# Seeds
# ---------------------------------------------------------------------------

def _default_names(m: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(m))


def _legal_seed_period(mfs: MFS, color: int, position: Vector) -> int | None:
    for k in range(1, mfs.m + 1):
        phik = power(mfs, k)
        for a in sorted(phik.rules[color][color]):
            if add(phik.q.apply(position), a) == tuple(position):
                return k
    return None


def spec_from_seed(
    mfs: MFS,
    color: int,
    position: Sequence[int],
    color_names: tuple[str, ...] | None = None,
) -> LSSSpec:
    """
    Normalize around a user-supplied seed.

    Raises:
        InputError: If x is not a fixed point of any map in (Φ^k)_ii, k <= m.
    """
    names = color_names or _default_names(mfs.m)
    position = tuple(position)
    k = _legal_seed_period(mfs, color, position)
    if k is None:
        raise InputError(
            f"seed {names[color]}@{format_vector(position)} is not fixed by any map "
            f"of Φ^k for k <= {mfs.m}"
        )
    log.debug("Seed %s@%s legal with period %d", names[color], format_vector(position), k)
    return LSSSpec(translate(mfs, position), color, names, position, k)


def find_seed(mfs: MFS, color_names: tuple[str, ...] | None = None) -> LSSSpec:
    """
    Search a legal seed: k = 1..m, colors in index order, translations sorted.

    Every fixed point of x -> Q^k x + a is computed exactly; the first
    integral one wins.

    Raises:
        NotPrimitive: If the substitution matrix is not primitive.
        NoSeedFound: If no integral fixed point exists for k <= m.
    """
    names = color_names or _default_names(mfs.m)
    if not is_primitive(mfs):
        raise NotPrimitive("substitution matrix is not primitive")
    for k in range(1, mfs.m + 1):
        phik = power(mfs, k)
        for i in range(mfs.m):
            for a in sorted(phik.rules[i][i]):
                p = mfs.q.fixed_point(a, k)
                if p is not None:
                    log.info("Seed found: %s@%s (period %d)", names[i], format_vector(p), k)
                    return LSSSpec(translate(mfs, p), i, names, p, k)
    raise NoSeedFound(f"no integral fixed point of any (Φ^k)_ii map for k <= {mfs.m}")


# ---------------------------------------------------------------------------
# Patches
# ---------------------------------------------------------------------------

def substitute(mfs: MFS, points: dict[Vector, int]) -> dict[Vector, int]:
    """
    One application of Φ to a colored point set.

    Raises:
        NotAnLSS: On the first position produced twice.
    """
    out: dict[Vector, int] = {}
    for x, j in points.items():
        qx = mfs.q.apply(x)
        for i, a in mfs.columns[j]:
            y = add(qx, a)
            if y in out:
                raise NotAnLSS(y, (out[y], i))
            out[y] = i
    return out


def iter_patches(spec: LSSSpec, max_depth: int | None = None) -> Iterator[Patch]:
    """
    Yield the nested patches Φ^{n·p}(seed) for n = 0..max_depth.

    Raises:
        NotAnLSS: On a collision or if a patch fails to contain its predecessor.
        BudgetExceeded: If a patch grows beyond config.MAX_PATCH_POINTS.
    """
    max_depth = config.MAX_DEPTH if max_depth is None else max_depth
    step = power(spec.mfs, spec.period)
    points: dict[Vector, int] = {spec.origin: spec.seed_color}
    yield Patch(points, 0, spec.d)
    for depth in range(1, max_depth + 1):
        grown = substitute(step, points)
        for x, c in points.items():
            found = grown.get(x)
            if found is None:
                raise NotAnLSS(
                    x,
                    (c,),
                    f"patch at depth {depth} lost position {format_vector(x)} "
                    f"(color {spec.name(c)}) of its predecessor: the seed is not fixed",
                )
            if found != c:
                raise NotAnLSS(x, (c, found))
        if len(grown) > config.MAX_PATCH_POINTS:
            raise BudgetExceeded("patch points", config.MAX_PATCH_POINTS)
        points = grown
        log.debug("Patch depth %d: %d points", depth, len(points))
        yield Patch(points, depth, spec.d)


def generate_patch(spec: LSSSpec, k: int) -> Patch:
    """The patch Φ^{k·p}(seed)."""
    if k < 0:
        raise ValueError(f"depth must be >= 0, got {k}")
    patch = None
    for patch in iter_patches(spec, k):
        pass
    assert patch is not None
    return patch
