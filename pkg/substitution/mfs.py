"""
Matrix function systems (MFS).

An MFS on m colors is an m x m array of finite sets of affine maps
x -> Qx + a sharing one expansive linear part Q. Entry (i, j) holds the
translations a of the maps that send points of color j to points of
color i (row = target color, column = source color).

Provided here:
- substitution matrix and the primitivity test (Boolean powers, Wielandt bound)
- composition and memoized powers
- translation of a whole system (conjugation by x -> x + t)
- admissibility with its digit table, and bijectivity
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

import numpy as np

from lattice.expansion import ExpansionMap
from lattice.sublattice import Vector, format_vector
from utils.errors import DimensionMismatch, NotAdmissible
from utils.logger import get_logger

log = get_logger("substitution.mfs")

Rules = tuple[tuple[frozenset[Vector], ...], ...]


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


@dataclass(frozen=True)
class MFS:
    """An m x m matrix function system with expansion q."""

    q: ExpansionMap
    rules: Rules

    def __post_init__(self) -> None:
        m = len(self.rules)
        if m == 0 or any(len(row) != m for row in self.rules):
            raise DimensionMismatch(f"rules must form a non-empty square array, got {m} rows")
        for row in self.rules:
            for entry in row:
                for a in entry:
                    if len(a) != self.q.d:
                        raise DimensionMismatch(f"translation {a} is not in Z^{self.q.d}")

    @classmethod
    def from_maps(cls, q: ExpansionMap, m: int, maps: Iterable[tuple[int, int, Vector]]) -> MFS:
        """Build from (target, source, translation) triples."""
        cells: list[list[set[Vector]]] = [[set() for _ in range(m)] for _ in range(m)]
        for i, j, a in maps:
            cells[i][j].add(tuple(a))
        return cls(q, tuple(tuple(frozenset(c) for c in row) for row in cells))

    @property
    def m(self) -> int:
        return len(self.rules)

    @property
    def d(self) -> int:
        return self.q.d

    def maps(self) -> Iterator[tuple[int, int, Vector]]:
        """All (target, source, translation) triples in a deterministic order."""
        for i in range(self.m):
            for j in range(self.m):
                for a in sorted(self.rules[i][j]):
                    yield i, j, a

    @cached_property
    def columns(self) -> tuple[tuple[tuple[int, Vector], ...], ...]:
        """For every source color j the (target, translation) pairs, sorted by translation."""
        out = []
        for j in range(self.m):
            pairs = [(i, a) for i in range(self.m) for a in self.rules[i][j]]
            out.append(tuple(sorted(pairs, key=lambda p: (p[1], p[0]))))
        return tuple(out)

    @cached_property
    def translations(self) -> frozenset[Vector]:
        return frozenset(a for _, _, a in self.maps())

    def map_count(self) -> int:
        return sum(len(e) for row in self.rules for e in row)


# ---------------------------------------------------------------------------
# Substitution matrix & primitivity
# ---------------------------------------------------------------------------

def substitution_matrix(mfs: MFS) -> np.ndarray:
    """S(Φ)_ij = number of maps in entry (i, j)."""
    return np.array([[len(e) for e in row] for row in mfs.rules], dtype=np.int64)


def is_primitive(mfs: MFS) -> bool:
    """
    True iff some power S^k is strictly positive.

    Only the zero pattern matters, so powers are taken on the 0/1 matrix
    and clipped after each product; k never needs to exceed the Wielandt
    bound (m - 1)^2 + 1.
    """
    pattern = (substitution_matrix(mfs) > 0).astype(np.int64)
    power = pattern.copy()
    for _ in range((mfs.m - 1) ** 2 + 1):
        if power.all():
            return True
        power = np.minimum(power @ pattern, 1)
    return False


# ---------------------------------------------------------------------------
# Composition
# ---------------------------------------------------------------------------

def compose(outer: MFS, inner: MFS) -> MFS:
    """
    The system outer ∘ inner.

    Entry (i, j) collects g∘f(x) = Q_o Q_i x + (Q_o a_f + a_g) over
    g ∈ outer(i, l) and f ∈ inner(l, j).
    """
    if outer.d != inner.d or outer.m != inner.m:
        raise DimensionMismatch(
            f"cannot compose {outer.m} colors in Z^{outer.d} with {inner.m} colors in Z^{inner.d}"
        )
    m = outer.m
    cells: list[list[set[Vector]]] = [[set() for _ in range(m)] for _ in range(m)]
    for l in range(m):
        lifted = {j: [outer.q.apply(a) for a in inner.rules[l][j]] for j in range(m)}
        for i in range(m):
            outer_ts = outer.rules[i][l]
            if not outer_ts:
                continue
            for j in range(m):
                for qa in lifted[j]:
                    for ag in outer_ts:
                        cells[i][j].add(add(qa, ag))
    return MFS(
        outer.q.compose(inner.q),
        tuple(tuple(frozenset(c) for c in row) for row in cells),
    )


@lru_cache(maxsize=256)
def power(mfs: MFS, k: int) -> MFS:
    """Φ^k by repeated squaring (memoized)."""
    if k < 1:
        raise ValueError(f"power must be >= 1, got {k}")
    if k == 1:
        return mfs
    half = power(mfs, k // 2)
    squared = compose(half, half)
    result = compose(squared, mfs) if k % 2 else squared
    log.debug("Composed Φ^%d: %d maps", k, result.map_count())
    return result


def translate(mfs: MFS, t: Vector) -> MFS:
    """
    The system conjugated by x -> x + t: every translation a becomes a + Qt - t.

    If V is a fixed point of mfs, then V - t is a fixed point of the result.
    """
    shift = sub(mfs.q.apply(t), t)
    return MFS(
        mfs.q,
        tuple(tuple(frozenset(add(a, shift) for a in e) for e in row) for row in mfs.rules),
    )


# ---------------------------------------------------------------------------
# Admissibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DigitTable:
    """
    Digit maps of an admissible system.

    digits: the translations in lexicographic order.
    maps[z][j]: the color i with digits[z] ∈ rules(i, j).
    """

    digits: tuple[Vector, ...]
    maps: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.maps[0]) if self.maps else 0

    def image(self, j: int, z: int) -> int:
        return self.maps[z][j]

    def digit_label(self, z: int) -> str:
        return format_vector(self.digits[z])


@dataclass(frozen=True)
class AdmissibilityResult:
    ok: bool
    table: DigitTable | None = None
    diagnostic: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_admissible(mfs: MFS, names: tuple[str, ...] | None = None) -> AdmissibilityResult:
    """
    Check that all translations form one transversal of Z^d/QZ^d, used once per column.

    Returns:
        AdmissibilityResult; on success it carries the digit table, on
        failure a diagnostic naming the offending column or digit.
    """
    names = names or tuple(str(i) for i in range(mfs.m))
    digits = tuple(sorted(mfs.translations))
    det = abs(mfs.q.det)
    if len(digits) != det:
        return AdmissibilityResult(
            False,
            diagnostic=f"{len(digits)} distinct translations but |det Q| = {det}",
        )
    seen: dict[Vector, Vector] = {}
    for a in digits:
        key = mfs.q.digit_lattice.reduce(a)
        if key in seen:
            return AdmissibilityResult(
                False,
                diagnostic=(
                    f"translations {format_vector(seen[key])} and {format_vector(a)} "
                    f"are congruent mod QZ^{mfs.d}"
                ),
            )
        seen[key] = a

    maps: list[list[int]] = [[-1] * mfs.m for _ in digits]
    position = {a: z for z, a in enumerate(digits)}
    for j in range(mfs.m):
        counts = dict.fromkeys(digits, 0)
        for i, a in mfs.columns[j]:
            counts[a] += 1
            maps[position[a]][j] = i
        for a, n in counts.items():
            if n != 1:
                return AdmissibilityResult(
                    False,
                    diagnostic=f"column {names[j]}: digit {format_vector(a)} appears {n} times",
                )
    return AdmissibilityResult(True, DigitTable(digits, tuple(tuple(r) for r in maps)))


def is_bijective(mfs: MFS) -> bool:
    """
    True iff every digit map j -> Φ(j)_z is a permutation of the colors.

    Raises:
        NotAdmissible: If the system is not admissible.
    """
    result = is_admissible(mfs)
    if not result.ok or result.table is None:
        raise NotAdmissible(result.diagnostic)
    return all(len(set(row)) == mfs.m for row in result.table.maps)
