"""
Exact arithmetic on full-rank sublattices of Z^d.

A sublattice is stored by its canonical column-style Hermite normal form:
- upper triangular, positive diagonal
- entries above the diagonal reduced modulo the diagonal entry of their row
- the columns generate the group

Because the form is canonical, two Sublattice values are equal iff they
describe the same group, and coset representatives reduced through the
triangular basis are canonical as well (one per coset, inside the box
0 <= v_i < B[i][i]).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from utils.errors import DimensionMismatch, NotNested, RankDeficient
from utils.logger import get_logger

log = get_logger("lattice.sublattice")

Vector = tuple[int, ...]


def format_vector(v: Sequence[int]) -> str:
    """Render a lattice vector: bare integer in 1D, ``(x,y,...)`` otherwise."""
    if len(v) == 1:
        return str(v[0])
    return "(" + ",".join(str(x) for x in v) + ")"


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _combine(u: list[int], s: int, v: list[int], t: int) -> list[int]:
    return [s * a + t * b for a, b in zip(u, v)]


# ---------------------------------------------------------------------------
# Sublattice
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sublattice:
    """A full-rank subgroup of Z^d in canonical Hermite normal form."""

    d: int
    basis: tuple[tuple[int, ...], ...]  # rows of the HNF matrix

    @classmethod
    def standard(cls, d: int) -> Sublattice:
        """The full lattice Z^d."""
        return cls(d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @property
    def columns(self) -> list[Vector]:
        return [tuple(self.basis[i][j] for i in range(self.d)) for j in range(self.d)]

    @property
    def diagonal(self) -> Vector:
        return tuple(self.basis[i][i] for i in range(self.d))

    @property
    def det(self) -> int:
        """Index of the sublattice in Z^d (product of the diagonal)."""
        out = 1
        for x in self.diagonal:
            out *= x
        return out

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        """Integer coefficients of v in the basis columns, or None if v is not in the lattice."""
        self._check_dim(v)
        w = list(v)
        coeffs = [0] * self.d
        for i in reversed(range(self.d)):
            pivot = self.basis[i][i]
            if w[i] % pivot:
                return None
            c = w[i] // pivot
            coeffs[i] = c
            if c:
                for r in range(i + 1):
                    w[r] -= c * self.basis[r][i]
        return tuple(coeffs)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: Sublattice) -> bool:
        return all(self.contains(col) for col in other.columns)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of v + self inside the box 0 <= w_i < B[i][i]."""
        self._check_dim(v)
        w = list(v)
        for i in reversed(range(self.d)):
            q = w[i] // self.basis[i][i]
            if q:
                for r in range(i + 1):
                    w[r] -= q * self.basis[r][i]
        return tuple(w)

    def _check_dim(self, v: Sequence[int]) -> None:
        if len(v) != self.d:
            raise DimensionMismatch(f"vector {tuple(v)} is not in Z^{self.d}")

    def __str__(self) -> str:
        if self.d == 1:
            g = self.basis[0][0]
            return "Z" if g == 1 else f"{g}Z"
        if self.det == 1:
            return f"Z^{self.d}"
        cols = ", ".join(format_vector(c) for c in self.columns)
        return f"<{cols}>"


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

def _insert(pivots: dict[int, list[int]], v: list[int]) -> None:
    """Eliminate v against the echelon pivots, bottom row first, storing any new pivot."""
    for i in reversed(range(len(v))):
        if v[i] == 0:
            continue
        p = pivots.get(i)
        if p is None:
            pivots[i] = v
            return
        if v[i] % p[i] == 0:
            v = _combine(v, 1, p, -(v[i] // p[i]))
            continue
        g, x, y = xgcd(p[i], v[i])
        new_pivot = _combine(p, x, v, y)
        v = _combine(v, p[i] // g, p, -(v[i] // g))
        pivots[i] = new_pivot


def hnf(generators: Iterable[Sequence[int]], d: int) -> Sublattice:
    """
    Canonical basis of the subgroup of Z^d generated by ``generators``.

    Args:
        generators: Integer vectors of length d (any number, duplicates fine).
        d: Ambient dimension.

    Returns:
        The Sublattice in Hermite normal form.

    Raises:
        RankDeficient: If the span has rank < d.
        DimensionMismatch: If a generator has the wrong length.
    """
    pivots: dict[int, list[int]] = {}
    for g in generators:
        if len(g) != d:
            raise DimensionMismatch(f"generator {tuple(g)} is not in Z^{d}")
        if any(g):
            _insert(pivots, list(g))
    if len(pivots) < d:
        raise RankDeficient(len(pivots), d)

    cols = [list(pivots[j]) for j in range(d)]
    for j in range(d):
        if cols[j][j] < 0:
            cols[j] = [-x for x in cols[j]]
    for j in range(d):
        for i in reversed(range(j)):
            q = cols[j][i] // cols[i][i]
            if q:
                cols[j] = _combine(cols[j], 1, cols[i], -q)
    return Sublattice(d, tuple(tuple(cols[c][r] for c in range(d)) for r in range(d)))


def lattice_sum(lattices: Iterable[Sublattice], d: int) -> Sublattice:
    """The sum L_1 + ... + L_n of full-rank sublattices."""
    gens: list[Vector] = []
    for lat in lattices:
        gens.extend(lat.columns)
    return hnf(gens, d)


# ---------------------------------------------------------------------------
# Cosets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CosetLabel:
    """The coset representative + modulus inside ambient, canonically reduced."""

    ambient: Sublattice
    modulus: Sublattice
    representative: Vector

    def __str__(self) -> str:
        return format_vector(self.representative)


def coset_reduce(
    x: Sequence[int], modulus: Sublattice, ambient: Sublattice | None = None
) -> CosetLabel:
    """Canonical coset label of x modulo ``modulus``."""
    return CosetLabel(
        ambient=ambient or Sublattice.standard(modulus.d),
        modulus=modulus,
        representative=modulus.reduce(x),
    )


def index(outer: Sublattice, inner: Sublattice) -> int:
    """
    Group index [outer : inner].

    Raises:
        NotNested: If inner is not contained in outer.
    """
    if outer.d != inner.d:
        raise DimensionMismatch(f"dimensions {outer.d} and {inner.d} differ")
    if not outer.contains_lattice(inner):
        raise NotNested(f"{inner} is not contained in {outer}")
    return inner.det // outer.det


def coset_representatives(outer: Sublattice, inner: Sublattice) -> list[CosetLabel]:
    """
    All cosets of inner in outer, lexicographic on reduced representatives.

    The zero coset always comes first since reduced representatives are
    non-negative.
    """
    expected = index(outer, inner)
    labels = [
        CosetLabel(ambient=outer, modulus=inner, representative=tuple(v))
        for v in product(*(range(n) for n in inner.diagonal))
        if outer.contains(v)
    ]
    if len(labels) != expected:
        raise AssertionError(f"found {len(labels)} cosets, expected index {expected}")
    log.debug("Enumerated %d cosets of %s in %s", expected, inner, outer)
    return labels
