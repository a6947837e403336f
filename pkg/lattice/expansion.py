"""
Expansive integer maps Q and Q-adic digit expansions.

- ExpansionMap validates det(Q) != 0 and expansiveness (all eigenvalues of
  modulus > 1, checked on the roots of the exact characteristic polynomial
  with config.EXPANSIVE_MARGIN)
- Exact solves (Q^{-1} v, fixed points of x -> Q^k x + a) go through sympy
  rationals, so nothing is ever rounded
- qadic_digits / evaluate_digits convert between points and digit words
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from sympy import Matrix, eye

import config
from lattice.sublattice import (
    Sublattice,
    Vector,
    coset_representatives,
    format_vector,
    hnf,
)
from utils.errors import BadTransversal, DimensionMismatch, NotExpansive
from utils.logger import get_logger

log = get_logger("lattice.expansion")


def _integral(column: Matrix) -> Vector | None:
    if all(x.is_integer for x in column):
        return tuple(int(x) for x in column)
    return None


@dataclass(frozen=True)
class ExpansionMap:
    """The linear part Q shared by all maps x -> Qx + a of a system."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        d = len(self.matrix)
        if d == 0 or any(len(row) != d for row in self.matrix):
            raise DimensionMismatch(f"Q must be a non-empty square matrix, got {self.matrix}")
        if self.det == 0:
            raise NotExpansive(f"Q = {self.matrix} is singular")
        smallest = min(self.eigenvalue_moduli)
        if smallest - 1.0 <= config.EXPANSIVE_MARGIN:
            raise NotExpansive(
                f"Q = {self.matrix} is not expansive (smallest |eigenvalue| = {smallest:.12g})"
            )

    @classmethod
    def scalar(cls, q: int, d: int = 1) -> ExpansionMap:
        return cls(tuple(tuple(q if i == j else 0 for j in range(d)) for i in range(d)))

    @property
    def d(self) -> int:
        return len(self.matrix)

    @cached_property
    def sympy_matrix(self) -> Matrix:
        return Matrix(self.matrix)

    @cached_property
    def det(self) -> int:
        return int(self.sympy_matrix.det())

    @cached_property
    def eigenvalue_moduli(self) -> list[float]:
        coeffs = [float(c) for c in self.sympy_matrix.charpoly().all_coeffs()]
        return sorted(float(abs(r)) for r in np.roots(coeffs))

    @cached_property
    def _inverse(self) -> Matrix:
        return self.sympy_matrix.inv()

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def apply(self, v: Sequence[int]) -> Vector:
        return tuple(sum(r * x for r, x in zip(row, v)) for row in self.matrix)

    def compose(self, other: ExpansionMap) -> ExpansionMap:
        """Matrix product self * other."""
        if other.d != self.d:
            raise DimensionMismatch(f"cannot compose {self.d}x{self.d} with {other.d}x{other.d}")
        product = self.sympy_matrix * other.sympy_matrix
        return ExpansionMap(tuple(tuple(int(x) for x in product.row(i)) for i in range(self.d)))

    def power(self, k: int) -> ExpansionMap:
        if k < 1:
            raise ValueError(f"power must be >= 1, got {k}")
        p = self.sympy_matrix ** k
        return ExpansionMap(tuple(tuple(int(x) for x in p.row(i)) for i in range(self.d)))

    def preimage(self, v: Sequence[int]) -> Vector | None:
        """Q^{-1} v if it is an integer vector, else None."""
        return _integral(self._inverse * Matrix(list(v)))

    def rational_preimage(self, v: Sequence[int]) -> Matrix:
        return self._inverse * Matrix(list(v))

    def fixed_point(self, translation: Sequence[int], k: int = 1) -> Vector | None:
        """
        Integral fixed point of x -> Q^k x + a, i.e. (Q^k - Id)^{-1}(-a).

        Q^k - Id is invertible because Q is expansive.
        """
        shifted = self.sympy_matrix ** k - eye(self.d)
        solution = shifted.LUsolve(Matrix([-x for x in translation]))
        return _integral(solution)

    def image_lattice(self, lattice: Sublattice) -> Sublattice:
        """Q * lattice."""
        return hnf([self.apply(col) for col in lattice.columns], self.d)

    @cached_property
    def digit_lattice(self) -> Sublattice:
        """Q Z^d."""
        return self.image_lattice(Sublattice.standard(self.d))

    @cached_property
    def canonical_digits(self) -> tuple[Vector, ...]:
        """The canonical transversal of Z^d / QZ^d (lexicographic, 0 first)."""
        labels = coset_representatives(Sublattice.standard(self.d), self.digit_lattice)
        return tuple(label.representative for label in labels)

    def __str__(self) -> str:
        if self.d == 1:
            return str(self.matrix[0][0])
        return "[" + ",".join(format_vector(row) for row in self.matrix) + "]"


# ---------------------------------------------------------------------------
# Q-adic expansions
# ---------------------------------------------------------------------------

def _check_transversal(q: ExpansionMap, transversal: Sequence[Sequence[int]]) -> dict[Vector, Vector]:
    if len(transversal) != abs(q.det):
        raise BadTransversal(
            f"{len(transversal)} representatives given, |det Q| = {abs(q.det)}"
        )
    by_class: dict[Vector, Vector] = {}
    for rep in transversal:
        key = q.digit_lattice.reduce(rep)
        if key in by_class:
            raise BadTransversal(
                f"representatives {by_class[key]} and {tuple(rep)} are congruent mod QZ^{q.d}"
            )
        by_class[key] = tuple(rep)
    return by_class


def qadic_digits(
    x: Sequence[int],
    q: ExpansionMap,
    k: int,
    transversal: Sequence[Sequence[int]],
) -> tuple[Vector, ...]:
    """
    First k Q-adic digits of x with respect to ``transversal``.

    x = a_1 + Q a_2 + ... + Q^{k-1} a_k  (mod Q^k Z^d).

    Raises:
        BadTransversal: If the representatives are incomplete or congruent.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    by_class = _check_transversal(q, transversal)
    digits: list[Vector] = []
    current = tuple(x)
    for _ in range(k):
        alpha = by_class[q.digit_lattice.reduce(current)]
        digits.append(alpha)
        rest = q.preimage([c - a for c, a in zip(current, alpha)])
        if rest is None:
            raise AssertionError(f"{current} - {alpha} not in QZ^{q.d}")
        current = rest
    return tuple(digits)


def evaluate_digits(digits: Sequence[Sequence[int]], q: ExpansionMap) -> Vector:
    """a_1 + Q a_2 + ... + Q^{k-1} a_k (Horner from the last digit)."""
    acc: Vector = tuple([0] * q.d)
    for alpha in reversed(digits):
        acc = tuple(a + b for a, b in zip(q.apply(acc), alpha))
    return acc
