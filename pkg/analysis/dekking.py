"""
One-dimensional constant-length substitutions.

- height: generators g(i) of the return lattices L_i = g(i)Z, r with
  L' = rZ, and the height h (r with every prime factor of q removed)
- pure_base: the height-1 substitution on h-blocks of the fixed point
- dekking_coincidence: a constant column in some power of the pure base,
  found on the substitution graph
- minimal_period: exact periodicity test of the one-sided fixed point
- internal_space_descriptor: the symbolic group Z_q × C_h
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping

from sympy import primefactors

from analysis.cosets import color_lattices
from coincidence.substitution_graph import substitution_graph
from lattice.expansion import ExpansionMap
from substitution.lss import find_seed, iter_patches
from substitution.mfs import MFS, is_admissible
from utils.errors import Diverged, InputError, NotAdmissible
from utils.logger import get_logger

log = get_logger("analysis.dekking")


@dataclass(frozen=True)
class ConstantLengthSub:
    """
    A substitution of constant length q on letters 0..m-1.

    words[j][t] is the t-th letter of the image of letter j.
    """

    letters: tuple[str, ...]
    words: tuple[tuple[int, ...], ...]
    seed: int = 0

    def __post_init__(self) -> None:
        if len(self.words) != len(self.letters) or not self.words:
            raise InputError("one word per letter is required")
        q = len(self.words[0])
        if q < 2 or any(len(w) != q for w in self.words):
            raise InputError("all words must have the same length q >= 2")
        if any(not 0 <= c < len(self.letters) for w in self.words for c in w):
            raise InputError("word uses a letter outside the alphabet")

    @classmethod
    def from_strings(cls, mapping: Mapping[str, str]) -> ConstantLengthSub:
        """Build from single-character letters, e.g. {"a": "ab", "b": "ba"}."""
        letters = tuple(mapping)
        pos = {c: i for i, c in enumerate(letters)}
        try:
            words = tuple(tuple(pos[c] for c in mapping[a]) for a in letters)
        except KeyError as exc:
            raise InputError(f"unknown letter {exc.args[0]!r}") from None
        return cls(letters, words)

    @classmethod
    def from_mfs(cls, mfs: MFS, letters: tuple[str, ...]) -> ConstantLengthSub:
        """
        Read a 1D admissible system whose digits are a run of consecutive integers.

        Raises:
            NotAdmissible: If the system is not admissible or not of constant length.
        """
        if mfs.d != 1:
            raise NotAdmissible("constant-length substitutions are one-dimensional")
        result = is_admissible(mfs, letters)
        if not result.ok or result.table is None:
            raise NotAdmissible(result.diagnostic)
        digits = [z[0] for z in result.table.digits]
        if digits != list(range(digits[0], digits[0] + len(digits))):
            raise NotAdmissible(f"digits {digits} are not consecutive")
        words = tuple(
            tuple(result.table.maps[t][j] for t in range(len(digits))) for j in range(mfs.m)
        )
        return cls(letters, words)

    @property
    def q(self) -> int:
        return len(self.words[0])

    @property
    def m(self) -> int:
        return len(self.letters)

    def to_mfs(self) -> MFS:
        maps = ((c, j, (t,)) for j, w in enumerate(self.words) for t, c in enumerate(w))
        return MFS.from_maps(ExpansionMap.scalar(self.q), self.m, maps)

    def word_string(self, j: int) -> str:
        return "".join(self.letters[c] for c in self.words[j])

    def __str__(self) -> str:
        return ", ".join(f"{a}->{self.word_string(j)}" for j, a in enumerate(self.letters))


@dataclass(frozen=True)
class HeightData:
    g: tuple[int, ...]
    r: int
    h: int
    q: int


def height(sub: ConstantLengthSub, max_depth: int | None = None) -> HeightData:
    """
    Return-lattice generators, L' = rZ and the height.

    h is the largest divisor of r coprime to q.
    """
    spec = find_seed(sub.to_mfs(), sub.letters)
    profile = color_lattices(spec, max_depth=max_depth)
    g = tuple(lat.basis[0][0] for lat in profile.color_lattices)
    r = profile.lprime.basis[0][0]
    h = r
    while (common := gcd(h, sub.q)) > 1:
        h //= common
    log.debug("Height of %s: g=%s r=%d h=%d", sub, g, r, h)
    return HeightData(g, r, h, sub.q)


def _block_names(n: int) -> tuple[str, ...]:
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    if n <= len(alphabet):
        return tuple(alphabet[:n])
    return tuple(f"b{i}" for i in range(n))


def pure_base(sub: ConstantLengthSub, max_depth: int | None = None) -> ConstantLengthSub:
    """
    The height-1 substitution on h-blocks u_{nh} ... u_{nh+h-1} of the fixed point.

    Blocks are read in the substitution's own coordinates (digits 0..q-1),
    where block boundaries at multiples of h are preserved by σ. New letters
    are named a, b, ... in lexicographic order of the blocks.

    Raises:
        Diverged: If the observed block set is not closed under σ by max_depth.
    """
    data = height(sub, max_depth)
    h = data.h
    if h == 1:
        return sub

    spec = find_seed(sub.to_mfs(), sub.letters)
    offset = spec.offset[0]
    previous: set[tuple[int, ...]] | None = None
    cap = 0
    for patch in iter_patches(spec, max_depth):
        cap = patch.depth
        line = {x[0] + offset: c for x, c in patch.points.items()}
        seen: dict[tuple[int, ...], int] = {}
        for start in sorted(p for p in line if p % h == 0):
            block = tuple(line.get(start + t, -1) for t in range(h))
            if -1 not in block:
                seen[block] = seen.get(block, 0) + 1
        blocks = set(seen)
        if blocks and blocks == previous and min(seen.values()) >= 2 and _closed(sub, blocks, h):
            return _induced(sub, sorted(blocks), h, line)
        previous = blocks
    raise Diverged(cap, f"h-blocks of length {h} not closed under the substitution")


def _image_blocks(sub: ConstantLengthSub, block: tuple[int, ...], h: int) -> list[tuple[int, ...]]:
    image = [c for letter in block for c in sub.words[letter]]
    return [tuple(image[i : i + h]) for i in range(0, len(image), h)]


def _closed(sub: ConstantLengthSub, blocks: set[tuple[int, ...]], h: int) -> bool:
    return all(b in blocks for block in blocks for b in _image_blocks(sub, block, h))


def _induced(
    sub: ConstantLengthSub,
    blocks: list[tuple[int, ...]],
    h: int,
    line: dict[int, int],
) -> ConstantLengthSub:
    position = {b: i for i, b in enumerate(blocks)}
    words = tuple(tuple(position[b] for b in _image_blocks(sub, block, h)) for block in blocks)
    first = tuple(line.get(t, -1) for t in range(h))
    seed = position.get(first, 0)
    base = ConstantLengthSub(_block_names(len(blocks)), words, seed)
    log.info("Pure base of %s: %s", sub, base)
    return base


@dataclass(frozen=True)
class DekkingResult:
    coincident: bool
    base: ConstantLengthSub
    k: int | None = None
    j: int | None = None
    kernel_size: int = 0


def dekking_coincidence(
    sub: ConstantLengthSub,
    max_states: int | None = None,
    max_depth: int | None = None,
) -> DekkingResult:
    """
    Search a column j of some η^k that is constant over all letters of the pure base η.

    The witness j is the digit path read in base q, most significant digit first.
    """
    base = pure_base(sub, max_depth)
    table = is_admissible(base.to_mfs()).table
    assert table is not None
    graph = substitution_graph(table, base.letters, max_states=max_states)
    if not graph.constant_reachable:
        return DekkingResult(False, base, kernel_size=graph.vertex_count)
    j = 0
    for z in graph.path:
        j = j * base.q + table.digits[z][0]
    return DekkingResult(True, base, len(graph.path), j, graph.vertex_count)


def _one_sided_seed(sub: ConstantLengthSub) -> tuple[int, int]:
    """A letter a and the least k with σ^k(a) starting with a, reached from sub.seed by first letters."""
    seen: dict[int, int] = {}
    a = sub.seed
    while a not in seen:
        seen[a] = len(seen)
        a = sub.words[a][0]
    return a, len(seen) - seen[a]


def fixed_point_prefix(sub: ConstantLengthSub, length: int) -> tuple[tuple[int, ...], int]:
    """
    The first `length` letters of the one-sided fixed point of σ^k, and k.

    The fixed point starts at the first letter reached from sub.seed that
    begins its own σ^k image.
    """
    a, k = _one_sided_seed(sub)
    word = [a]
    while len(word) < length:
        for _ in range(k):
            word = [c for x in word for c in sub.words[x]]
    return tuple(word[:length]), k


def minimal_period(sub: ConstantLengthSub, max_period: int | None = None) -> int | None:
    """
    Least p such that the fixed point is p-periodic, or None if none up to max_period.

    With w = σ^k(w) and u = w[:p], σ^k(u) = w[:q^k p]; so w = u^∞ exactly
    when that prefix has period p. For a primitive substitution every
    sequence in the hull then shares the period.
    """
    cap = sub.m * sub.q ** sub.m if max_period is None else max_period
    _, k = _one_sided_seed(sub)
    scale = sub.q ** k
    word, _ = fixed_point_prefix(sub, scale * cap)
    for p in range(1, cap + 1):
        n = scale * p
        if all(word[i] == word[i - p] for i in range(p, n)):
            log.debug("Fixed point of %s has period %d", sub, p)
            return p
    return None


@dataclass(frozen=True)
class InternalSpace:
    q_primes: tuple[int, ...]
    cyclic_order: int
    note: str = ""
    period: int | None = None

    def __str__(self) -> str:
        parts = [f"Z_{p}" for p in self.q_primes] + [f"C_{self.cyclic_order}"]
        return " × ".join(parts)


def internal_space_descriptor(
    sub: ConstantLengthSub,
    data: HeightData | None = None,
    max_period: int | None = None,
) -> InternalSpace:
    """
    Symbolic internal space: the p-adic integers for each prime p | q times C_h.

    A periodic fixed point (see minimal_period) is noted: its internal
    space is the finite cyclic group of the period.
    """
    data = data or height(sub)
    period = minimal_period(sub, max_period)
    note = f"periodic: C_{period} alone suffices" if period is not None else ""
    return InternalSpace(tuple(int(p) for p in primefactors(sub.q)), data.h, note, period)
