"""
Worst-case family and the exhaustive census of small substitutions.

The census covers every 1D substitution of constant length q on m letters
whose digit maps are all permutations except one, and that one merges
exactly one pair of letters. Only primitive members count; members that
differ by a renaming of the letters are counted once (canonical encoding =
the lexicographically smallest renamed word list).

Symmetry cut: renaming conjugates every digit map at once, so the first
permutation map can be fixed to one representative per cycle type.

Evaluation is spread over a process pool with asyncio's run_in_executor;
results are merged by canonical encoding, so the output does not depend
on worker count or scheduling.
"""

from __future__ import annotations

import asyncio
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from math import comb, factorial
from typing import Iterator, Sequence

import pandas as pd

import config
from analysis.cosets import color_lattices
from analysis.dekking import ConstantLengthSub
from coincidence.graph import Verdict, coincidence_graph, modular_coincidence
from lattice.expansion import ExpansionMap
from substitution.lss import LSSSpec, find_seed
from substitution.mfs import MFS, is_admissible, is_primitive
from utils.errors import BudgetExceeded, InputError, NotAdmissible
from utils.logger import get_logger

log = get_logger("coincidence.census")

Words = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# Worst-case family
# ---------------------------------------------------------------------------

def worst_case_words(m: int) -> Words:
    """Letter i -> (i, i+1) for i < m-1, last letter -> (0, 0)."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    return tuple((i, i + 1) for i in range(m - 1)) + ((0, 0),)


def worst_case_family(m: int) -> MFS:
    """The length-2 system 1 -> 12, 2 -> 23, ..., m -> 11 (minimal k = (m-1)^2)."""
    words = worst_case_words(m)
    names = tuple(str(i + 1) for i in range(m))
    return ConstantLengthSub(names, words).to_mfs()


def decide(mfs: MFS, names: Sequence[str] | None = None, max_depth: int | None = None) -> Verdict:
    """Seed, coset profile and coincidence graph of an admissible primitive system."""
    spec = find_seed(mfs, tuple(names) if names else None)
    return decide_spec(spec, max_depth)


def decide_spec(spec: LSSSpec, max_depth: int | None = None) -> Verdict:
    admissible = is_admissible(spec.mfs, spec.color_names)
    if not admissible.ok or admissible.table is None:
        raise NotAdmissible(admissible.diagnostic)
    profile = color_lattices(spec, max_depth=max_depth)
    return modular_coincidence(coincidence_graph(profile, admissible.table))


def verify_worst_case(ms: Sequence[int]) -> list[tuple[int, int | None]]:
    """(m, minimal k) for each member of the worst-case family."""
    out = []
    for m in ms:
        verdict = decide(worst_case_family(m))
        log.info("Worst case m=%d: minimal k = %s", m, verdict.min_k)
        out.append((m, verdict.min_k))
    return out


# ---------------------------------------------------------------------------
# Candidate enumeration
# ---------------------------------------------------------------------------

def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def cycle_type_representatives(m: int) -> list[tuple[int, ...]]:
    """One permutation per cycle type, cycles on consecutive letters."""
    reps = []
    for parts in _partitions(m):
        perm = [0] * m
        start = 0
        for size in parts:
            for t in range(size):
                perm[start + t] = start + (t + 1) % size
            start += size
        reps.append(tuple(perm))
    return reps


def candidate_count(m: int, q: int = 2) -> int:
    """
    Raw candidates enumerated for (m, q), before merging renamings.

    q positions for the merging map, m!·C(m,2) merging maps, one
    permutation per cycle type in the first free slot and any permutation
    in the others.
    """
    merging = factorial(m) * comb(m, 2)
    return q * merging * len(cycle_type_representatives(m)) * factorial(m) ** (q - 2)


def _words_from_maps(maps: Sequence[Sequence[int]], m: int) -> Words:
    return tuple(tuple(digit_map[j] for digit_map in maps) for j in range(m))


def canonical_encoding(words: Words) -> str:
    """Smallest word list over all renamings, written as 'ab ba ...'."""
    m = len(words)
    best: Words | None = None
    for perm in permutations(range(m)):
        renamed: list[tuple[int, ...]] = [()] * m
        for j, w in enumerate(words):
            renamed[perm[j]] = tuple(perm[c] for c in w)
        candidate = tuple(renamed)
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return " ".join("".join(chr(ord("a") + c) for c in w) for w in best)


def enumerate_candidates(m: int, q: int = 2, max_candidates: int | None = None) -> dict[str, Words]:
    """
    Distinct (up to renaming) candidate word lists, keyed by canonical encoding.

    Raises:
        BudgetExceeded: If more than max_candidates raw candidates are generated.
    """
    if m < 2 or q < 2:
        raise ValueError(f"census needs m >= 2 and q >= 2, got m={m}, q={q}")
    budget = config.CENSUS_MAX_CANDIDATES if max_candidates is None else max_candidates
    if candidate_count(m, q) > budget:
        raise BudgetExceeded(f"census candidates for m={m} q={q}", budget)
    perms = list(permutations(range(m)))
    reps = cycle_type_representatives(m)
    merging = [f for f in product(range(m), repeat=m) if len(set(f)) == m - 1]

    found: dict[str, Words] = {}
    count = 0
    for z in range(q):
        for f in merging:
            for first in reps:
                for rest in product(perms, repeat=q - 2):
                    count += 1
                    maps: list[Sequence[int]] = [first, *rest]
                    maps.insert(z, f)
                    words = _words_from_maps(maps, m)
                    found.setdefault(canonical_encoding(words), words)
    log.info("Census m=%d q=%d: %d candidates, %d up to renaming", m, q, count, len(found))
    return found


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _evaluate_chunk(chunk: list[tuple[str, Words]]) -> list[tuple[str, bool, int | None]]:
    """Worker entry: (encoding, primitive, minimal k) per candidate."""
    out = []
    for encoding, words in chunk:
        letters = tuple(chr(ord("a") + i) for i in range(len(words)))
        mfs = ConstantLengthSub(letters, words).to_mfs()
        if not is_primitive(mfs):
            out.append((encoding, False, None))
            continue
        try:
            verdict = decide(mfs, letters)
        except InputError as exc:
            log.warning("Census member %s skipped: %s", encoding, exc)
            out.append((encoding, False, None))
            continue
        out.append((encoding, True, verdict.min_k))
    return out


@dataclass
class CensusResult:
    m: int
    q: int
    candidates: int
    table: pd.DataFrame  # columns: encoding, min_k (NA when not coincident)
    worst_case_encoding: str
    distribution: pd.Series = field(init=False)
    maximum: int | None = field(init=False)
    maximizers: list[str] = field(init=False)

    def __post_init__(self) -> None:
        coincident = self.table["min_k"].dropna().astype(int)
        self.distribution = coincident.value_counts().sort_index()
        self.maximum = int(coincident.max()) if len(coincident) else None
        if self.maximum is None:
            self.maximizers = []
        else:
            hits = (self.table["min_k"] == self.maximum).fillna(False).astype(bool)
            self.maximizers = sorted(self.table.loc[hits, "encoding"].tolist())

    @property
    def systems(self) -> int:
        return len(self.table)

    @property
    def not_coincident(self) -> int:
        return int(self.table["min_k"].isna().sum())

    @property
    def worst_case_attains_max(self) -> bool:
        return self.worst_case_encoding in self.maximizers


async def run_census(
    m: int,
    q: int = 2,
    workers: int | None = None,
    max_candidates: int | None = None,
) -> CensusResult:
    """
    Enumerate, evaluate in parallel and reduce.

    Args:
        m: Alphabet size.
        q: Word length.
        workers: Process count (config.CENSUS_WORKERS); 1 runs on a thread.
        max_candidates: Raw candidate budget (config.CENSUS_MAX_CANDIDATES).
    """
    workers = config.CENSUS_WORKERS if workers is None else workers
    candidates = enumerate_candidates(m, q, max_candidates)
    items = sorted(candidates.items())
    size = config.CENSUS_CHUNK_SIZE
    chunks = [items[i : i + size] for i in range(0, len(items), size)]
    loop = asyncio.get_running_loop()

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = await asyncio.gather(
                *[loop.run_in_executor(pool, _evaluate_chunk, c) for c in chunks]
            )
    else:
        parts = await asyncio.gather(
            *[loop.run_in_executor(None, _evaluate_chunk, c) for c in chunks]
        )

    merged = {enc: k for part in parts for enc, primitive, k in part if primitive}
    rows = [{"encoding": enc, "min_k": merged[enc]} for enc in sorted(merged)]
    table = pd.DataFrame(rows, columns=["encoding", "min_k"]).astype({"min_k": "Int64"})
    result = CensusResult(
        m=m,
        q=q,
        candidates=len(items),
        table=table,
        worst_case_encoding=canonical_encoding(worst_case_words(m)) if q == 2 else "",
    )
    log.info(
        "Census m=%d q=%d: %d primitive systems, maximum minimal k = %s",
        m,
        q,
        result.systems,
        result.maximum,
    )
    return result


def census(m: int, q: int = 2, workers: int | None = None, max_candidates: int | None = None) -> CensusResult:
    """Synchronous wrapper around run_census."""
    return asyncio.run(run_census(m, q, workers, max_candidates))
