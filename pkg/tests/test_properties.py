"""
Randomized cross-checks on admissible primitive systems.

Systems are built from random digit maps over the canonical digits of a
few expansions in dimensions 1 and 2, with a fixed seed so failures are
reproducible. For each system the graph verdict is compared with the
direct oracle (also at the bound when no singleton is reachable), the
pair graph and the minimal-k bound.
"""

import random

import pytest

from analysis.cosets import ColorSet, children, color_lattices
from coincidence.direct import direct_modular_coincidence, predicted_map_count
from coincidence.graph import Status, coincidence_graph, modular_coincidence
from coincidence.pair_graph import pair_coincidence_graph
from lattice.expansion import ExpansionMap
from substitution.lss import find_seed
from substitution.mfs import MFS, is_admissible, is_primitive
from utils.errors import BudgetExceeded, InputError

EXPANSIONS = [
    ExpansionMap(((2,),)),
    ExpansionMap(((3,),)),
    ExpansionMap(((-2,),)),
    ExpansionMap(((1, 1), (-1, 1))),
    ExpansionMap(((0, 2), (1, 0))),
    ExpansionMap(((1, 2), (-1, 1))),
]
SYSTEMS = 200
MAX_K = 4
DIRECT_MAPS = 200_000


def _random_system(rng: random.Random) -> MFS:
    q = rng.choice(EXPANSIONS)
    m = rng.choice([2, 3, 4])
    maps = []
    for digit in q.canonical_digits:
        image = [rng.randrange(m) for _ in range(m)]
        maps.extend((image[j], j, digit) for j in range(m))
    return MFS.from_maps(q, m, maps)


def _corpus():
    rng = random.Random(2024)
    out = []
    attempts = 0
    while len(out) < SYSTEMS and attempts < 50 * SYSTEMS:
        attempts += 1
        mfs = _random_system(rng)
        if not is_primitive(mfs):
            continue
        try:
            spec = find_seed(mfs)
            profile = color_lattices(spec, max_depth=10)
        except (InputError, BudgetExceeded):
            continue
        table = is_admissible(spec.mfs).table
        out.append((spec, profile, table))
    return out


@pytest.fixture(scope="module")
def corpus():
    systems = _corpus()
    assert len(systems) == SYSTEMS
    return systems


class TestRandomSystems:
    def test_graph_matches_direct_oracle(self, corpus):
        for spec, profile, table in corpus:
            verdict = modular_coincidence(coincidence_graph(profile, table))
            for k in range(1, MAX_K + 1):
                direct = direct_modular_coincidence(spec.mfs, profile, k)
                expected = verdict.is_coincident and verdict.min_k <= k
                assert direct.coincident == expected, (spec.mfs, k)

    def test_pair_graph_matches_graph_verdict(self, corpus):
        for spec, profile, table in corpus:
            verdict = modular_coincidence(coincidence_graph(profile, table))
            pg = pair_coincidence_graph(profile, table)
            assert pg.all_reach_coincidence == (verdict.status is Status.COINCIDENT), spec.mfs
            assert bool(pg.stuck) == (verdict.status is Status.NOT_COINCIDENT), spec.mfs

    def test_no_direct_coincidence_at_bound(self, corpus):
        checked = 0
        for spec, profile, table in corpus:
            verdict = modular_coincidence(coincidence_graph(profile, table))
            if verdict.is_coincident or profile.m > 4:
                continue
            if predicted_map_count(spec.mfs, verdict.bound) > DIRECT_MAPS:
                continue
            assert not direct_modular_coincidence(spec.mfs, profile, verdict.bound).coincident, spec.mfs
            checked += 1
        assert checked

    def test_minimal_k_within_bound(self, corpus):
        for _, profile, table in corpus:
            verdict = modular_coincidence(coincidence_graph(profile, table))
            if verdict.is_coincident:
                assert 0 <= verdict.min_k <= verdict.bound

    def test_every_vertex_has_one_edge_per_digit(self, corpus):
        for _, profile, table in corpus:
            graph = coincidence_graph(profile, table)
            assert graph.edge_count == len(graph.vertices) * len(table.digits)

    def test_children_are_monotone(self, corpus):
        rng = random.Random(7)
        for _, profile, table in corpus:
            m = profile.m
            for _ in range(5):
                big = ColorSet.of(c for c in range(m) if rng.random() < 0.7) or ColorSet.of([0])
                small = ColorSet.of(c for c in big if rng.random() < 0.5)
                for z in range(len(table.digits)):
                    child_small = children(small, z, table)
                    child_big = children(big, z, table)
                    assert child_small.mask & ~child_big.mask == 0
