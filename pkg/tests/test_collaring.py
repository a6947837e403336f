"""
Tests for analysis/collaring.py: cluster classes, nicely growing radii,
the collared admissible system and verdict transfer.
"""

from dataclasses import replace

import pytest

from analysis.collaring import (
    admissibilize,
    ball_offsets,
    collar_window,
    enumerate_clusters,
    find_collaring_radius,
    fundamental_image,
    is_nicely_growing,
    refinement_matches,
    transfer_verdict,
)
from coincidence.census import decide_spec
from coincidence.graph import Status, Verdict
from lattice.expansion import ExpansionMap
from parsing.builtins import builtin
from substitution.lss import LSSSpec, find_seed, generate_patch
from substitution.mfs import is_admissible, is_primitive


def _spec(name: str) -> LSSSpec:
    doc = builtin(name)
    return find_seed(doc.build_mfs(), doc.colors)


@pytest.fixture(scope="module")
def nonadmissible1() -> LSSSpec:
    return _spec("nonadmissible1")


class TestGeometry:
    def test_ball_1d(self):
        assert ball_offsets(1, 1) == ((-1,), (0,), (1,))

    def test_ball_2d_is_euclidean(self):
        ball = ball_offsets(1, 2)
        assert len(ball) == 5
        assert (1, 1) not in ball

    def test_fundamental_image(self):
        assert fundamental_image(ExpansionMap.scalar(3)) == ((0,), (1,), (2,))
        assert fundamental_image(ExpansionMap.scalar(2, 2)) == ((0, 0), (0, 1), (1, 0), (1, 1))

    def test_fundamental_image_counts_det(self):
        q = ExpansionMap(((1, 1), (-1, 1)))
        assert len(fundamental_image(q)) == 2

    def test_collar_window(self):
        window = collar_window(ExpansionMap.scalar(3), ball_offsets(1, 1))
        assert window == tuple((x,) for x in range(-1, 4))


class TestClusters:
    def test_thue_morse_three_letter_words(self):
        """Centered 1-clusters of Thue-Morse are its six factors of length 3."""
        classes = enumerate_clusters(_spec("thue-morse"), 1)
        assert len(classes) == 6
        assert sorted(c.colors for c in classes) == sorted(
            [(0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 0)]
        )

    def test_classes_ordered_by_center(self):
        classes = enumerate_clusters(_spec("thue-morse"), 1)
        centers = [c.center_color for c in classes]
        assert centers == sorted(centers)
        assert [c.id for c in classes] == list(range(len(classes)))


class TestNicelyGrowing:
    def test_nonadmissible1_radius_one_fails(self, nonadmissible1):
        assert not is_nicely_growing(nonadmissible1, 1)

    def test_nonadmissible1_radius_two(self, nonadmissible1):
        assert is_nicely_growing(nonadmissible1, 2)

    def test_scan_picks_two(self, nonadmissible1):
        assert find_collaring_radius(nonadmissible1) == 2

    def test_admissible_system_grows_at_one(self):
        assert is_nicely_growing(_spec("thue-morse"), 1)


class TestAdmissibilize:
    @pytest.fixture(scope="class")
    def collared(self, nonadmissible1):
        return admissibilize(nonadmissible1, 2)

    def test_eight_classes(self, collared):
        assert collared.n == 8
        assert sorted(set(collared.color_map)) == [0, 1, 2]

    def test_result_is_admissible_and_primitive(self, collared):
        assert is_admissible(collared.mfs).ok
        assert is_primitive(collared.mfs)

    def test_digits_are_fundamental_image(self, collared):
        assert collared.cells == ((0,), (1,), (2,))
        assert collared.mfs.translations == frozenset(collared.cells)

    def test_names_refine_original(self, collared):
        assert all(name[0] in "abc" for name in collared.spec.color_names)
        assert collared.spec.color_names[0] == "a0"

    def test_collared_verdict(self, collared):
        verdict = decide_spec(collared.spec)
        assert verdict.status is Status.COINCIDENT
        equivalent = _spec("nonadmissible1-equivalent")
        assert verdict.status is decide_spec(equivalent).status

    def test_refinement(self, collared, nonadmissible1):
        assert refinement_matches(collared, nonadmissible1)

    def test_wrong_color_map_is_rejected(self, collared, nonadmissible1):
        seed = collared.spec.seed_color
        patch = generate_patch(collared.spec, 2)
        victim = next(c for c in sorted(set(patch.points.values())) if c != seed)
        color_map = list(collared.color_map)
        color_map[victim] = (color_map[victim] + 1) % nonadmissible1.m
        corrupted = replace(collared, color_map=tuple(color_map))
        assert not refinement_matches(corrupted, nonadmissible1)

    @pytest.mark.parametrize("name", ["thue-morse", "kolakoski24", "chair", "table"])
    def test_collaring_preserves_verdict(self, name):
        spec = _spec(name)
        collared = admissibilize(spec, 1)
        assert decide_spec(collared.spec).status is decide_spec(spec).status
        assert refinement_matches(collared, spec)

    @pytest.mark.parametrize("name", ["chair", "table"])
    def test_coincidence_transfers_back(self, name):
        spec = _spec(name)
        verdict = decide_spec(admissibilize(spec, 1).spec)
        assert verdict.status is Status.COINCIDENT
        assert transfer_verdict(spec, verdict).status is decide_spec(spec).status


class TestTransfer:
    def test_coincidence_transfers(self, nonadmissible1):
        finding = transfer_verdict(nonadmissible1, Verdict(Status.COINCIDENT, 4, min_k=0))
        assert finding.status is Status.COINCIDENT
        assert finding.message == "original consists of model sets"

    def test_non_coincidence_does_not(self, nonadmissible1):
        finding = transfer_verdict(nonadmissible1, Verdict(Status.NOT_COINCIDENT, 4))
        assert finding.status is Status.INCONCLUSIVE
        assert "a@0" in finding.message
