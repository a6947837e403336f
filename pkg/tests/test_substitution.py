"""
Tests for substitution/mfs.py and substitution/lss.py.

Kolakoski-(2,4) as a -> aba, b -> bcc, c -> abc is the running example:
rows are target colors, so S = [[2,0,1],[1,1,1],[0,2,1]].
"""

import numpy as np
import pytest

from analysis.dekking import ConstantLengthSub
from lattice.expansion import ExpansionMap
from parsing.builtins import builtin
from substitution.lss import LSSSpec, find_seed, generate_patch, iter_patches, spec_from_seed, substitute
from substitution.mfs import (
    MFS,
    compose,
    is_admissible,
    is_bijective,
    is_primitive,
    power,
    substitution_matrix,
    translate,
)
from utils.errors import BudgetExceeded, DimensionMismatch, InputError, NotAdmissible, NotAnLSS, NotPrimitive


def _sub(**words: str) -> MFS:
    return ConstantLengthSub.from_strings(words).to_mfs()


@pytest.fixture
def kolakoski() -> MFS:
    return _sub(a="aba", b="bcc", c="abc")


@pytest.fixture
def thue_morse() -> MFS:
    return _sub(a="ab", b="ba")


class TestMFS:
    def test_substitution_matrix(self, kolakoski):
        expected = np.array([[2, 0, 1], [1, 1, 1], [0, 2, 1]])
        assert (substitution_matrix(kolakoski) == expected).all()

    def test_from_maps_matches_words(self, kolakoski):
        built = MFS.from_maps(
            ExpansionMap.scalar(3),
            3,
            [(0, 0, (0,)), (1, 0, (1,)), (0, 0, (2,)),
             (1, 1, (0,)), (2, 1, (1,)), (2, 1, (2,)),
             (0, 2, (0,)), (1, 2, (1,)), (2, 2, (2,))],
        )
        assert built == kolakoski

    def test_columns_sorted_by_translation(self, kolakoski):
        assert kolakoski.columns[1] == ((1, (0,)), (2, (1,)), (2, (2,)))

    def test_translation_dimension_checked(self):
        with pytest.raises(DimensionMismatch):
            MFS(ExpansionMap.scalar(2), ((frozenset({(0, 0)}),),))

    def test_primitive(self, kolakoski, thue_morse):
        assert is_primitive(kolakoski)
        assert is_primitive(thue_morse)

    def test_not_primitive(self):
        assert not is_primitive(_sub(a="aa", b="bb"))
        assert not is_primitive(_sub(a="ab", b="bb"))

    def test_square_has_expected_maps(self, kolakoski):
        """9x+6 lies only in row a, 9x+7 only in row b, 9x+5 only in row c."""
        phi2 = power(kolakoski, 2)
        assert phi2.q.matrix == ((9,),)
        rows_with = {
            t: {i for i in range(3) if any((t,) in phi2.rules[i][j] for j in range(3))}
            for t in (5, 6, 7)
        }
        assert rows_with == {5: {2}, 6: {0}, 7: {1}}

    def test_power_matches_compose(self, kolakoski):
        assert power(kolakoski, 3) == compose(kolakoski, compose(kolakoski, kolakoski))

    def test_power_map_count(self, kolakoski):
        # each column has 3 maps, so Φ^k has 3 * 3^k maps
        assert power(kolakoski, 3).map_count() == 81

    def test_translate_shifts_fixed_point(self, kolakoski):
        """Conjugating by x -> x + t moves the fixed point of x -> 3x + a by -t."""
        shifted = translate(kolakoski, (4,))
        # a + Qt - t = a + 8
        assert shifted.rules[0][0] == frozenset({(8,), (10,)})


class TestAdmissibility:
    def test_kolakoski_digit_table(self, kolakoski):
        result = is_admissible(kolakoski)
        assert result.ok
        assert result.table.digits == ((0,), (1,), (2,))
        # maps[z][j] = Φ(j)_z
        assert result.table.maps == ((0, 1, 0), (1, 2, 1), (0, 2, 2))

    def test_too_many_translations(self):
        doc = builtin("nonadmissible1")
        result = is_admissible(doc.build_mfs(), doc.colors)
        assert not result
        assert "distinct translations" in result.diagnostic

    def test_congruent_translations(self):
        mfs = MFS.from_maps(ExpansionMap.scalar(2), 1, [(0, 0, (0,)), (0, 0, (2,))])
        result = is_admissible(mfs)
        assert not result.ok
        assert "congruent" in result.diagnostic

    def test_digit_missing_from_column(self):
        mfs = MFS.from_maps(
            ExpansionMap.scalar(2),
            2,
            [(0, 0, (0,)), (1, 0, (1,)), (0, 1, (0,))],
        )
        result = is_admissible(mfs, ("a", "b"))
        assert not result.ok
        assert result.diagnostic == "column b: digit 1 appears 0 times"

    def test_bijective(self, thue_morse, kolakoski):
        assert is_bijective(thue_morse)
        assert not is_bijective(kolakoski)

    def test_bijective_needs_admissible(self):
        doc = builtin("nonadmissible1")
        with pytest.raises(NotAdmissible):
            is_bijective(doc.build_mfs())


class TestSeeds:
    def test_kolakoski_seed_at_origin(self, kolakoski):
        spec = find_seed(kolakoski, ("a", "b", "c"))
        assert spec.seed_color == 0
        assert spec.offset == (0,)
        assert spec.period == 1
        assert spec.describe_seed() == "a@0"

    def test_seed_of_non_primitive(self):
        with pytest.raises(NotPrimitive):
            find_seed(_sub(a="aa", b="bb"))

    def test_user_seed_off_origin(self):
        doc = builtin("nonadmissible2")
        spec = spec_from_seed(doc.build_mfs(), 0, (-5,), doc.colors)
        assert spec.describe_seed() == "a@-5"
        assert spec.offset == (-5,)

    def test_illegal_seed(self, kolakoski):
        with pytest.raises(InputError):
            spec_from_seed(kolakoski, 0, (1,))

    def test_seed_left_of_origin(self):
        """a -> ba: the map x -> 2x + 1 fixes -1."""
        spec = find_seed(_sub(a="ba", b="ab"), ("a", "b"))
        assert spec.period == 1
        assert spec.describe_seed() == "a@-1"
        assert generate_patch(spec, 1).as_word(("a", "b")) == "ba"


class TestPatches:
    def test_kolakoski_patches(self, kolakoski):
        spec = find_seed(kolakoski, ("a", "b", "c"))
        assert generate_patch(spec, 1).as_word(spec.color_names) == "aba"
        assert generate_patch(spec, 2).as_word(spec.color_names) == "ababccaba"

    def test_patches_are_nested(self, kolakoski):
        spec = find_seed(kolakoski)
        previous = None
        for patch in iter_patches(spec, 5):
            if previous is not None:
                assert all(patch.points[x] == c for x, c in previous.items())
            previous = dict(patch.points)

    def test_nonadmissible_patch_has_gaps(self):
        doc = builtin("nonadmissible1")
        spec = find_seed(doc.build_mfs(), doc.colors)
        word = generate_patch(spec, 2).as_word(doc.colors)
        assert word.startswith("abcbabcba")
        assert "_" in word

    def test_overlap_is_not_an_lss(self):
        mfs = MFS.from_maps(ExpansionMap.scalar(2), 2, [(0, 0, (0,)), (1, 0, (0,)), (1, 1, (1,))])
        with pytest.raises(NotAnLSS):
            substitute(mfs, {(0,): 0})

    def test_unfixed_seed_reports_only_real_colors(self):
        # x -> 2x + 1 moves the seed off the origin
        mfs = MFS.from_maps(ExpansionMap.scalar(2), 1, [(0, 0, (1,))])
        spec = LSSSpec(mfs, 0, ("a",), (0,))
        with pytest.raises(NotAnLSS, match="lost position") as excinfo:
            generate_patch(spec, 1)
        assert excinfo.value.colors == (0,)
        assert excinfo.value.position == (0,)

    def test_patch_budget(self, kolakoski, monkeypatch):
        import config

        monkeypatch.setattr(config, "MAX_PATCH_POINTS", 20)
        spec = find_seed(kolakoski)
        with pytest.raises(BudgetExceeded):
            generate_patch(spec, 4)

    def test_first_occurrence(self, kolakoski):
        spec = find_seed(kolakoski)
        patch = generate_patch(spec, 2)
        assert patch.first_occurrence(2) == (4,)
        assert patch.colors_present() == {0, 1, 2}
