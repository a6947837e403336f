"""
Tests for parsing/: grammar, document builder, rendering and built-ins.
"""

import pytest

from parsing.builtins import builtin, builtin_text, list_builtins, worst_case_text
from parsing.models import RuleEntry
from parsing.spec_parser import parse_spec, render_spec
from substitution.mfs import substitution_matrix
from utils.errors import SpecSemanticError, SpecSyntaxError, UnknownName

GENERAL = """
# two colors on Z
dim 1
matrix [[2]]
colors a b
rule a <- a @ (0)
rule b <- a @ (1)
rule b <- b @ (0)
rule a <- b @ (1)
seed a @ (0)
option max_depth = 12
"""


class TestGeneralForm:
    def test_parses(self):
        doc = parse_spec(GENERAL)
        assert doc.dimension == 1
        assert doc.matrix == ((2,),)
        assert doc.colors == ("a", "b")
        assert len(doc.rules) == 4
        assert doc.seed.color == "a"
        assert doc.option("max_depth") == 12

    def test_rules_in_canonical_order(self):
        doc = parse_spec(GENERAL)
        assert doc.rules[0] == RuleEntry(target="a", source="a", translation=(0,))
        assert [(r.source, r.target) for r in doc.rules] == [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]

    def test_builds_thue_morse(self):
        doc = parse_spec(GENERAL)
        assert doc.build_mfs() == builtin("thue-morse").build_mfs()

    def test_render_roundtrip(self):
        doc = parse_spec(GENERAL)
        assert parse_spec(render_spec(doc)) == doc

    def test_negative_entries(self):
        doc = parse_spec("matrix [[-2]]\ncolors a\nrule a <- a @ (0)\nrule a <- a @ (-1)")
        assert doc.matrix == ((-2,),)
        assert {r.translation for r in doc.rules} == {(0,), (-1,)}


class TestShorthands:
    def test_sub(self):
        doc = parse_spec('sub { a -> "aba"  b -> "bcc"  c -> "abc" }')
        assert doc.matrix == ((3,),)
        assert doc.colors == ("a", "b", "c")
        assert substitution_matrix(doc.build_mfs()).tolist() == [[2, 0, 1], [1, 1, 1], [0, 2, 1]]

    def test_sub_with_gap(self):
        doc = parse_spec('matrix [[3]]\nsub { a -> "a_b"  b -> "ba" }')
        assert RuleEntry(target="b", source="a", translation=(2,)) in doc.rules
        assert all(r.translation != (1,) or r.source != "a" for r in doc.rules)

    def test_sub_lengths_differ(self):
        with pytest.raises(SpecSemanticError):
            parse_spec('sub { a -> "ab"  b -> "b" }')

    def test_block_cells(self):
        """Rows are listed top to bottom: the top-left cell is (0, n-1)."""
        doc = parse_spec("block(2) { p -> [q p / p p]  q -> [q q / p q] }")
        assert doc.matrix == ((2, 0), (0, 2))
        assert RuleEntry(target="q", source="p", translation=(0, 1)) in doc.rules
        assert RuleEntry(target="p", source="p", translation=(0, 0)) in doc.rules

    def test_block_wrong_size(self):
        with pytest.raises(SpecSemanticError):
            parse_spec("block(2) { p -> [p p p / p p p] }")

    def test_mixing_rules_and_shorthand(self):
        with pytest.raises(SpecSemanticError):
            parse_spec('sub { a -> "aa" }\nrule a <- a @ (0)')


class TestErrors:
    def test_syntax_error_position(self):
        with pytest.raises(SpecSyntaxError) as exc:
            parse_spec("dim 1\nmatrix [[2]\ncolors a")
        assert exc.value.line == 3
        assert exc.value.exit_code == 2

    def test_unexpected_character(self):
        with pytest.raises(SpecSyntaxError) as exc:
            parse_spec("colors a ; b")
        assert "unexpected character" in str(exc.value)

    def test_unknown_color(self):
        with pytest.raises(SpecSemanticError) as exc:
            parse_spec("matrix [[2]]\ncolors a\nrule a <- z @ (0)")
        assert exc.value.line == 3
        assert exc.value.exit_code == 3

    def test_unknown_option(self):
        with pytest.raises(SpecSemanticError, match="unknown option"):
            parse_spec('sub { a -> "aa" }\noption depth = 3')

    def test_duplicate_rule(self):
        with pytest.raises(SpecSemanticError, match="duplicate rule"):
            parse_spec("matrix [[2]]\ncolors a\nrule a <- a @ (0)\nrule a <- a @ (0)")

    def test_translation_dimension(self):
        with pytest.raises(SpecSemanticError):
            parse_spec("matrix [[2]]\ncolors a\nrule a <- a @ (0,1)")

    def test_missing_matrix(self):
        with pytest.raises(SpecSemanticError, match="missing matrix"):
            parse_spec("colors a\nrule a <- a @ (0)")

    def test_non_square_matrix(self):
        with pytest.raises(SpecSemanticError):
            parse_spec("matrix [[2,0]]\ncolors a\nrule a <- a @ (0,0)")

    def test_seed_wrong_dimension(self):
        with pytest.raises(SpecSemanticError):
            parse_spec('sub { a -> "ab"  b -> "ba" }\nseed a @ (0,0)')


class TestBuiltins:
    def test_all_builtins_parse(self):
        for name, _ in list_builtins():
            doc = builtin(name.split(":")[0])
            assert doc.colors

    def test_listing(self):
        names = [name for name, _ in list_builtins()]
        assert names == sorted(names)
        assert "kolakoski24" in names
        assert "worst:M" in names

    def test_worst_parametric(self):
        assert builtin("worst:5").colors == ("1", "2", "3", "4", "5")
        assert builtin("worst", 4).colors == ("1", "2", "3", "4")

    def test_worst_large_uses_rules(self):
        text = worst_case_text(12)
        assert text.startswith("dim 1")
        assert len(parse_spec(text).colors) == 12

    def test_nonadmissible2_seed(self):
        doc = builtin("nonadmissible2")
        assert doc.seed.color == "a"
        assert doc.seed.position == (-5,)

    def test_house_has_twenty_classes(self):
        assert len(builtin("house").colors) == 20

    def test_unknown(self):
        with pytest.raises(UnknownName):
            builtin("penrose")
        with pytest.raises(UnknownName):
            builtin_text("worst-case")
