"""
Tests for reporting/ (DOT output, report rendering, the analysis pipeline)
and the command-line entry point.
"""

import json

import pytest

from coincidence.direct import DirectResult
from coincidence.graph import Status, Verdict
from main import main
from parsing.builtins import builtin
from parsing.spec_parser import parse_spec
from reporting.analyzer import (
    AUTO_RADIUS,
    AnalysisOptions,
    analyze,
    headline,
    load_source,
    options_from_document,
    promote_direct,
)
from reporting.dot import emit_dot
from reporting.report import emit_report
from utils.errors import InputError


SHIFTED_SEED = 'sub { a -> "ba"  b -> "aa" }'


def _run(name: str, **options):
    return analyze(builtin(name), f"builtin:{name}", AnalysisOptions(**options))


class TestDot:
    def test_thue_morse_exact(self):
        expected = (
            "digraph coincidence {\n"
            "  rankdir=LR;\n"
            "  node [shape=circle];\n"
            '  "{a,b}" [label="{a,b}" peripheries=2];\n'
            '  "{a,b}" -> "{a,b}" [label="0"];\n'
            '  "{a,b}" -> "{a,b}" [label="1"];\n'
            "}\n"
        )
        assert emit_dot(_run("thue-morse").graph) == expected

    def test_byte_identical_runs(self):
        assert emit_dot(_run("chair").graph) == emit_dot(_run("chair").graph)

    def test_2d_edge_labels(self):
        text = emit_dot(_run("chair").graph)
        assert '[label="(1,1)"]' in text

    def test_labels_in_input_coordinates(self):
        # the seed sits at -1, so normalized digits would read 0 and -1
        text = emit_dot(analyze(parse_spec(SHIFTED_SEED)).graph)
        assert '[label="1"]' in text
        assert 'label="-1"' not in text

    def test_pair_and_substitution_graph_names(self):
        result = _run("kolakoski24", pair_graph=True, substitution_graph=True)
        assert emit_dot(result.pair_graph).startswith("digraph pair_coincidence {")
        assert emit_dot(result.substitution_graph).startswith("digraph substitution {")
        assert '"(a,b,c)" [label="(a,b,c)" peripheries=2]' in emit_dot(result.substitution_graph)


class TestAnalyzer:
    def test_kolakoski_headline(self):
        result = _run("kolakoski24")
        verdict = result.report.verdict
        assert verdict.headline == "model sets: YES (modular coincidence at k=2)"
        assert verdict.min_k == 2
        assert verdict.bound == 4
        assert (verdict.witness.coset, verdict.witness.modulus, verdict.witness.color) == ("5", "9Z", "c")
        assert verdict.witness.digits == ["1", "2"]

    def test_abab_headline(self):
        result = _run("abab")
        assert result.report.verdict.headline == "model sets: YES (sublattice coincidence (k=0))"
        assert result.report.dekking.note == "periodic: C_2 alone suffices"

    def test_not_coincident(self):
        for name in ("thue-morse", "table", "house"):
            assert _run(name).report.verdict.headline == "model sets: NO", name

    def test_table_fast_paths(self):
        names = {f.name for f in _run("table").report.fast_paths}
        assert names == {"no_pairwise_coincidence", "bijective"}

    def test_paired_classes(self):
        doc = parse_spec('sub { a -> "ab"  b -> "cd"  c -> "cd"  d -> "ab" }')
        report = analyze(doc).report
        assert report.verdict.status == "not_coincident"
        assert "paired_classes_disjoint" in {f.name for f in report.fast_paths}

    def test_nonadmissible_without_collar(self):
        result = _run("nonadmissible1")
        assert result.report.verdict.headline == (
            "model sets: UNDECIDED (not admissible; rerun with --collar)"
        )
        assert result.graph is None
        assert not result.report.validation.admissible

    def test_nonadmissible_collared(self):
        result = _run("nonadmissible1", collar=AUTO_RADIUS)
        report = result.report
        assert report.verdict.headline.startswith("model sets: YES (collared at R=2, ")
        assert report.verdict.source == "collared"
        assert report.collaring.classes == 8
        assert report.collaring.nicely_growing
        assert report.collaring.refinement_ok

    def test_witness_in_input_coordinates(self):
        report = analyze(parse_spec(SHIFTED_SEED)).report
        assert report.validation.seed == "a@-1"
        witness = report.verdict.witness
        assert report.verdict.min_k == 1
        assert (witness.coset, witness.modulus, witness.color) == ("1", "2Z", "a")
        assert witness.digits == ["1"]

    def test_direct_check_section(self):
        report = _run("kolakoski24", direct_check=2).report
        assert report.direct_check.coincident
        assert [w.coset for w in report.direct_check.witnesses] == ["5", "6", "7"]
        assert [w.color for w in report.direct_check.witnesses] == ["c", "a", "b"]
        assert report.verdict.source == "graph"

    def test_dekking_section(self):
        report = _run("height2").report
        assert report.dekking.h == 2
        assert report.dekking.pure_base == "a->aab, b->aba"
        assert report.dekking.internal_space == "Z_3 × C_2"

    def test_no_dekking_in_2d(self):
        assert _run("chair").report.dekking is None

    def test_user_seed_reported(self):
        report = analyze(builtin("nonadmissible2")).report
        assert report.validation.seed == "a@-5"

    def test_options_from_document(self):
        doc = parse_spec('sub { a -> "ab"  b -> "ba" }\noption max_depth = 12\noption direct_check = 3')
        opts = options_from_document(doc)
        assert (opts.max_depth, opts.direct_check, opts.collar) == (12, 3, None)
        opts = options_from_document(doc, max_depth=5, collar=None)
        assert opts.max_depth == 5

    def test_load_source(self, tmp_path):
        path = tmp_path / "tm.sys"
        path.write_text('sub { a -> "ab"  b -> "ba" }\n', encoding="utf-8")
        assert load_source(str(path)) == load_source("builtin:thue-morse")
        with pytest.raises(InputError):
            load_source(str(tmp_path / "missing.sys"))


class TestPromoteDirect:
    def test_undecided_promoted_at_exact_power(self):
        verdict = promote_direct(Verdict(Status.INCONCLUSIVE, 4, reason="x"), DirectResult(3, True, (), 5))
        assert verdict.status is Status.COINCIDENT
        assert headline(verdict) == "model sets: YES (direct check: modular coincidence at k=3)"

    def test_decided_verdicts_unchanged(self):
        direct = DirectResult(2, True, (), 3)
        for verdict in (Verdict(Status.COINCIDENT, 4, min_k=1), Verdict(Status.NOT_COINCIDENT, 4)):
            assert promote_direct(verdict, direct) is verdict

    def test_no_direct_coincidence(self):
        verdict = Verdict(Status.INCONCLUSIVE, 4)
        assert promote_direct(verdict, DirectResult(4, False, (), 9)) is verdict


class TestReport:
    def test_text(self):
        text = emit_report(_run("kolakoski24").report)
        assert "L' = Z" in text
        assert "Ψ0[0] = {a,b,c}" in text
        assert "model sets: YES (modular coincidence at k=2)" in text
        assert "coset 5 mod 9Z lies in color c" in text

    def test_json(self):
        payload = json.loads(emit_report(_run("thue-morse").report, "json"))
        assert payload["verdict"]["status"] == "not_coincident"
        assert payload["cosets"]["lattice_sum"] == "Z"
        assert list(payload)[:3] == ["source", "validation", "verdict"]

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_report(_run("abab").report, "yaml")


class TestCli:
    def test_analyze(self, capsys):
        assert main(["analyze", "builtin:kolakoski24"]) == 0
        assert "model sets: YES (modular coincidence at k=2)" in capsys.readouterr().out

    def test_not_coincident_still_exits_zero(self, capsys):
        assert main(["analyze", "builtin:thue-morse", "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["verdict"]["headline"] == "model sets: NO"

    def test_dot_files(self, tmp_path):
        target = tmp_path / "kol.dot"
        code = main([
            "analyze", "builtin:kolakoski24", "--dot", str(target),
            "--pair-graph", "--substitution-graph",
        ])
        assert code == 0
        assert target.read_text(encoding="utf-8").startswith("digraph coincidence {")
        assert (tmp_path / "kol.pair.dot").exists()
        assert (tmp_path / "kol.subst.dot").exists()

    def test_collar_flag(self, capsys):
        assert main(["analyze", "builtin:nonadmissible1", "--collar"]) == 0
        assert "collared at R=2" in capsys.readouterr().out

    def test_missing_file(self, tmp_path, capsys):
        assert main(["analyze", str(tmp_path / "nope.sys")]) == 3
        assert "error: cannot read" in capsys.readouterr().err

    def test_syntax_error(self, tmp_path):
        path = tmp_path / "bad.sys"
        path.write_text("matrix [[2]\n", encoding="utf-8")
        assert main(["analyze", str(path)]) == 2

    def test_budget(self):
        assert main(["analyze", "builtin:kolakoski24", "--direct-check", "30"]) == 4

    def test_list_builtins(self, capsys):
        assert main(["list-builtins"]) == 0
        assert "kolakoski24" in capsys.readouterr().out

    def test_census(self, capsys):
        assert main(["census", "--m", "2", "--workers", "1"]) == 0
        assert "maximum minimal k: 1" in capsys.readouterr().out
