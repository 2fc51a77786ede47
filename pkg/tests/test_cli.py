"""CLI subcommands over the canonical document file."""

import json
import shutil

import pytest
from click.testing import CliRunner

from plume import model, suggestions
from plume.cli import main

from helpers import LINE_SPEC, SVG, two_leaf_doc


@pytest.fixture()
def runner():
    return CliRunner()


def make_fixture(path):
    from helpers import INTERACTIVE_SPEC

    doc = model.create_document("clifix")
    for i in range(2):
        leaf = model.add_frame(doc, doc.root, (i * 510, 0, 490, 1000))
        model.add_chart(doc, leaf, INTERACTIVE_SPEC, SVG)
    suggestions.accept_all(doc)
    for sid, snip in doc.snippets.items():
        if snip.role.value == "metadata":
            model.set_user_facts(doc, sid, "Author: Skye. Source: weather portal.")
    path.write_bytes(model.save(doc))
    return doc


class TestNewAndValidate:
    def test_new_then_validate_exit_zero(self, runner, tmp_path):
        target = tmp_path / "dash.json"
        made = runner.invoke(main, ["new", "-f", str(target), "--id", "cli1"])
        assert made.exit_code == 0, made.output
        checked = runner.invoke(main, ["validate", "-f", str(target)])
        assert checked.exit_code == 0
        assert "1 frames" in checked.output

    def test_validate_round_tripped_file(self, runner, tmp_path):
        target = tmp_path / "dash.json"
        make_fixture(target)
        target.write_bytes(model.save(model.load(target.read_bytes())))
        assert runner.invoke(main, ["validate", "-f", str(target)]).exit_code == 0

    def test_new_refuses_overwrite(self, runner, tmp_path):
        target = tmp_path / "dash.json"
        runner.invoke(main, ["new", "-f", str(target)])
        result = runner.invoke(main, ["new", "-f", str(target)])
        assert result.exit_code == 1
        assert json.loads(result.stderr)["code"] == "already-resolved"

    def test_validate_corrupt_file_machine_readable_error(self, runner, tmp_path):
        target = tmp_path / "bad.json"
        target.write_text("{broken")
        result = runner.invoke(main, ["validate", "-f", str(target)])
        assert result.exit_code == 1
        assert json.loads(result.stderr)["code"] == "malformed-document"


class TestSuggestAccept:
    def test_suggest_lists_ten(self, runner, tmp_path):
        target = tmp_path / "dash.json"
        runner.invoke(main, ["new", "-f", str(target), "--id", "cli2"])
        result = runner.invoke(main, ["suggest", "-f", str(target)])
        assert result.exit_code == 0
        assert len(result.output.strip().splitlines()) == 10

    def test_accept_role_then_all(self, runner, tmp_path):
        target = tmp_path / "dash.json"
        doc, *_ = two_leaf_doc("cli3")
        target.write_bytes(model.save(doc))
        one = runner.invoke(main, ["accept", "-f", str(target), "--role", "label"])
        assert one.exit_code == 0
        assert "created 3 placeholder(s)" in one.output
        rest = runner.invoke(main, ["accept", "-f", str(target), "--all"])
        assert rest.exit_code == 0
        again = runner.invoke(main, ["accept", "-f", str(target), "--all"])
        assert "created 0 placeholder(s)" in again.output


class TestMetricsAndPlan:
    def test_metrics_all_prints_table(self, runner, tmp_path):
        target = tmp_path / "dash.json"
        doc = model.create_document("cli4")
        model.add_snippet(doc, doc.root, "label", "Total units by region", "locked")
        target.write_bytes(model.save(doc))
        result = runner.invoke(main, ["metrics", "-f", str(target), "--all"])
        assert result.exit_code == 0
        assert "words" in result.output.splitlines()[0]
        assert " 4 " in result.output  # word count of the label

    def test_plan_prints_levels(self, runner, tmp_path):
        target = tmp_path / "dash.json"
        make_fixture(target)
        result = runner.invoke(main, ["plan", "-f", str(target), "--all"])
        assert result.exit_code == 0
        assert result.output.startswith("level 0:")


class TestGenerateAndRefine:
    def test_generate_all_mock_is_deterministic(self, runner, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        make_fixture(a)
        shutil.copy(a, b)
        ra = runner.invoke(main, ["generate", "-f", str(a), "--all", "--mock"])
        rb = runner.invoke(main, ["generate", "-f", str(b), "--all", "--mock"])
        assert ra.exit_code == 0, ra.output + ra.stderr
        assert rb.exit_code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_generate_reports_failures_nonzero(self, runner, tmp_path):
        target = tmp_path / "dash.json"
        doc, *_ = two_leaf_doc("cli5")
        suggestions.accept_all(doc)  # metadata placeholder lacks facts
        target.write_bytes(model.save(doc))
        result = runner.invoke(main, ["generate", "-f", str(target), "--all", "--mock"])
        assert result.exit_code == 1
        assert "missing-required-context" in result.stderr

    def test_refine_simplify(self, runner, tmp_path):
        target = tmp_path / "dash.json"
        doc = model.create_document("cli6")
        leaf = model.add_frame(doc, doc.root, (0, 0, 400, 400))
        model.add_chart(doc, leaf, LINE_SPEC, SVG)
        sid = model.add_snippet(doc, doc.root, "context", "Original paragraph.", "generated")
        target.write_bytes(model.save(doc))
        result = runner.invoke(
            main, ["refine", "-f", str(target), "--snippet", sid, "--kind", "simplify", "--mock"]
        )
        assert result.exit_code == 0
        stored = model.load(target.read_bytes())
        assert stored.snippets[sid].content.startswith("Simpler context")

    def test_refine_locked_fails_cleanly(self, runner, tmp_path):
        target = tmp_path / "dash.json"
        doc = model.create_document("cli7")
        sid = model.add_snippet(doc, doc.root, "label", "Pinned", "locked")
        target.write_bytes(model.save(doc))
        result = runner.invoke(
            main, ["refine", "-f", str(target), "--snippet", sid, "--kind", "shorten", "--mock"]
        )
        assert result.exit_code == 1
        assert json.loads(result.stderr)["code"] == "snippet-locked"


class TestServe:
    def test_serve_help(self, runner):
        result = runner.invoke(main, ["serve", "--help"])
        assert result.exit_code == 0
        assert "Run the HTTP API" in result.output
