import json

import pytest
from click.testing import CliRunner

from vocab_lint.catalog import RULES
from vocab_lint.cli import main

PREFIX_FILE = "EX\thttps://example.org/EX_\texternal\n"

OBO_LFT = """\
format-version: 1.2

[Term]
id: EX:0000002
name: LFT
def: "A liver function test is a test battery that measures liver enzymes." [PMID:3]
"""

OBO_CLEAN = """\
format-version: 1.2

[Term]
id: HP:0012735
name: cough
def: "A sudden expulsion of air is a reflex that clears the airways." [PMID:9]
"""

OBO_REFERENCE = """\
format-version: 1.2

[Term]
id: HP:0031352
name: productive cough
def: "An expectorating reflex is a reflex that yields sputum." [PMID:10]
synonym: "wet cough" EXACT []

[Term]
id: HP:0012735
name: cough
def: "A sudden expulsion of air is a reflex that clears the airways." [PMID:9]
"""

SNAPSHOT = """\
name: well-tended
as_of: 2026-08-01
last_release: 2026-05-01
median_issue_response_days: 10
accepts_term_requests: true
definition_coverage: 0.95
terms_reused_elsewhere: 500
total_terms: 1000
has_permanent_iris: true

name: dusty
as_of: 2026-08-01
"""


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def config_path(tmp_path):
    write(tmp_path, "prefixes.tsv", PREFIX_FILE)
    return write(tmp_path, "config.json",
                 json.dumps({"prefix_map_path": "prefixes.tsv"}))


class TestCheck:
    def test_clean_input_exits_zero(self, runner, tmp_path):
        path = write(tmp_path, "clean.obo", OBO_CLEAN)
        result = runner.invoke(main, ["check", path])
        assert result.exit_code == 0
        assert "0 error(s), 0 warning(s), 0 info note(s) in 1 input(s)" in result.output

    def test_findings_exit_one(self, runner, tmp_path, config_path):
        path = write(tmp_path, "lft.obo", OBO_LFT)
        result = runner.invoke(main, ["check", path, "--config", config_path])
        assert result.exit_code == 1
        assert "R05-ABBREV" in result.output
        assert f"{path}:3: warning R05-ABBREV LFT:" in result.output

    def test_fail_on_error_tolerates_warnings(self, runner, tmp_path, config_path):
        path = write(tmp_path, "lft.obo", OBO_LFT)
        result = runner.invoke(main, ["check", path, "--config", config_path,
                                      "--fail-on", "error"])
        assert result.exit_code == 0
        assert "R05-ABBREV" in result.output

    def test_rule_patterns(self, runner, tmp_path, config_path):
        path = write(tmp_path, "lft.obo", OBO_LFT)
        result = runner.invoke(main, ["check", path, "--config", config_path,
                                      "--rule", "R06-*"])
        assert result.exit_code == 0
        assert "R05-ABBREV" not in result.output

    def test_suppress_option(self, runner, tmp_path, config_path):
        path = write(tmp_path, "lft.obo", OBO_LFT)
        result = runner.invoke(main, ["check", path, "--config", config_path,
                                      "--suppress", "R05-ABBREV:LFT"])
        assert result.exit_code == 0

    def test_suppress_subject_may_contain_colons(self, runner, tmp_path, config_path):
        path = write(tmp_path, "lft.obo", OBO_LFT)
        result = runner.invoke(main, ["check", path, "--config", config_path,
                                      "--suppress", "R05-ABBREV:EX:0000002"])
        assert result.exit_code == 0

    def test_suppress_malformed(self, runner, tmp_path, config_path):
        path = write(tmp_path, "lft.obo", OBO_LFT)
        result = runner.invoke(main, ["check", path, "--config", config_path,
                                      "--suppress", "R05-ABBREV"])
        assert result.exit_code == 2
        assert "RULE:SUBJECT" in result.output

    def test_suppress_unknown_rule(self, runner, tmp_path, config_path):
        path = write(tmp_path, "lft.obo", OBO_LFT)
        result = runner.invoke(main, ["check", path, "--config", config_path,
                                      "--suppress", "R99-NOPE:LFT"])
        assert result.exit_code == 2

    def test_json_output(self, runner, tmp_path, config_path):
        path = write(tmp_path, "lft.obo", OBO_LFT)
        result = runner.invoke(main, ["check", path, "--config", config_path,
                                      "--output", "json"])
        payload = json.loads(result.output)
        assert payload["tool"] == "vocab-lint"
        assert [f["rule_id"] for f in payload["findings"]] == ["R05-ABBREV"]

    def test_format_override(self, runner, tmp_path, config_path):
        path = write(tmp_path, "terms.txt", OBO_LFT)
        result = runner.invoke(main, ["check", path, "--config", config_path,
                                      "--format", "obo"])
        assert result.exit_code == 1

    def test_unknown_suffix_is_fatal(self, runner, tmp_path):
        path = write(tmp_path, "terms.txt", OBO_LFT)
        result = runner.invoke(main, ["check", path])
        assert result.exit_code == 2
        assert "cannot infer format" in result.output

    def test_missing_file_is_fatal(self, runner, tmp_path):
        result = runner.invoke(main, ["check", str(tmp_path / "absent.obo")])
        assert result.exit_code == 2

    def test_bad_config_is_fatal(self, runner, tmp_path):
        path = write(tmp_path, "clean.obo", OBO_CLEAN)
        bad = write(tmp_path, "config.json", '{"surprise": true}')
        result = runner.invoke(main, ["check", path, "--config", bad])
        assert result.exit_code == 2

    def test_per_file_flag(self, runner, tmp_path):
        a = write(tmp_path, "a.obo", OBO_CLEAN)
        b = write(tmp_path, "b.obo", OBO_CLEAN.replace("HP:0012735", "HP:0099999"))
        merged = runner.invoke(main, ["check", a, b])
        isolated = runner.invoke(main, ["check", a, b, "--per-file"])
        assert "C-SEMANTIC-NOISE" in merged.output
        assert merged.exit_code == 1
        assert "C-SEMANTIC-NOISE" not in isolated.output
        assert isolated.exit_code == 0

    def test_no_color_env_disables_ansi(self, runner, tmp_path, config_path):
        path = write(tmp_path, "lft.obo", OBO_LFT)
        result = runner.invoke(main, ["check", path, "--config", config_path],
                               env={"NO_COLOR": "1"})
        assert "\x1b[" not in result.output


class TestSuggest:
    def test_ranked_rows(self, runner, tmp_path):
        ref = write(tmp_path, "ref.obo", OBO_REFERENCE)
        result = runner.invoke(main, ["suggest", "wet cough", "--references", ref])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "query: wet cough"
        assert lines[1] == ("  1. productive cough  score 0.900  exact_synonym  "
                            "reused-in 1  HP:0031352")
        assert lines[2].startswith("  2. cough  score 0.350  token_overlap")

    def test_no_candidates(self, runner, tmp_path):
        ref = write(tmp_path, "ref.obo", OBO_REFERENCE)
        result = runner.invoke(main, ["suggest", "zzzz", "--references", ref])
        assert "(no candidates)" in result.output

    def test_json_output(self, runner, tmp_path):
        ref = write(tmp_path, "ref.obo", OBO_REFERENCE)
        result = runner.invoke(main, ["suggest", "wet cough", "--references", ref,
                                      "--output", "json", "-k", "1"])
        payload = json.loads(result.output)
        entry, = payload["queries"]
        assert entry["query"] == "wet cough"
        suggestion, = entry["suggestions"]
        assert suggestion["label"] == "productive cough"
        assert suggestion["score"] == 0.9
        assert suggestion["match_kind"] == "exact_synonym"

    def test_references_from_config(self, runner, tmp_path):
        write(tmp_path, "ref.obo", OBO_REFERENCE)
        config = write(tmp_path, "config.json",
                       json.dumps({"reference_paths": ["ref.obo"]}))
        result = runner.invoke(main, ["suggest", "cough", "--config", config])
        assert result.exit_code == 0 and "1. cough" in result.output

    def test_no_references_is_fatal(self, runner):
        result = runner.invoke(main, ["suggest", "cough"])
        assert result.exit_code == 2
        assert "no reference vocabularies" in result.output

    def test_empty_query_is_fatal(self, runner, tmp_path):
        ref = write(tmp_path, "ref.obo", OBO_REFERENCE)
        result = runner.invoke(main, ["suggest", "!!", "--references", ref])
        assert result.exit_code == 2
        assert "empty after normalization" in result.output


class TestHealth:
    def test_verdicts_and_subscores(self, runner, tmp_path):
        snap = write(tmp_path, "snapshot.txt", SNAPSHOT)
        result = runner.invoke(main, ["health", "--metadata", snap])
        assert result.exit_code == 0
        assert "well-tended: healthy (composite 0.99)" in result.output
        assert "dusty: stale (composite 0.00)" in result.output
        assert "does not mean the content is of poor quality" in result.output
        assert "activity" in result.output

    def test_metadata_from_config(self, runner, tmp_path):
        write(tmp_path, "snapshot.txt", SNAPSHOT)
        config = write(tmp_path, "config.json",
                       json.dumps({"metadata_path": "snapshot.txt"}))
        result = runner.invoke(main, ["health", "--config", config])
        assert result.exit_code == 0 and "well-tended" in result.output

    def test_custom_weights_from_config(self, runner, tmp_path):
        write(tmp_path, "snapshot.txt", SNAPSHOT)
        config = write(tmp_path, "config.json", json.dumps(
            {"metadata_path": "snapshot.txt",
             "health_weights": {"identifiers": 1.0}}))
        result = runner.invoke(main, ["health", "--config", config])
        assert "well-tended: healthy (composite 1.00)" in result.output

    def test_bad_weights_fatal(self, runner, tmp_path):
        snap = write(tmp_path, "snapshot.txt", SNAPSHOT)
        config = write(tmp_path, "config.json", json.dumps(
            {"health_weights": {"identifiers": 0.5}}))
        result = runner.invoke(main, ["health", "--metadata", snap,
                                      "--config", config])
        assert result.exit_code == 2

    def test_notes_surface(self, runner, tmp_path):
        snap = write(tmp_path, "snapshot.txt", SNAPSHOT + "\nmascot: owl\n")
        result = runner.invoke(main, ["health", "--metadata", snap])
        assert "note:" in result.output and "mascot" in result.output

    def test_json_output(self, runner, tmp_path):
        snap = write(tmp_path, "snapshot.txt", SNAPSHOT)
        result = runner.invoke(main, ["health", "--metadata", snap,
                                      "--output", "json"])
        payload = json.loads(result.output)
        assert [o["verdict"] for o in payload["ontologies"]] == ["healthy", "stale"]

    def test_no_snapshot_is_fatal(self, runner):
        result = runner.invoke(main, ["health"])
        assert result.exit_code == 2

    def test_missing_snapshot_file_is_fatal(self, runner, tmp_path):
        result = runner.invoke(main, ["health", "--metadata",
                                      str(tmp_path / "absent.txt")])
        assert result.exit_code == 2


class TestRules:
    def test_lists_every_rule(self, runner):
        result = runner.invoke(main, ["rules"])
        assert result.exit_code == 0
        lines = [line for line in result.output.splitlines() if line]
        assert len(lines) == len(RULES)
        for rule_id in ("R01-REUSE", "R05-ABBREV", "C-WORD-BOMB", "PARSE"):
            assert any(line.startswith(rule_id) for line in lines)

    def test_version_flag(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert "vocab-lint" in result.output
