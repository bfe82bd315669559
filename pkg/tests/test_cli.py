import json
import shutil
from pathlib import Path

import pytest

from app.commands import cli

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "0.1.0" in result.output


def test_classify_vector_fields(runner):
    result = runner.invoke(cli, ["classify", "--phi", "0", "--psi", "1,0", "--names", "lie_bracket"])
    assert result.exit_code == 0, result.output
    assert "dimension    1" in result.stdout
    assert "lie_bracket" in result.stdout


def test_classify_prints_json(runner):
    result = runner.invoke(cli, ["classify", "--phi", "1", "--psi", "0,1", "--sym-psi", "closed", "--format", "json"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["dimension"] == 3
    assert report["constraints"] == ["psi_closed_form"]


@pytest.mark.slow
def test_classify_alternating_output(runner):
    result = runner.invoke(cli, ["classify", "--phi", "1", "--psi", "1,1", "--alt-output", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["dimension"] == 8


def test_classify_labels_terms_from_a_fixture(runner):
    fixture = str(FIXTURES_DIR / "vector_one_form.json")
    result = runner.invoke(cli, ["classify", "--phi", "0", "--psi", "0,1", "--fixture", fixture, "--format", "json"])
    assert result.exit_code == 0, result.output
    labels = {term["source_label"] for term in json.loads(result.stdout)["terms"]}
    assert labels == {"a1", "a2", "b1", "b2"}


@pytest.mark.parametrize("arguments", [
    ["--phi", "0", "--psi", "0,1", "--sym-psi", "sym"],
    ["--phi", "0", "--psi", "one"],
    ["--phi", "-1", "--psi", "0,1"],
    ["--phi", "1", "--psi", "0,2", "--fixture", str(FIXTURES_DIR / "vector_fields.json")],
])
def test_classify_usage_errors(runner, arguments):
    result = runner.invoke(cli, ["classify", *arguments])
    assert result.exit_code == 2


def test_classified_basis_verifies(runner, tmp_path):
    path = tmp_path / "report.json"
    result = runner.invoke(cli, ["classify", "--phi", "0", "--psi", "0,1", "--json", str(path)])
    assert result.exit_code == 0, result.output
    arguments = ["--basis-from", str(path), "--trials", "2", "--dim", "2", "--format", "json"]
    result = runner.invoke(cli, ["verify", *arguments])
    assert result.exit_code == 0, result.output
    names = [r["operator"] for r in json.loads(result.stdout)["reports"]]
    assert names == ["basis_1", "basis_2"]


def test_verify_natural_operator(runner):
    result = runner.invoke(cli, ["verify", "--op", "lie_bracket", "--trials", "3", "--dim", "2"])
    assert result.exit_code == 0, result.output


def test_verify_reports_a_failure(runner):
    result = runner.invoke(cli, ["verify", "--op", "nonexample_a2", "--trials", "3", "--dim", "2", "--format", "json"])
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    assert report["success"] is False
    assert report["reports"][0]["witness"] is not None


def test_verify_pure_case(runner):
    result = runner.invoke(cli, ["verify", "--pure", "--trials", "2", "--dim", "2"])
    assert result.exit_code == 0, result.output


@pytest.mark.parametrize("arguments", [[], ["--op", "no_such_operator"]])
def test_verify_usage_errors(runner, arguments):
    assert runner.invoke(cli, ["verify", *arguments]).exit_code == 2


def test_identities_group(runner):
    result = runner.invoke(cli, ["identities", "--suite", "tangent_two_form", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["success"] is True


def test_identities_unknown_suite(runner):
    assert runner.invoke(cli, ["identities", "--suite", "no_such_suite"]).exit_code == 2


def test_homogeneity_certifies_first_order(runner):
    result = runner.invoke(cli, ["homogeneity", "--phi", "2", "--psi", "0,1", "--max-order", "4", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["certificate"]["order"] == 1


def test_homogeneity_bilinear_restriction(runner):
    result = runner.invoke(cli, ["homogeneity", "--phi", "1", "--psi", "0,2", "--bilinear"])
    assert result.exit_code == 0, result.output


def test_homogeneity_needs_the_hypotheses(runner):
    assert runner.invoke(cli, ["homogeneity", "--phi", "0", "--psi", "1,1"]).exit_code == 2


def test_catalog_single_entry(runner):
    result = runner.invoke(cli, ["catalog", "--name", "lie_bracket", "--format", "json"])
    assert result.exit_code == 0, result.output
    entries = json.loads(result.stdout)["entries"]
    assert [e["name"] for e in entries] == ["lie_bracket"]
    assert entries[0]["natural"] is True


def test_catalog_unknown_name(runner):
    assert runner.invoke(cli, ["catalog", "--name", "no_such_operator"]).exit_code == 2


def test_regress_passes_on_a_good_fixture(runner, tmp_path):
    shutil.copy(FIXTURES_DIR / "vector_fields.json", tmp_path)
    result = runner.invoke(cli, ["regress", "--fixtures", str(tmp_path), "--workers", "1"])
    assert result.exit_code == 0, result.output


def test_regress_fails_on_a_wrong_fixture(runner, tmp_path):
    data = json.loads((FIXTURES_DIR / "vector_fields.json").read_text(encoding="utf-8"))
    data["dimension"] = 2
    (tmp_path / "vector_fields.json").write_text(json.dumps(data), encoding="utf-8")
    result = runner.invoke(cli, ["regress", "--fixtures", str(tmp_path), "--workers", "1"])
    assert result.exit_code == 1


def test_regress_missing_directory(runner, tmp_path):
    result = runner.invoke(cli, ["regress", "--fixtures", str(tmp_path / "absent")])
    assert result.exit_code == 2


def test_identities_help_lists_the_groups(runner):
    result = runner.invoke(cli, ["identities", "--help"])
    assert result.exit_code == 0
    for group in ("vector_field", "tangent_one_form", "yano_ako_two_tensor", "tangent_two_form"):
        assert group in result.output
