import json
from fractions import Fraction
from pathlib import Path

import pytest

from app.core.exceptions import FixtureError
from app.services.fixture_service import fixture_service, parse_relation

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"

SMALL = ["vector_fields", "vector_one_form", "vector_two_tensor", "tangent_one_form", "tangent_closed_one_form"]


def _fixture_paths(names):
    return [FIXTURES_DIR / f"{name}.json" for name in names]


@pytest.mark.parametrize("path", _fixture_paths(SMALL), ids=SMALL)
def test_small_fixtures_pass(path):
    outcome = fixture_service.check_path(path)
    assert outcome.passed, outcome.problems


@pytest.mark.slow
@pytest.mark.parametrize("path", fixture_service.paths(FIXTURES_DIR), ids=lambda p: p.stem)
def test_every_fixture_passes(path):
    outcome = fixture_service.check_path(path)
    assert outcome.passed, outcome.problems


def test_parse_relation():
    assert parse_relation("a1+a3-2b3") == {"a1": 1, "a3": 1, "b3": -2}
    assert parse_relation("-a2 + 1/2 b1") == {"a2": -1, "b1": Fraction(1, 2)}
    assert parse_relation("a1+a1") == {"a1": 2}


@pytest.mark.parametrize("text", ["", "a1 b2", "a1+c2", "2", "a1++b1"])
def test_malformed_relations(text):
    with pytest.raises(FixtureError):
        parse_relation(text)


def _write(tmp_path, **changes):
    data = json.loads((FIXTURES_DIR / "vector_fields.json").read_text(encoding="utf-8"))
    data.update(changes)
    path = tmp_path / "vector_fields.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_wrong_dimension_fails(tmp_path):
    outcome = fixture_service.check_path(_write(tmp_path, dimension=2))
    assert not outcome.passed
    assert outcome.problems == ["dimension 1, expected 2"]


def test_relation_outside_the_system_fails(tmp_path):
    outcome = fixture_service.check_path(_write(tmp_path, relations=["a1-b1", "a2", "b2"]))
    assert not outcome.passed
    assert any("not implied" in problem for problem in outcome.problems)


def test_missing_relation_fails_in_equivalent_mode(tmp_path):
    outcome = fixture_service.check_path(_write(tmp_path, relations=["a1+b1", "a2"]))
    assert not outcome.passed
    assert outcome.problems == ["relations have rank 2, the system has rank 3"]


def test_implied_mode_accepts_a_subset(tmp_path):
    outcome = fixture_service.check_path(_write(tmp_path, relations=["a1+b1"], relations_mode="implied"))
    assert outcome.passed


def test_catalog_outside_the_span_fails(tmp_path):
    outcome = fixture_service.check_path(_write(tmp_path, catalog=["lie_bracket", "nonexample_a2"]))
    assert not outcome.passed
    assert "nonexample_a2" in outcome.problems[0]


def test_unreadable_fixture(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\"name\": \"broken\"}", encoding="utf-8")
    with pytest.raises(FixtureError):
        fixture_service.load(path)


def test_missing_directory(tmp_path):
    with pytest.raises(FixtureError):
        fixture_service.paths(tmp_path / "absent")


def test_batch_run_reports_failures(tmp_path):
    report = fixture_service.run([_write(tmp_path, dimension=3)], workers=1)
    assert not report.success
    assert report.message == "1 of 1 fixtures failed"
