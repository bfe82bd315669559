import pytest

from app.core.exceptions import SignatureError
from app.schemas.classification import ClassificationReport
from app.schemas.signature import SymmetryConstraint
from app.services.catalog_service import (
    TANGENT_ONE_FORM,
    TANGENT_TANGENT,
    TANGENT_TWO_TENSOR,
    TWO_TENSOR_ONE_FORM,
    VECTOR_FIELDS,
    VECTOR_ONE_FORM,
    VECTOR_TWO_TENSOR,
)
from app.services.classification_service import classification_service

CLOSED = SymmetryConstraint.PSI_CLOSED_FORM
ALTERNATING = SymmetryConstraint.OUTPUT_ALTERNATING
TANGENT_FORM = SymmetryConstraint.PHI_ANTISYMMETRIC


@pytest.mark.parametrize("signature, dimension", [
    (VECTOR_FIELDS, 1),
    (VECTOR_ONE_FORM, 2),
    (VECTOR_TWO_TENSOR, 4),
    (TANGENT_ONE_FORM, 6),
])
def test_small_signatures(signature, dimension):
    assert classification_service.dimension(signature) == dimension


@pytest.mark.slow
@pytest.mark.parametrize("signature, dimension", [
    (TANGENT_TANGENT, 15),
    (TANGENT_TWO_TENSOR, 14),
    (TWO_TENSOR_ONE_FORM, 19),
])
def test_large_signatures(signature, dimension):
    assert classification_service.dimension(signature) == dimension


@pytest.mark.parametrize("constraints, dimension", [
    ({CLOSED}, 3),
    ({CLOSED, ALTERNATING}, 2),
    ({ALTERNATING}, 4),
])
def test_tangent_one_form_variants(constraints, dimension):
    assert classification_service.dimension(TANGENT_ONE_FORM, constraints) == dimension


@pytest.mark.slow
@pytest.mark.parametrize("signature, constraints, dimension", [
    (TANGENT_TANGENT, {ALTERNATING}, 8),
    (TWO_TENSOR_ONE_FORM, {TANGENT_FORM}, 10),
    (TWO_TENSOR_ONE_FORM, {CLOSED}, 7),
])
def test_large_variants(signature, constraints, dimension):
    assert classification_service.dimension(signature, constraints) == dimension


def test_rank_and_nullity_add_up(classified):
    for signature in (VECTOR_FIELDS, VECTOR_ONE_FORM, VECTOR_TWO_TENSOR, TANGENT_ONE_FORM):
        family, system, basis = classified(signature)
        assert system.rank() == basis.rank
        assert basis.rank + basis.dimension == family.size


def test_report_matches_the_default_generators():
    report = classification_service.report(VECTOR_ONE_FORM)
    assert report.dimension == 2
    assert report.ansatz_size == 4
    assert report.system.rank + report.system.nullity == report.ansatz_size
    assert report.matches.spans_equal
    assert report.matches.inverse is not None
    assert [term.id for term in report.terms] == ["a1", "a2", "b1", "b2"]


def test_report_round_trips_through_json():
    report = classification_service.report(TANGENT_ONE_FORM)
    loaded = ClassificationReport.model_validate_json(report.model_dump_json())
    assert [b.expression.to_expression() for b in loaded.basis] == [
        b.expression.to_expression() for b in report.basis
    ]
    assert loaded.version == report.version


def test_names_outside_the_span_leave_a_residual():
    report = classification_service.report(VECTOR_FIELDS, names=["lie_bracket", "nonexample_a2"])
    assert "nonexample_a2" in report.matches.residuals
    assert not report.matches.spans_equal


def test_constraint_must_fit_the_signature():
    with pytest.raises(SignatureError):
        classification_service.classify(VECTOR_ONE_FORM, {SymmetryConstraint.PSI_ANTISYMMETRIC})
