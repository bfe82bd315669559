import pytest

from app.core.exceptions import CatalogError
from app.services.identity_service import identity_service


@pytest.mark.parametrize("name", identity_service.names)
def test_identity_holds(name):
    case = identity_service.select(name)[0]
    result = identity_service.verify(case)
    assert result.passed, result.residual


def test_groups_cover_every_identity():
    total = sum(len(identity_service.select(group)) for group in identity_service.groups)
    assert total == len(identity_service.names)
    assert set(identity_service.groups) == {
        "vector_field", "tangent_one_form", "yano_ako_two_tensor", "froelicher_nijenhuis", "tangent_two_form",
    }


def test_cartan_formula_is_in_the_vector_field_group():
    assert [c.name for c in identity_service.select("cartan_formula_one_form")] == ["cartan_formula_one_form"]
    assert "cartan_formula_one_form" in [c.name for c in identity_service.select("vector_field")]


def test_suite_report_summarizes_results():
    report = identity_service.run("tangent_two_form")
    assert report.success
    assert report.message is None
    assert all(result.group == "tangent_two_form" for result in report.results)


def test_unknown_suite():
    with pytest.raises(CatalogError):
        identity_service.select("no_such_identity")