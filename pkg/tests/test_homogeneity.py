import hypothesis.strategies as st
import pytest
from hypothesis import given

from app.core.exceptions import HypothesisError
from app.schemas.signature import TensorSignature
from app.services.homogeneity_service import homogeneity_service


def signature(p, r, s):
    return TensorSignature(phi_p=p, psi_r=r, psi_s=s)


def test_two_form_valued_case_has_exactly_two_admissible_solutions():
    report = homogeneity_service.report(signature(2, 0, 1), max_order=4, bilinear=False)
    assert len(report.admissible) == 2
    assert len(report.solutions) > len(report.admissible)
    assert sorted(s.label for s in report.admissible) == ["a0=1, b1=1", "a1=1, b0=1"]
    assert report.certificate is not None
    assert report.certificate.shapes == ["phi*dpsi", "psi*dphi"]


@pytest.mark.parametrize("p, r, s", [(2, 0, 1), (2, 0, 2), (3, 0, 1), (2, 1, 2), (3, 1, 3)])
def test_first_order_under_the_positivity_hypotheses(p, r, s):
    certificate = homogeneity_service.certify_first_order(signature(p, r, s), max_order=3)
    assert certificate.order == 1


@given(
    st.integers(min_value=0, max_value=3),
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=1, max_value=4),
)
def test_bilinear_search_always_certifies(p, r, s, max_order):
    report = homogeneity_service.report(signature(p, r, s), max_order=max_order, bilinear=True)
    assert len(report.solutions) == 2
    assert report.certificate is not None


def test_every_admissible_solution_is_bilinear_first_order():
    solutions = homogeneity_service.solve_degree_equation(signature(2, 0, 2), 3)
    for solution in solutions:
        if solution.admissible:
            assert solution.phi_degree == solution.psi_degree == 1
            assert solution.order == 1


def test_unrestricted_search_refuses_without_the_hypotheses():
    with pytest.raises(HypothesisError):
        homogeneity_service.solve_degree_equation(signature(0, 1, 1), 3)
    with pytest.raises(HypothesisError):
        homogeneity_service.solve_degree_equation(signature(1, 0, 2), 3)


def test_order_bound_must_be_positive():
    with pytest.raises(HypothesisError):
        homogeneity_service.solve_degree_equation(signature(2, 0, 1), 0, bilinear=True)
