import pytest

from app.core.exceptions import CatalogError
from app.schemas.signature import SymmetryConstraint
from app.services.catalog_service import (
    DEFAULT_GENERATORS,
    TANGENT_ONE_FORM,
    TANGENT_TWO_TENSOR,
    VECTOR_FIELDS,
    VECTOR_ONE_FORM,
    catalog_service,
)
from app.services.classification_service import classification_service
from app.services.connection_service import connection_service

ONE_FORM_FAMILY = [
    "trace_dpsi", "oneform_x_dtrace", "dtrace_x_oneform",
    "dpsi_circ1_phi", "dpsi_circ2_phi", "d_psi_circ_phi",
]
TRACE_FAMILY = [
    "psi_xy_dtrace_z", "psi_yx_dtrace_z", "psi_xz_dtrace_y",
    "psi_zx_dtrace_y", "psi_yz_dtrace_x", "psi_zy_dtrace_x",
]


@pytest.mark.parametrize("name", catalog_service.names)
def test_entries_have_the_declared_naturality(name):
    entry = catalog_service.entry(name)
    expansion = catalog_service.expand(name)
    assert expansion.valence == (entry.signature.out_contra, entry.signature.out_cov)
    natural = connection_service.is_natural(expansion, entry.signature, entry.constraints)
    assert natural == entry.natural


def test_default_generator_counts():
    assert {sig.label: len(names) for sig, names in DEFAULT_GENERATORS.items()} == {
        "(1,0)x(1,0)->(1,0)": 1,
        "(1,0)x(0,1)->(0,1)": 2,
        "(1,0)x(0,2)->(0,2)": 4,
        "(1,1)x(1,1)->(1,2)": 15,
        "(1,1)x(0,1)->(0,2)": 6,
        "(1,1)x(0,2)->(0,3)": 14,
        "(1,2)x(0,1)->(0,3)": 19,
    }


def test_generators_give_an_invertible_change_of_basis():
    _, _, basis = classification_service.classify(TANGENT_ONE_FORM)
    matches = catalog_service.match_basis(basis, catalog_service.default_generators(TANGENT_ONE_FORM))
    assert matches.spans_equal
    assert matches.named_rank == 6
    assert len(matches.inverse) == 6


def test_lie_bracket_is_the_only_vector_field_operator():
    _, _, basis = classification_service.classify(VECTOR_FIELDS)
    matches = catalog_service.match_basis(basis, ["lie_bracket"])
    assert matches.coordinates["lie_bracket"] in (["1/1"], ["-1/1"])


@pytest.mark.parametrize("constraints, alternate, rank", [
    ({SymmetryConstraint.PSI_CLOSED_FORM}, False, 3),
    (set(), True, 4),
    ({SymmetryConstraint.PSI_CLOSED_FORM}, True, 2),
])
def test_one_form_family_ranks(constraints, alternate, rank):
    assert catalog_service.family_rank(ONE_FORM_FAMILY, constraints, alternate) == rank


@pytest.mark.parametrize("constraints, alternate, rank", [
    ({SymmetryConstraint.PSI_SYMMETRIC}, False, 3),
    ({SymmetryConstraint.PSI_ANTISYMMETRIC}, False, 3),
    (set(), True, 1),
])
def test_trace_family_ranks(constraints, alternate, rank):
    assert catalog_service.family_rank(TRACE_FAMILY, constraints, alternate) == rank


def test_unknown_operator():
    with pytest.raises(CatalogError):
        catalog_service.entry("no_such_operator")


def test_expansion_is_tied_to_its_signature():
    with pytest.raises(CatalogError):
        catalog_service.expand("lie_bracket", VECTOR_ONE_FORM)


def test_families_filter_entries():
    entries = catalog_service.entries(catalog_service.entry("yano_ako_phi1").family)
    assert "yano_ako_phi1" in [e.name for e in entries]
    assert all(e.signature == TANGENT_TWO_TENSOR for e in entries if e.name.startswith("yano_ako_phi"))


def test_empty_family_rank_is_zero():
    assert catalog_service.family_rank([]) == 0
