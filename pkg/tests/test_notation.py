import pytest

from app.core.exceptions import NotationError, SignatureError
from app.models.notation import format_expression, parse
from app.schemas.expression import ExpressionRecord, index_from_text
from app.models.tensor import free, dummy


@pytest.mark.parametrize("text", [
    "phi^m_i psi_jk,m",
    "phi^m_m psi_ij,k - 2 psi_ij phi^m_m,k",
    "2/3 phi^m_i psi_j,m + psi_m phi^m_i,j",
])
def test_ascii_output_parses_back(text):
    lower = "ijk" if "k" in text else "ij"
    e = parse(text, "", lower)
    assert parse(format_expression(e, "ascii"), "", lower) == e


def test_unicode_output_uses_partial_symbols():
    text = format_expression(parse("phi^m_i psi_jk,m", "", "ijk"))
    assert "φ^m_i" in text
    assert "∂_m ψ_jk" in text


def test_zero_formats_as_zero():
    assert format_expression(parse("psi_i - psi_i", "", "i")) == "0"


def test_parentheses_distribute():
    grouped = parse("phi^m_i (psi_j,m + 2 psi_m,j)", "", "ij")
    flat = parse("phi^m_i psi_j,m + 2 phi^m_i psi_m,j", "", "ij")
    assert grouped == flat


def test_dim_token_is_a_power_of_the_dimension():
    e = parse("dim psi_i", "", "i")
    assert e.has_dim()


@pytest.mark.parametrize("text", [
    "phi_i psi_j",
    "foo_i",
    "psi_i +",
    "phi^m_i psi_j,m $",
    "delta^i psi_j",
])
def test_malformed_notation(text):
    with pytest.raises(NotationError):
        parse(text)


def test_terms_must_agree_on_free_indices():
    with pytest.raises(SignatureError):
        parse("psi_i + psi_j")


def test_index_names_round_trip_through_records():
    assert index_from_text("i") == free(0)
    assert index_from_text("m") == dummy(0)
    with pytest.raises(NotationError):
        index_from_text("?")


def test_expression_record_round_trip():
    e = parse("phi^m_i psi_jk,m - 1/2 psi_ij phi^m_m,k", "", "ijk")
    record = ExpressionRecord.model_validate_json(ExpressionRecord.from_expression(e).model_dump_json())
    assert record.to_expression() == e
    assert record.text == format_expression(e, "ascii")
