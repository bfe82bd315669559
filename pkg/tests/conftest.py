"""Shared fixtures"""

from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from app.core.logging import configure_logging
from app.schemas.signature import TensorSignature
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

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"

SIGNATURES = {
    "vector_fields": VECTOR_FIELDS,
    "vector_one_form": VECTOR_ONE_FORM,
    "vector_two_tensor": VECTOR_TWO_TENSOR,
    "tangent_tangent": TANGENT_TANGENT,
    "tangent_one_form": TANGENT_ONE_FORM,
    "tangent_two_tensor": TANGENT_TWO_TENSOR,
    "two_tensor_one_form": TWO_TENSOR_ONE_FORM,
}


@pytest.fixture(scope="session", autouse=True)
def logging_configured():
    # bind the stderr handler before any CliRunner swaps the streams
    configure_logging()


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)


@pytest.fixture(scope="session")
def classified():
    """Cached (family, system, basis) per signature and constraint set"""

    def run(signature: TensorSignature, *constraints):
        return classification_service.classify(signature, constraints)

    return run


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES_DIR
