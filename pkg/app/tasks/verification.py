"""Naturality checks of catalog operators, one work unit per operator"""

from typing import NamedTuple

from app.core.logging import get_logger
from app.schemas.verification import NaturalityReport
from app.services.catalog_service import catalog_service
from app.services.jet_service import jet_service

logger = get_logger(__name__)


class OperatorCheck(NamedTuple):
    name: str
    trials: int
    seed: int
    dim: int


def check_catalog_operator(request: OperatorCheck) -> NaturalityReport:
    """Numeric naturality of one named operator on inputs satisfying its constraints"""
    entry = catalog_service.entry(request.name)
    logger.info("Checking operator", operator=entry.name, trials=request.trials, seed=request.seed)
    return jet_service.check_naturality(
        catalog_service.expand(entry.name),
        entry.signature,
        entry.constraints,
        trials=request.trials,
        seed=request.seed,
        dim=request.dim,
        name=entry.name,
    )
