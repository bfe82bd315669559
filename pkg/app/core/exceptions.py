"""Custom exception classes"""

from typing import Any, Dict, Optional

import click


class NaturalOperatorError(Exception):
    """Base exception class for the classification engine"""

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class SignatureError(NaturalOperatorError):
    """Free indices or valences do not match"""
    pass


class StructuralError(NaturalOperatorError):
    """Malformed index use or derivative structure"""
    pass


class NotationError(StructuralError):
    """Index notation could not be parsed"""
    pass


class HypothesisError(NaturalOperatorError):
    """Preconditions of the degree argument are not met"""
    pass


class InconsistencyError(NaturalOperatorError):
    """An internal invariant was violated"""
    pass


class CatalogError(NaturalOperatorError):
    """Unknown operator, identity or signature pairing"""
    pass


class FixtureError(NaturalOperatorError):
    """Regression fixture is malformed"""
    pass


USAGE_ERRORS = (SignatureError, HypothesisError, CatalogError, FixtureError, NotationError)


# CLI exception factories
def create_cli_exception(error: NaturalOperatorError) -> click.ClickException:
    """Translate a domain error into a click exception with the right exit code"""
    message = error.message
    if error.details:
        extra = ", ".join(f"{key}={value}" for key, value in error.details.items())
        message = f"{message} ({extra})"
    if isinstance(error, USAGE_ERRORS):
        return click.UsageError(message)
    return click.ClickException(message)
