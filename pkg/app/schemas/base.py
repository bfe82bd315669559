"""Base schemas with common patterns"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings


class BaseSchema(BaseModel):
    """Base schema with common configuration"""

    model_config = ConfigDict(
        from_attributes=True,
        validate_assignment=True,
        arbitrary_types_allowed=True,
        protected_namespaces=()
    )


class ReportBase(BaseSchema):
    """Common header of every machine-readable report"""
    engine: str = Field(default_factory=lambda: settings.APP_NAME)
    version: str = Field(default_factory=lambda: settings.APP_VERSION)
    success: bool = True
    message: Optional[str] = None
