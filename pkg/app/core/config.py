"""Application configuration management"""

from functools import lru_cache
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings with environment variable support"""

    # Application
    APP_NAME: str = "natural-operators"
    APP_VERSION: str = "0.1.0"
    DEBUG: bool = Field(default=False, env="DEBUG")
    LOG_LEVEL: str = Field(default="WARNING", env="LOG_LEVEL")

    # Numeric naturality checks
    JET_DIMENSION: int = Field(default=3, env="JET_DIMENSION")
    FIELD_DEGREE: int = Field(default=2, env="FIELD_DEGREE")
    COEFFICIENT_RANGE: int = Field(default=9, env="COEFFICIENT_RANGE")
    JET_COEFFICIENT_RANGE: int = Field(default=3, env="JET_COEFFICIENT_RANGE")
    NATURALITY_TRIALS: int = Field(default=50, env="NATURALITY_TRIALS")
    PURE_TRIALS: int = Field(default=20, env="PURE_TRIALS")
    DEFAULT_SEED: int = Field(default=7, env="DEFAULT_SEED")

    # Degree equation
    MAX_ORDER: int = Field(default=3, env="MAX_ORDER")

    # Regression
    FIXTURES_DIR: str = Field(default="fixtures", env="FIXTURES_DIR")
    MAX_WORKERS: int = Field(default=1, env="MAX_WORKERS")

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_log_level(cls, v):
        if isinstance(v, str):
            return v.strip().upper()
        raise ValueError(v)

    @field_validator("JET_DIMENSION")
    @classmethod
    def check_dimension(cls, v):
        if v < 2:
            raise ValueError("JET_DIMENSION must be at least 2")
        return v

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    """Get cached application settings"""
    return Settings()


settings = get_settings()
