import os
import logging
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, Field, field_validator

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

ENV_PREFIX = "SEPFORM_"


class Settings(BaseModel):
    """Runtime settings read from the environment (and a .env file)."""

    precision_bits: int = Field(128, ge=16, description="Target precision of numeric evaluations in bits")
    seed: int = Field(20170101, ge=0, description="Default Monte Carlo seed")
    threads: int = Field(1, ge=1, description="Default Monte Carlo worker count")
    output_dir: str = Field("output", description="Directory for result files")
    support_lo: Fraction = Field(Fraction(-1, 16), description="Lower end of the moment support")
    support_hi: Fraction = Field(Fraction(1, 256), description="Upper end of the moment support")
    cache_size: int = Field(4096, ge=1, description="Capacity of the exact-value cache")

    @field_validator("support_lo", "support_hi", mode="before")
    @classmethod
    def _parse_fraction(cls, value):
        if isinstance(value, Fraction):
            return value
        return Fraction(str(value).strip())


def _read(name: str) -> Optional[str]:
    value = os.environ.get(ENV_PREFIX + name)
    if value is None or value.strip() == "":
        return None
    return value


def load_settings() -> Settings:
    """
    Build a Settings object from SEPFORM_* environment variables.

    Unset variables fall back to the model defaults. Call `load_dotenv()`
    first if values should also come from a .env file.

    Returns:
        Validated settings
    """
    raw = {}
    for field_name in Settings.model_fields:
        value = _read(field_name.upper())
        if value is not None:
            raw[field_name] = value
    settings = Settings(**raw)
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings
