"""Models package."""

from models.base import Base, TimestampMixin
from models.oracle_profile import OracleProfile

__all__ = [
    "Base",
    "TimestampMixin",
    "OracleProfile",
]
