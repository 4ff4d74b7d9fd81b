"""Cached oracle ranks, one row per braiding and degree."""

import uuid

from sqlalchemy import JSON, Column, Float, Integer, String, UniqueConstraint, Uuid
from sqlalchemy.orm import Mapped

from models.base import Base, TimestampMixin


class OracleProfile(TimestampMixin, Base):
    """Symmetrizer rank of a braiding in one degree.

    The digest identifies the braiding by its signed-permutation arrays and
    dimension, so equal braided vector spaces share cache rows.
    """

    __tablename__ = "oracle_profile"
    __table_args__ = (UniqueConstraint("braiding_digest", "degree", name="uq_oracle_profile_digest_degree"),)

    id: Mapped[uuid.UUID] = Column(
        Uuid,
        primary_key=True,
        default=uuid.uuid4,
    )

    braiding_digest: Mapped[str] = Column(
        String(64),
        nullable=False,
        index=True,
    )

    dimension: Mapped[int] = Column(
        Integer,
        nullable=False,
    )

    degree: Mapped[int] = Column(
        Integer,
        nullable=False,
    )

    rank: Mapped[int] = Column(
        Integer,
        nullable=False,
    )

    primes: Mapped[list] = Column(
        JSON,
        nullable=False,
        comment="Primes the rank was computed modulo",
    )

    runtime_ms: Mapped[float] = Column(
        Float,
        nullable=False,
    )
