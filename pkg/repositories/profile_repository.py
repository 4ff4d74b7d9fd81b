"""Repository for cached oracle ranks."""

import logging

from sqlalchemy.orm import Session

from models.oracle_profile import OracleProfile

logger = logging.getLogger(__name__)


class ProfileRepository:
    """Data access layer for the oracle profile cache."""

    def __init__(self, db: Session):
        """Initialize repository with database session.

        Args:
            db: SQLAlchemy database session.
        """
        self.db = db

    def get_profile(self, braiding_digest: str, degree: int) -> OracleProfile | None:
        """Get the cached rank of a braiding in one degree.

        Args:
            braiding_digest: sha256 digest of the braiding.
            degree: Tensor degree.

        Returns:
            OracleProfile record if cached, None otherwise.
        """
        return (
            self.db.query(OracleProfile)
            .filter(
                OracleProfile.braiding_digest == braiding_digest,
                OracleProfile.degree == degree,
            )
            .first()
        )

    def create_profile(
        self,
        braiding_digest: str,
        dimension: int,
        degree: int,
        rank: int,
        primes: list[int],
        runtime_ms: float,
    ) -> OracleProfile:
        """Store a computed rank.

        Returns:
            The created OracleProfile record.
        """
        profile = OracleProfile(
            braiding_digest=braiding_digest,
            dimension=dimension,
            degree=degree,
            rank=rank,
            primes=list(primes),
            runtime_ms=runtime_ms,
        )
        self.db.add(profile)
        self.db.flush()
        logger.info(
            "Created oracle profile: id=%s digest=%s degree=%s rank=%s",
            profile.id,
            braiding_digest[:12],
            degree,
            rank,
        )
        return profile

    def get_or_create_profile(
        self,
        braiding_digest: str,
        dimension: int,
        degree: int,
        rank: int,
        primes: list[int],
        runtime_ms: float,
    ) -> tuple[OracleProfile, bool]:
        """Return the cached row or store a new one.

        Returns:
            Tuple of (OracleProfile, was_created).
        """
        existing = self.get_profile(braiding_digest, degree)
        if existing is not None:
            if existing.rank != rank:
                logger.warning(
                    "Cached rank differs: digest=%s degree=%s cached=%s computed=%s",
                    braiding_digest[:12],
                    degree,
                    existing.rank,
                    rank,
                )
            return existing, False
        return self.create_profile(braiding_digest, dimension, degree, rank, primes, runtime_ms), True
