"""Oracle profiles backed by the database cache."""

import hashlib
import logging
import time

from sqlalchemy.orm import Session

from repositories.profile_repository import ProfileRepository
from schemas.oracle import OracleProfile
from services.oracle import check_degree, symmetrizer_report
from services.yd import BraidingOperator, DiagonalYD, MonomialYD, braiding

logger = logging.getLogger(__name__)


def braiding_digest(c: BraidingOperator) -> str:
    """sha256 over m and the signed-permutation arrays."""
    digest = hashlib.sha256()
    digest.update(str(c.dimension).encode())
    digest.update(c.target.astype("<i8").tobytes())
    digest.update(c.signs.astype("<i1").tobytes())
    return digest.hexdigest()


class ProfileService:
    """Hilbert prefixes that reuse and store per-degree ranks."""

    def __init__(self, db: Session):
        self.repo = ProfileRepository(db)

    def hilbert_profile(
        self, module: DiagonalYD | MonomialYD, d_max: int, threads: int | None = None
    ) -> OracleProfile:
        """Compute missing degrees, store them and return the full prefix.

        The caller commits the session.
        """
        check_degree(module.dimension, d_max)
        start = time.perf_counter()
        c = braiding(module)
        key = braiding_digest(c)
        coefficients, primes, cached = [], [], []
        for d in range(d_max + 1):
            row = self.repo.get_profile(key, d)
            if row is not None:
                coefficients.append(row.rank)
                primes = primes or list(row.primes)
                cached.append(d)
                continue
            t0 = time.perf_counter()
            report = symmetrizer_report(c, module.dimension, d, threads)
            elapsed = (time.perf_counter() - t0) * 1000
            self.repo.get_or_create_profile(key, module.dimension, d, report.rank, list(report.primes), elapsed)
            coefficients.append(report.rank)
            primes = list(report.primes)
        logger.info("Profile ready: digest=%s d_max=%s cached=%s", key[:12], d_max, cached)
        return OracleProfile(
            degrees=list(range(d_max + 1)),
            coefficients=coefficients,
            primes=primes,
            runtime_ms=round((time.perf_counter() - start) * 1000, 3),
            cached_degrees=cached,
        )
