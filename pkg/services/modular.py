"""Integer matrix rank by elimination modulo word-size primes, with an exact audit."""

import logging
from collections.abc import Sequence

import numpy as np
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from config.settings import settings
from services.exceptions import ResourceLimitError

logger = logging.getLogger(__name__)


def rank_primes(count: int | None = None, exceeding: int = 1) -> tuple[int, ...]:
    """The largest ``count`` primes below the configured ceiling.

    Raises:
        ResourceLimitError: If the primes would not exceed ``exceeding``.
    """
    count = count or settings.oracle_primes
    primes = []
    p = settings.prime_ceiling
    for _ in range(count):
        p = int(sympy.prevprime(p))
        primes.append(p)
    if primes[-1] <= exceeding:
        raise ResourceLimitError(f"Primes below {settings.prime_ceiling} do not exceed {exceeding}")
    return tuple(primes)


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank over F_p by row reduction in int64; p must be below 2^31."""
    A = np.mod(np.asarray(matrix, dtype=np.int64), p)
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nonzero = np.flatnonzero(A[rank:, c])
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            A[[rank, pivot]] = A[[pivot, rank]]
        A[rank] = (A[rank] * pow(int(A[rank, c]), -1, p)) % p
        below = rank + 1 + np.flatnonzero(A[rank + 1 :, c])
        if below.size:
            A[below] = (A[below] - np.outer(A[below, c], A[rank]) % p) % p
        rank += 1
    return rank


def prime_ranks(matrix: np.ndarray, primes: Sequence[int]) -> tuple[int, ...]:
    """Rank modulo each prime, in the order given."""
    return tuple(rank_mod_p(matrix, p) for p in primes)


def exact_rank(matrix: np.ndarray) -> int:
    """Exact rank over Q."""
    A = np.asarray(matrix, dtype=np.int64)
    if A.size == 0:
        return 0
    rows = [[QQ(int(x)) for x in row] for row in A]
    return DomainMatrix(rows, A.shape, QQ).rank()
