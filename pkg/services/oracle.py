"""Graded dimensions of Nichols algebras of signed-monomial braidings.

The tensor basis of V^⊗d is row-major: (i_1, …, i_d) has index
Σ i_k m^(d-k). σ_j is the braiding on slots (j, j+1), 1-based.

dim 𝔅^d is the rank of the quantum symmetrizer S_d = Σ_w T_w, computed as
S_d = T_d ⋯ T_2 with T_k = 1 + σ_{k-1} + σ_{k-2}σ_{k-1} + ⋯ + σ_1⋯σ_{k-1}
acting on the first k slots. The derivation route uses the coproduct
factors D_k = 1 + σ_{k-1} + σ_{k-1}σ_{k-2} + ⋯ + σ_{k-1}⋯σ_1 in the other
order. Every σ_j permutes basis vectors up to sign, so both operators are
block diagonal over the orbits of ⟨σ_1, …, σ_{d-1}⟩ on the basis.
"""

import itertools
import logging
import math
import time
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from config.settings import settings
from services.exceptions import CrossOracleError, MalformedInputError, NumericIntegrityError, ResourceLimitError
from services.modular import exact_rank, prime_ranks, rank_primes
from services.yd import BraidingOperator, DiagonalYD, MonomialYD, braiding

logger = logging.getLogger(__name__)

SignedPermutation = tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class SymmetrizerReport:
    degree: int
    ambient: int
    rank: int
    primes: tuple[int, ...]
    prime_ranks: tuple[int, ...]
    exact_rank: int | None = None
    blocks: int = 0

    @property
    def agreement(self) -> bool:
        return len(set(self.prime_ranks)) <= 1


def _check_bound(m: int, d: int, bound: int) -> int:
    if d < 0:
        raise MalformedInputError(f"Degree must be non-negative, got {d}")
    ambient = m**d
    if ambient > bound:
        raise ResourceLimitError(f"m^d = {m}^{d} = {ambient} exceeds the bound {bound}")
    return ambient


def check_degree(m: int, d_max: int) -> None:
    """Reject a prefix request whose top degree is over the sparse bound before any work."""
    _check_bound(m, d_max, settings.oracle_sparse_bound)


def _lifts(c: BraidingOperator, d: int) -> list[SignedPermutation]:
    """σ_1, …, σ_{d-1} on V^⊗d."""
    return [c.lift(j, d) for j in range(d - 1)]


def _identity(size: int) -> SignedPermutation:
    return np.arange(size, dtype=np.int64), np.ones(size, dtype=np.int8)


def _compose(first: SignedPermutation, then: SignedPermutation) -> SignedPermutation:
    target, signs = first
    return then[0][target], signs * then[1][target]


def _orbit_blocks(lifts: Sequence[SignedPermutation], size: int) -> list[np.ndarray]:
    """Connected components of the basis under the lifts, each sorted."""
    labels = np.arange(size, dtype=np.int64)
    while True:
        previous = labels.copy()
        for target, _ in lifts:
            np.minimum.at(labels, target, labels.copy())
            labels = np.minimum(labels, labels[target])
        labels = labels[labels]
        if np.array_equal(labels, previous):
            break
    order = np.argsort(labels, kind="stable")
    boundaries = np.flatnonzero(np.diff(labels[order])) + 1
    return np.split(order, boundaries)


class _Block:
    """Signed permutations restricted to one orbit, in local coordinates."""

    def __init__(self, indices: np.ndarray, lifts: Sequence[SignedPermutation], position: np.ndarray):
        self.size = len(indices)
        self.maps = [(position[target[indices]], signs[indices].astype(np.int64)) for target, signs in lifts]

    def apply(self, j: int, matrix: np.ndarray) -> np.ndarray:
        """σ_j (1-based) applied to the columns of a block matrix."""
        target, signs = self.maps[j - 1]
        out = np.empty_like(matrix)
        out[target] = signs[:, None] * matrix
        return out

    def symmetrizer(self, d: int) -> np.ndarray:
        matrix = np.eye(self.size, dtype=np.int64)
        for k in range(2, d + 1):
            current, total = matrix, matrix.copy()
            for j in range(k - 1, 0, -1):
                current = self.apply(j, current)
                total += current
            matrix = total
        return matrix

    def derivations(self, d: int) -> np.ndarray:
        matrix = np.eye(self.size, dtype=np.int64)
        for k in range(d, 1, -1):
            total = matrix.copy()
            for j in range(1, k):
                total = matrix + self.apply(j, total)
            matrix = total
        return matrix


def _blocks(c: BraidingOperator, d: int) -> list[_Block]:
    size = c.dimension**d
    lifts = _lifts(c, d)
    indices = _orbit_blocks(lifts, size)
    position = np.empty(size, dtype=np.int64)
    for block in indices:
        position[block] = np.arange(len(block))
    return [_Block(block, lifts, position) for block in indices]


def _block_ranks(matrices: Sequence[np.ndarray], primes: Sequence[int], threads: int) -> list[tuple[int, ...]]:
    task = partial(prime_ranks, primes=primes)
    if threads <= 1 or len(matrices) <= 1:
        return list(map(task, matrices))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(task, matrices))


def _agreed(block_ranks: Sequence[tuple[int, ...]], primes: Sequence[int], d: int) -> int:
    for ranks in block_ranks:
        if len(set(ranks)) != 1:
            raise NumericIntegrityError(f"Ranks disagree across primes at d={d}: {dict(zip(primes, ranks))}")
    return sum(ranks[0] for ranks in block_ranks)


def _ranks(matrices: Sequence[np.ndarray], primes: Sequence[int], threads: int, d: int) -> int:
    return _agreed(_block_ranks(matrices, primes, threads), primes, d)


def symmetrizer_report(
    c: BraidingOperator, m: int, d: int, threads: int | None = None, exact: bool = False
) -> SymmetrizerReport:
    """Rank of the degree-d quantum symmetrizer of a signed-permutation braiding.

    Args:
        c: Braiding on V ⊗ V.
        m: dim V; must equal ``c.dimension``.
        d: Degree.
        threads: Worker threads for the per-block ranks.
        exact: Also compute the rank over Q when m^d is within the exact bound.

    Raises:
        ResourceLimitError: If m^d exceeds the sparse bound or d! exceeds the primes.
        NumericIntegrityError: If the modular ranks or the exact audit disagree.
    """
    if c.dimension != m:
        raise MalformedInputError(f"Braiding has dimension {c.dimension}, expected {m}")
    ambient = _check_bound(m, d, settings.oracle_sparse_bound)
    primes = rank_primes(exceeding=math.factorial(max(d, 1)))
    if d <= 1:
        return SymmetrizerReport(d, ambient, ambient, primes, (ambient,) * len(primes), ambient if exact else None)
    blocks = _blocks(c, d)
    matrices = [block.symmetrizer(d) for block in blocks]
    block_ranks = _block_ranks(matrices, primes, threads or settings.oracle_threads)
    rank = _agreed(block_ranks, primes, d)
    totals = tuple(sum(column) for column in zip(*block_ranks))
    audited = None
    if exact and ambient <= settings.oracle_exact_bound:
        audited = sum(exact_rank(matrix) for matrix in matrices)
        if audited != rank:
            raise NumericIntegrityError(f"Modular rank {rank} differs from the exact rank {audited} at d={d}")
    logger.info("Oracle degree done: d=%s rank=%s primes=%s blocks=%s", d, rank, len(primes), len(blocks))
    return SymmetrizerReport(d, ambient, rank, primes, totals, audited, len(blocks))


def nichols_dim(c: BraidingOperator, m: int, d: int, threads: int | None = None) -> int:
    return symmetrizer_report(c, m, d, threads).rank


def hilbert_prefix(module: DiagonalYD | MonomialYD, d_max: int, threads: int | None = None) -> list[int]:
    """[dim 𝔅^d for d = 0..d_max]."""
    check_degree(module.dimension, d_max)
    c = braiding(module)
    return [nichols_dim(c, module.dimension, d, threads) for d in range(d_max + 1)]


def profile(module: DiagonalYD | MonomialYD, d_max: int, threads: int | None = None) -> dict:
    """Hilbert prefix with the primes used and the wall time."""
    check_degree(module.dimension, d_max)
    start = time.perf_counter()
    c = braiding(module)
    reports = [symmetrizer_report(c, module.dimension, d, threads) for d in range(d_max + 1)]
    return {
        "degrees": list(range(d_max + 1)),
        "coefficients": [report.rank for report in reports],
        "primes": list(reports[-1].primes) if reports else [],
        "runtime_ms": round((time.perf_counter() - start) * 1000, 3),
    }


def skew_derivation_dim(module: DiagonalYD | MonomialYD | BraidingOperator, d: int) -> int:
    """dim 𝔅^d as the rank of x ↦ (∂_{i_1} ⋯ ∂_{i_d} x)_{i_1…i_d}.

    ∂_i reads off the last tensor slot of D_n x, so the full family of
    iterated derivations is D_2 ⋯ D_d applied to x.
    """
    c = module if isinstance(module, BraidingOperator) else braiding(module)
    m = c.dimension
    ambient = _check_bound(m, d, settings.oracle_dense_bound)
    if d <= 1:
        return ambient
    primes = rank_primes(exceeding=math.factorial(d))
    matrices = [block.derivations(d) for block in _blocks(c, d)]
    return _ranks(matrices, primes, settings.oracle_threads, d)


def cross_check(module: DiagonalYD | MonomialYD, d: int) -> int:
    """Both routes at degree d.

    Raises:
        CrossOracleError: If the symmetrizer rank and the derivation dimension differ.
    """
    c = braiding(module)
    symmetrizer = nichols_dim(c, module.dimension, d)
    derivation = skew_derivation_dim(c, d)
    if symmetrizer != derivation:
        raise CrossOracleError(f"Symmetrizer rank {symmetrizer} differs from derivation dimension {derivation} at d={d}")
    return symmetrizer


def reduced_word(permutation: Sequence[int], strategy: str = "first") -> list[int]:
    """A reduced word (1-based simple transpositions) for w in one-line notation.

    Repeatedly removes the first (or last) right descent.
    """
    w = list(permutation)
    if sorted(w) != list(range(len(w))):
        raise MalformedInputError(f"Not a permutation of 0..{len(w) - 1}: {permutation}")
    if strategy not in {"first", "last"}:
        raise MalformedInputError(f"Unknown strategy {strategy!r}")
    removed = []
    while True:
        descents = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not descents:
            break
        i = descents[0] if strategy == "first" else descents[-1]
        w[i], w[i + 1] = w[i + 1], w[i]
        removed.append(i + 1)
    return removed[::-1]


def braid_lift(c: BraidingOperator, word: Sequence[int], d: int) -> SignedPermutation:
    """T_w = σ_{j_1} ⋯ σ_{j_l} on V^⊗d; the rightmost factor acts first."""
    lifts = _lifts(c, d)
    result = _identity(c.dimension**d)
    for j in reversed(word):
        if not 1 <= j < d:
            raise MalformedInputError(f"Generator σ_{j} does not act on {d} slots")
        result = _compose(result, lifts[j - 1])
    return result


def symmetrizer_matrix(c: BraidingOperator, d: int) -> np.ndarray:
    """Dense Σ_w T_w over Sym(d); column k is S_d e_k."""
    size = _check_bound(c.dimension, d, settings.oracle_dense_bound)
    matrix = np.zeros((size, size), dtype=np.int64)
    columns = np.arange(size)
    for w in itertools.permutations(range(d)):
        target, signs = braid_lift(c, reduced_word(w), d)
        np.add.at(matrix, (target, columns), signs.astype(np.int64))
    return matrix


def default_degree_cap(m: int) -> int:
    """Largest degree the oracle runs by default for dim V = m."""
    if m <= 4:
        return 6
    if m <= 8:
        return 4
    return max(1, int(math.log(settings.oracle_sparse_bound, m)))


def complete_by_symmetry(prefix: Sequence[int], top_degree: int) -> list[int]:
    """Extend a prefix to the palindromic series of the given top degree.

    Raises:
        MalformedInputError: If the prefix stops before the middle degree.
        NumericIntegrityError: If overlapping coefficients are not palindromic.
    """
    if len(prefix) < top_degree // 2 + 1:
        raise MalformedInputError(f"Prefix of length {len(prefix)} does not reach degree {top_degree // 2}")
    series = [prefix[d] if d < len(prefix) else prefix[top_degree - d] for d in range(top_degree + 1)]
    for d in range(min(len(prefix), top_degree + 1)):
        if prefix[d] != series[top_degree - d]:
            raise NumericIntegrityError(f"Coefficients at degrees {d} and {top_degree - d} differ")
    return series
