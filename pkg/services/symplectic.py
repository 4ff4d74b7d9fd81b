"""F2 linear algebra, symplectic bases and symplectic root systems.

Vectors are ``np.uint8`` arrays of zeros and ones; a space is given by its
alternating Gram matrix and the pairing is ``uᵀ G v mod 2``.
"""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from config.settings import settings
from services import dynkin
from services.exceptions import (
    InternalConsistencyError,
    MalformedInputError,
    ResourceLimitError,
    UnsupportedError,
)

logger = logging.getLogger(__name__)


def gf2_row_reduce(matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F2 and the pivot columns."""
    M = np.array(matrix, dtype=np.uint8) % 2
    if M.ndim != 2:
        raise MalformedInputError(f"Expected a matrix, got shape {M.shape}")
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.flatnonzero(M[r:, c])
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        M[others] ^= M[r]
        pivots.append(c)
        r += 1
    return M, pivots


def gf2_rank(matrix: np.ndarray) -> int:
    return len(gf2_row_reduce(matrix)[1])


def gf2_nullspace(matrix: np.ndarray) -> list[np.ndarray]:
    """Basis of {v : M v = 0} over F2."""
    R, pivots = gf2_row_reduce(matrix)
    cols = R.shape[1]
    basis = []
    for f in (c for c in range(cols) if c not in pivots):
        v = np.zeros(cols, dtype=np.uint8)
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = R[i, f]
        basis.append(v)
    return basis


def gf2_solve(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray | None:
    """One solution of M x = b over F2, or None."""
    M = np.asarray(matrix, dtype=np.uint8)
    augmented = np.concatenate([M, np.asarray(rhs, dtype=np.uint8).reshape(-1, 1)], axis=1)
    R, pivots = gf2_row_reduce(augmented)
    if pivots and pivots[-1] == M.shape[1]:
        return None
    x = np.zeros(M.shape[1], dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = R[i, -1]
    return x


@dataclass(frozen=True, eq=False)
class SympSpace:
    """F2 vector space with an alternating, possibly degenerate, form."""

    gram: np.ndarray

    def __post_init__(self) -> None:
        gram = np.asarray(self.gram, dtype=np.int64)
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise MalformedInputError(f"Gram matrix must be square, got shape {gram.shape}")
        gram = (gram % 2).astype(np.uint8)
        if not np.array_equal(gram, gram.T) or gram.diagonal().any():
            raise MalformedInputError("Gram matrix must be symmetric with zero diagonal")
        object.__setattr__(self, "gram", gram)

    @classmethod
    def standard(cls, pairs: int, nulls: int) -> "SympSpace":
        """Coordinates (x1, y1, ..., xk, yk, z1, ..., zl) with ⟨xi, yi⟩ = 1."""
        n = 2 * pairs + nulls
        gram = np.zeros((n, n), dtype=np.uint8)
        for i in range(pairs):
            gram[2 * i, 2 * i + 1] = gram[2 * i + 1, 2 * i] = 1
        return cls(gram)

    @property
    def dimension(self) -> int:
        return int(self.gram.shape[0])

    @property
    def rank(self) -> int:
        return gf2_rank(self.gram)

    @property
    def nullity(self) -> int:
        return self.dimension - self.rank

    def pairing(self, u: np.ndarray, v: np.ndarray) -> int:
        return int(np.asarray(u, dtype=np.int64) @ self.gram.astype(np.int64) @ np.asarray(v, dtype=np.int64)) % 2


def standard_names(pairs: int, nulls: int) -> tuple[str, ...]:
    names = [n for i in range(1, pairs + 1) for n in (f"x{i}", f"y{i}")]
    return tuple(names + [f"z{j}" for j in range(1, nulls + 1)])


def nullspace(space: SympSpace) -> list[np.ndarray]:
    return gf2_nullspace(space.gram)


def symplectic_basis(space: SympSpace) -> tuple[list[tuple[np.ndarray, np.ndarray]], list[np.ndarray]]:
    """Split V into hyperbolic pairs and a basis of the radical.

    Sweeps the standard basis: the first remaining vector u is paired with
    the first remaining v having ⟨u, v⟩ = 1 and the rest are projected off
    both; a vector without a partner is null.
    """
    remaining = [row.copy() for row in np.eye(space.dimension, dtype=np.uint8)]
    pairs: list[tuple[np.ndarray, np.ndarray]] = []
    nulls: list[np.ndarray] = []
    while remaining:
        u = remaining.pop(0)
        partner = next((k for k, w in enumerate(remaining) if space.pairing(u, w)), None)
        if partner is None:
            nulls.append(u)
            continue
        v = remaining.pop(partner)
        pairs.append((u, v))
        remaining = [(w + space.pairing(w, v) * u + space.pairing(w, u) * v) % 2 for w in remaining]
        remaining = [w.astype(np.uint8) for w in remaining]
    return pairs, nulls


@dataclass(frozen=True, eq=False)
class Decoration:
    """A graph whose nodes carry vectors of a symplectic space."""

    adjacency: np.ndarray
    space: SympSpace
    vectors: np.ndarray
    diagram: str | None = None
    coordinate_names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        adjacency = np.asarray(self.adjacency, dtype=np.uint8)
        vectors = np.asarray(self.vectors, dtype=np.uint8).reshape(adjacency.shape[0], -1)
        if vectors.shape[1] != self.space.dimension:
            raise MalformedInputError(
                f"Decoration vectors have length {vectors.shape[1]}, space has dimension {self.space.dimension}"
            )
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "vectors", vectors % 2)

    @property
    def nodes(self) -> int:
        return int(self.adjacency.shape[0])

    def describe(self) -> list[str]:
        """Render each node vector as a sum of coordinate names."""
        names = self.coordinate_names or tuple(f"e{i + 1}" for i in range(self.space.dimension))
        rendered = []
        for v in self.vectors:
            terms = [names[i] for i in np.flatnonzero(v)]
            rendered.append("+".join(terms) if terms else "0")
        return rendered


@dataclass
class RootSystemReport:
    valid: bool
    minimal: bool
    spans: bool
    violations: list[tuple[int, int]]

    def __bool__(self) -> bool:
        return self.valid


def verify_root_system(decoration: Decoration) -> RootSystemReport:
    """Check that pairings are 1 exactly on edges and that the image spans V."""
    space = decoration.space
    pairings = (decoration.vectors.astype(np.int64) @ space.gram @ decoration.vectors.T.astype(np.int64)) % 2
    violations = [
        (i, j)
        for i, j in itertools.combinations(range(decoration.nodes), 2)
        if pairings[i, j] != decoration.adjacency[i, j]
    ]
    rank = gf2_rank(decoration.vectors)
    spans = rank == space.dimension
    minimal = spans and rank == decoration.nodes
    return RootSystemReport(valid=spans and not violations, minimal=minimal, spans=spans, violations=violations)


def _check_diagram(diagram: str) -> tuple[str, int]:
    kind, n = dynkin.parse_label(diagram)
    if kind not in {"A", "D", "E"}:
        raise UnsupportedError(f"{diagram} is not a simply-laced Dynkin diagram")
    limit = settings.exceptional_max_rank if kind == "E" else settings.root_system_max_rank
    if n > limit:
        raise ResourceLimitError(f"Rank {n} exceeds the bound {limit} for type {kind}")
    return kind, n


def minimal_root_system(diagram: str) -> Decoration:
    """Minimal symplectic root system of an ADE diagram.

    The adjacency matrix over F2 is the Gram matrix with φ(i) = e_i; the result
    is rewritten in the coordinates of the symplectic basis of that form.
    """
    _check_diagram(diagram)
    adjacency = dynkin.adjacency_matrix(diagram)
    pairs, nulls = symplectic_basis(SympSpace(adjacency))
    columns = [v for pair in pairs for v in pair] + nulls
    change = np.column_stack(columns).astype(np.uint8)
    n = adjacency.shape[0]
    vectors = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        coords = gf2_solve(change, np.eye(n, dtype=np.uint8)[i])
        if coords is None:
            raise InternalConsistencyError("Symplectic basis does not span the space")
        vectors[i] = coords
    decoration = Decoration(
        adjacency,
        SympSpace.standard(len(pairs), len(nulls)),
        vectors,
        diagram,
        standard_names(len(pairs), len(nulls)),
    )
    report = verify_root_system(decoration)
    if not (report.valid and report.minimal):
        raise InternalConsistencyError(f"Generated decoration of {diagram} failed verification: {report.violations}")
    logger.info("Minimal root system built: diagram=%s nullity=%s", diagram, len(nulls))
    return decoration


def search_minimal_root_system(
    adjacency: np.ndarray, space: SympSpace, diagram: str | None = None
) -> Decoration | None:
    """Lexicographically smallest minimal decoration of a graph over a space, if any."""
    adjacency = np.asarray(adjacency, dtype=np.uint8)
    n = adjacency.shape[0]
    if space.dimension != n:
        return None
    candidates = [np.array(bits, dtype=np.uint8) for bits in itertools.product((0, 1), repeat=n) if any(bits)]
    chosen: list[np.ndarray] = []

    def extend(node: int) -> bool:
        if node == n:
            return True
        for v in candidates:
            if any(space.pairing(v, chosen[j]) != adjacency[node, j] for j in range(node)):
                continue
            if gf2_rank(np.array(chosen + [v])) != node + 1:
                continue
            chosen.append(v)
            if extend(node + 1):
                return True
            chosen.pop()
        return False

    if not extend(0):
        return None
    return Decoration(adjacency, space, np.array(chosen), diagram)


def exhaustive_nullities(diagram: str) -> frozenset[int]:
    """Nullities k for which a minimal decoration exists over some space of dimension n."""
    _, n = _check_diagram(diagram)
    adjacency = dynkin.adjacency_matrix(diagram)
    found = set()
    for nulls in range(n % 2, n + 1, 2):
        space = SympSpace.standard((n - nulls) // 2, nulls)
        if search_minimal_root_system(adjacency, space, diagram) is not None:
            found.add(nulls)
    return frozenset(found)


def decoration_from_vectors(
    adjacency: Sequence[Sequence[int]], gram: Sequence[Sequence[int]], vectors: Sequence[Sequence[int]]
) -> Decoration:
    return Decoration(np.asarray(adjacency), SympSpace(np.asarray(gram)), np.asarray(vectors))
