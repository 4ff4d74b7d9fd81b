"""Cartan matrices: extraction from q-matrices, classification, roots, folding.

Hilbert polynomials are products of quantum integers ``[N]_{t^h}``; for the
Cartan-type braidings built here every positive root contributes ``1 + t^h``.
"""

import logging
from collections import Counter, deque
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
import sympy

from config.settings import settings
from services import dynkin
from services.exceptions import (
    MalformedInputError,
    NotFiniteCartanTypeError,
    PreconditionError,
    UnsupportedFoldingPatternError,
)

logger = logging.getLogger(__name__)

T = sympy.Symbol("t")


@dataclass(frozen=True, eq=False)
class CartanMatrix:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        C = np.asarray(self.matrix, dtype=np.int64)
        if C.ndim != 2 or C.shape[0] != C.shape[1]:
            raise MalformedInputError(f"Cartan matrix must be square, got shape {C.shape}")
        off = ~np.eye(C.shape[0], dtype=bool)
        if (C.diagonal() != 2).any() or (C[off] > 0).any():
            raise MalformedInputError("Cartan matrix needs 2 on the diagonal and nonpositive entries elsewhere")
        if not np.array_equal(C == 0, C.T == 0):
            raise MalformedInputError("Cartan matrix has a zero entry whose transpose is nonzero")
        object.__setattr__(self, "matrix", C)

    @property
    def size(self) -> int:
        return int(self.matrix.shape[0])

    def tolist(self) -> list[list[int]]:
        return self.matrix.tolist()

    def components(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        result = []
        for start in range(self.size):
            if start in seen:
                continue
            block, queue = [], deque([start])
            seen.add(start)
            while queue:
                i = queue.popleft()
                block.append(i)
                for j in np.flatnonzero(self.matrix[i]):
                    if int(j) not in seen:
                        seen.add(int(j))
                        queue.append(int(j))
            result.append(tuple(sorted(block)))
        return result

    def submatrix(self, nodes: Sequence[int]) -> np.ndarray:
        idx = np.asarray(nodes, dtype=np.int64)
        return self.matrix[np.ix_(idx, idx)]


def cartan_from_q(q: Sequence[Sequence[Fraction]], bound: int | None = None) -> CartanMatrix:
    """Cartan matrix of a diagonal braiding given as phases q_ij.

    C_ij = -min{m >= 0 : q_ii^-m = q_ij q_ji  or  q_ii^(m+1) = 1}.
    """
    bound = settings.cartan_bound if bound is None else bound
    phases = [[Fraction(x) % 1 for x in row] for row in q]
    n = len(phases)
    if any(len(row) != n for row in phases):
        raise MalformedInputError("q-matrix must be square")
    C = 2 * np.eye(n, dtype=np.int64)
    for i in range(n):
        q_ii = phases[i][i]
        if q_ii == 0:
            raise PreconditionError(f"q_{i}{i} = 1; the node does not have a finite Cartan entry")
        for j in range(n):
            if i == j:
                continue
            monodromy = (phases[i][j] + phases[j][i]) % 1
            for m in range(bound + 1):
                if (-m * q_ii) % 1 == monodromy or ((m + 1) * q_ii) % 1 == 0:
                    C[i, j] = -m
                    break
            else:
                raise NotFiniteCartanTypeError(f"No Cartan entry for nodes ({i}, {j}) within bound {bound}")
    return CartanMatrix(C)


@dataclass(frozen=True)
class ComponentType:
    """A connected component with its finite type.

    ``relabeling[k]`` is the node of the component playing standard node k.
    """

    nodes: tuple[int, ...]
    label: str
    relabeling: tuple[int, ...]


def _match(block: np.ndarray, standard: np.ndarray) -> tuple[int, ...] | None:
    n = standard.shape[0]
    # assign standard nodes in BFS order so each new node touches an assigned one
    order, seen = [], {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        order.append(a)
        for b in np.flatnonzero(standard[a]):
            if int(b) not in seen:
                seen.add(int(b))
                queue.append(int(b))
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == n:
            return True
        a = order[k]
        for x in range(n):
            if x in used:
                continue
            if all(block[x, assignment[b]] == standard[a, b] and block[assignment[b], x] == standard[b, a] for b in assignment):
                assignment[a] = x
                used.add(x)
                if extend(k + 1):
                    return True
                del assignment[a]
                used.discard(x)
        return False

    if not extend(0):
        return None
    return tuple(assignment[a] for a in range(n))


def classify(cartan: CartanMatrix) -> list[ComponentType]:
    """Finite type of every connected component, with the node relabeling."""
    result = []
    for nodes in cartan.components():
        block = cartan.submatrix(nodes)
        for candidate in dynkin.candidates(len(nodes)):
            local = _match(block, dynkin.cartan_matrix(candidate))
            if local is not None:
                result.append(ComponentType(nodes, candidate, tuple(nodes[i] for i in local)))
                break
        else:
            raise NotFiniteCartanTypeError(f"Component {list(nodes)} is not of finite type")
    return result


def type_label(cartan: CartanMatrix) -> str:
    """Component labels joined by "x", e.g. "A2xA2"."""
    return "x".join(component.label for component in classify(cartan))


@dataclass(frozen=True)
class RootSet:
    """Positive roots as coordinate vectors over the simple roots."""

    roots: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.roots)

    @property
    def heights(self) -> tuple[int, ...]:
        return tuple(sum(root) for root in self.roots)

    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.heights).items()))


def positive_roots(cartan: CartanMatrix) -> RootSet:
    """Close the simple roots under simple reflections, keeping positive vectors."""
    classify(cartan)
    C = cartan.matrix
    n = cartan.size
    simple = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    found = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            shift = sum(int(C[i, j]) * beta[j] for j in range(n))
            if shift == 0:
                continue
            image = list(beta)
            image[i] -= shift
            image = tuple(image)
            if min(image) < 0 or image in found:
                continue
            found.add(image)
            if len(found) > settings.root_closure_limit:
                raise NotFiniteCartanTypeError("Root generation did not close within the limit")
            queue.append(image)
    roots = tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))
    logger.info("Positive roots generated: rank=%s count=%s", n, len(roots))
    return RootSet(roots)


@dataclass(frozen=True)
class HilbertPoly:
    """Product of factors ``[N]_{t^h}`` raised to multiplicities.

    ``factors`` holds (N, h, multiplicity) triples sorted by (h, N).
    """

    factors: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_counts(cls, counts: dict[tuple[int, int], int]) -> "HilbertPoly":
        items = sorted(((h, N, m) for (N, h), m in counts.items() if m), key=lambda x: (x[0], x[1]))
        return cls(tuple((N, h, m) for h, N, m in items))

    def counts(self) -> dict[tuple[int, int], int]:
        return {(N, h): m for N, h, m in self.factors}

    def __mul__(self, other: "HilbertPoly") -> "HilbertPoly":
        counts = Counter(self.counts())
        counts.update(other.counts())
        return HilbertPoly.from_counts(dict(counts))

    @cached_property
    def coefficients(self) -> tuple[int, ...]:
        poly = sympy.Poly(1, T)
        for N, h, m in self.factors:
            base = sympy.Poly(sum(T ** (h * k) for k in range(N)), T)
            poly = poly * base**m
        return tuple(int(c) for c in reversed(poly.all_coeffs()))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def at_one(self) -> int:
        total = 1
        for N, _, m in self.factors:
            total *= N**m
        return total

    def prefix(self, d_max: int) -> tuple[int, ...]:
        coefficients = self.coefficients
        return tuple(coefficients[d] if d < len(coefficients) else 0 for d in range(d_max + 1))

    def factored(self) -> str:
        parts = []
        for N, h, m in self.factors:
            var = "t" if h == 1 else f"{{t^{h}}}"
            parts.append(f"[{N}]_{var}" + (f"^{m}" if m > 1 else ""))
        return " ".join(parts) if parts else "1"


def hilbert_from_roots(roots: RootSet, order: int = 2) -> HilbertPoly:
    """∏ over positive roots of [N]_{t^height}; N = 2 for self-braiding -1."""
    return HilbertPoly.from_counts({(order, h): m for h, m in roots.histogram().items()})


def fold(cartan: CartanMatrix, orbits: Sequence[Sequence[int]]) -> CartanMatrix:
    """Fold a Cartan matrix along an involutive graph automorphism.

    Orbits are singletons (inert) or pairs (split); the result is indexed by
    the orbits in the given order.
    """
    C = cartan.matrix
    n = cartan.size
    orbits = [tuple(int(x) for x in orbit) for orbit in orbits]
    flat = sorted(x for orbit in orbits for x in orbit)
    if flat != list(range(n)) or any(len(orbit) not in (1, 2) for orbit in orbits):
        raise MalformedInputError("Orbits must partition the nodes into singletons and pairs")

    perm = np.arange(n)
    for orbit in orbits:
        if len(orbit) == 2:
            a, b = orbit
            perm[a], perm[b] = b, a
            if C[a, b] != 0:
                raise UnsupportedFoldingPatternError(f"Orbit {orbit} contains an edge")
    if not np.array_equal(C[np.ix_(perm, perm)], C):
        raise UnsupportedFoldingPatternError("Orbit pairing is not a graph automorphism")

    m = len(orbits)
    folded = 2 * np.eye(m, dtype=np.int64)
    for k, K in enumerate(orbits):
        for l, L in enumerate(orbits):
            if k < l:
                folded[k, l], folded[l, k] = _fold_pair(C, K, L)
    logger.info("Folded Cartan matrix: nodes=%s orbits=%s", n, m)
    return CartanMatrix(folded)


def _fold_pair(C: np.ndarray, K: tuple[int, ...], L: tuple[int, ...]) -> tuple[int, int]:
    links = [(a, b) for a in K for b in L if C[a, b] != 0]
    if not links:
        return 0, 0
    if len(K) == 1 and len(L) == 1:
        return int(C[K[0], L[0]]), int(C[L[0], K[0]])
    if any(C[a, b] != -1 or C[b, a] != -1 for a, b in links):
        raise UnsupportedFoldingPatternError(f"Orbits {K} and {L} are joined by a non-simple edge")
    if len(K) == 2 and len(L) == 2:
        if len(links) == 2 and len({a for a, _ in links}) == 2 and len({b for _, b in links}) == 2:
            return -1, -1
        raise UnsupportedFoldingPatternError(f"Split orbits {K} and {L} are not joined one-to-one")
    if len(links) != 2:
        raise UnsupportedFoldingPatternError(f"Split orbit is not joined through both nodes: {K}, {L}")
    # the split orbit is the shorter root
    return (-2, -1) if len(K) == 2 else (-1, -2)
