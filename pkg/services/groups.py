"""Finite groups, characters, 2-cocycles and central extensions.

Abelian groups are invariant-factor tuples with elements as exponent tuples in
lexicographic order; every table in this module (cocycles, Cayley tables) is
indexed by that canonical order. Nonabelian groups are Cayley tables.
Roots of unity are phases in [0, 1) kept as ``Fraction``; the sign ``-1`` is
the phase ``1/2``.
"""

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
import sympy

from config.settings import settings
from services.exceptions import (
    InternalConsistencyError,
    InvalidCocycleError,
    InvariantViolationError,
    MalformedInputError,
    ResourceLimitError,
    UnsupportedCommutatorError,
    UnsupportedError,
)
from services.symplectic import gf2_rank

logger = logging.getLogger(__name__)

Element = tuple[int, ...]

HALF = Fraction(1, 2)


def phase_to_sign(phase: Fraction) -> int:
    """Convert a phase in {0, 1/2} to the sign +1 / -1."""
    phase = phase % 1
    if phase == 0:
        return 1
    if phase == HALF:
        return -1
    raise UnsupportedError(f"Scalar exp(2*pi*i*{phase}) is not +1 or -1")


def sign_to_phase(sign: int) -> Fraction:
    """Convert a sign +1 / -1 to its phase."""
    if sign == 1:
        return Fraction(0)
    if sign == -1:
        return HALF
    raise MalformedInputError(f"Expected +1 or -1, got {sign}")


@dataclass(frozen=True)
class AbelianGroup:
    """Direct product of cyclic groups of the given orders."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        factors = tuple(int(f) for f in self.invariant_factors)
        if any(f < 2 for f in factors):
            raise MalformedInputError(f"Invariant factors must be >= 2, got {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def elementary(cls, rank: int) -> "AbelianGroup":
        """Return Z2^rank."""
        return cls((2,) * rank)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    @property
    def exponent(self) -> int:
        return math.lcm(*self.invariant_factors) if self.invariant_factors else 1

    @property
    def is_elementary_two(self) -> bool:
        return all(f == 2 for f in self.invariant_factors)

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple(itertools.product(*(range(f) for f in self.invariant_factors)))

    @cached_property
    def coordinates(self) -> np.ndarray:
        """Elements as rows of an (order x rank) integer array."""
        return np.array(self.elements, dtype=np.int64).reshape(self.order, self.rank)

    @cached_property
    def addition_table(self) -> np.ndarray:
        coords = self.coordinates
        factors = np.array(self.invariant_factors, dtype=np.int64)
        sums = (coords[:, None, :] + coords[None, :, :]) % factors
        if self.rank == 0:
            return np.zeros((1, 1), dtype=np.int64)
        return np.ravel_multi_index(tuple(np.moveaxis(sums, -1, 0)), self.invariant_factors)

    def check(self, g: Sequence[int]) -> Element:
        """Validate and normalize an element tuple."""
        if len(g) != self.rank:
            raise MalformedInputError(f"Element {tuple(g)} does not have length {self.rank}")
        return tuple(int(x) % f for x, f in zip(g, self.invariant_factors))

    def index(self, g: Sequence[int]) -> int:
        g = self.check(g)
        if self.rank == 0:
            return 0
        return int(np.ravel_multi_index(g, self.invariant_factors))

    def element(self, i: int) -> Element:
        return self.elements[i]

    def generator(self, i: int) -> Element:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def add(self, g: Sequence[int], h: Sequence[int]) -> Element:
        return tuple((a + b) % f for a, b, f in zip(g, h, self.invariant_factors))

    def neg(self, g: Sequence[int]) -> Element:
        return tuple((-a) % f for a, f in zip(g, self.invariant_factors))

    def combine(self, coefficients: Sequence[int], vectors: Sequence[Sequence[int]]) -> Element:
        """Sum of ``c_i * v_i``."""
        total = self.identity
        for c, v in zip(coefficients, vectors):
            for _ in range(int(c) % self.exponent):
                total = self.add(total, v)
        return total


@dataclass(frozen=True)
class Character:
    """Character of an abelian group as an exponent tuple.

    The value on generator ``i`` is a primitive ``f_i``-th root of unity
    raised to ``exponents[i]``.
    """

    group: AbelianGroup
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.exponents) != self.group.rank:
            raise MalformedInputError(
                f"Character has {len(self.exponents)} exponents, group rank is {self.group.rank}"
            )
        reduced = tuple(int(e) % f for e, f in zip(self.exponents, self.group.invariant_factors))
        object.__setattr__(self, "exponents", reduced)

    @classmethod
    def trivial(cls, group: AbelianGroup) -> "Character":
        return cls(group, (0,) * group.rank)

    @classmethod
    def from_signs(cls, group: AbelianGroup, signs: Sequence[int]) -> "Character":
        """Character with value ``signs[i]`` in {+1, -1} on generator ``i``."""
        exponents = []
        for sign, f in zip(signs, group.invariant_factors, strict=True):
            if sign == -1 and f % 2:
                raise MalformedInputError(f"No character takes -1 on a generator of odd order {f}")
            exponents.append(f // 2 if sign == -1 else 0)
        return cls(group, tuple(exponents))

    @classmethod
    def from_phases(cls, group: AbelianGroup, phases: Sequence[Fraction]) -> "Character":
        """Character with value ``exp(2 pi i phases[i])`` on generator ``i``."""
        exponents = []
        for phase, f in zip(phases, group.invariant_factors, strict=True):
            e = Fraction(phase) * f
            if e.denominator != 1:
                raise MalformedInputError(f"Phase {phase} has order not dividing {f}")
            exponents.append(int(e))
        return cls(group, tuple(exponents))

    def phase(self, g: Sequence[int]) -> Fraction:
        g = self.group.check(g)
        total = sum(
            (Fraction(e * x, f) for e, x, f in zip(self.exponents, g, self.group.invariant_factors)),
            Fraction(0),
        )
        return total % 1

    def sign(self, g: Sequence[int]) -> int:
        return phase_to_sign(self.phase(g))

    def signs(self) -> tuple[int, ...]:
        """Values on the generators, which must all be +1 or -1."""
        return tuple(self.sign(self.group.generator(i)) for i in range(self.group.rank))

    def __mul__(self, other: "Character") -> "Character":
        if other.group != self.group:
            raise MalformedInputError("Characters live on different groups")
        return Character(self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents)))


@dataclass(frozen=True, eq=False)
class Cocycle2:
    """A {+1,-1}-valued table on Γ x Γ, rows indexed by the first argument."""

    group: AbelianGroup
    table: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", np.asarray(self.table, dtype=np.int8))

    @classmethod
    def trivial(cls, group: AbelianGroup) -> "Cocycle2":
        return cls(group, np.ones((group.order, group.order), dtype=np.int8))

    @classmethod
    def bilinear(cls, group: AbelianGroup, matrix: Sequence[Sequence[int]]) -> "Cocycle2":
        """The cocycle ``σ(a, b) = (-1)^(aᵀ B b)``; B may only touch even factors."""
        B = np.asarray(matrix, dtype=np.int64) % 2
        if B.shape != (group.rank, group.rank):
            raise MalformedInputError(f"Bilinear matrix must be {group.rank}x{group.rank}")
        odd = [i for i, f in enumerate(group.invariant_factors) if f % 2]
        if odd and (B[odd, :].any() or B[:, odd].any()):
            raise MalformedInputError("Bilinear matrix touches an odd-order factor")
        coords = group.coordinates % 2
        exponent = (coords @ B @ coords.T) % 2
        return cls(group, np.where(exponent == 1, -1, 1).astype(np.int8))

    def value(self, g: Sequence[int], h: Sequence[int]) -> int:
        return int(self.table[self.group.index(g), self.group.index(h)])

    def to_text(self) -> str:
        lines = [" ".join(str(f) for f in self.group.invariant_factors)]
        lines.extend(" ".join("+1" if v == 1 else "-1" for v in row) for row in self.table)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Cocycle2":
        rows = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
        if not rows:
            raise MalformedInputError("Cocycle file is empty")
        try:
            group = AbelianGroup(tuple(int(f) for f in rows[0]))
            table = np.array([[int(v) for v in row] for row in rows[1:]], dtype=np.int64)
        except ValueError as e:
            raise MalformedInputError(f"Cannot parse cocycle file: {e}") from e
        if table.shape != (group.order, group.order):
            raise MalformedInputError(
                f"Cocycle table has shape {table.shape}, expected {(group.order, group.order)}"
            )
        if not np.isin(table, (1, -1)).all():
            raise MalformedInputError("Cocycle entries must be +1 or -1")
        return cls(group, table)


def validate_cocycle(group: AbelianGroup, cocycle: Cocycle2) -> bool:
    """Check normalization and the 2-cocycle identity on all triples."""
    n = group.order
    table = np.asarray(cocycle.table)
    if table.shape != (n, n):
        raise MalformedInputError(f"Cocycle table has shape {table.shape}, expected {(n, n)}")
    if not np.isin(table, (1, -1)).all():
        raise MalformedInputError("Cocycle entries must be +1 or -1")
    e = group.index(group.identity)
    if (table[e, :] != 1).any() or (table[:, e] != 1).any():
        return False
    add = group.addition_table
    for g in range(n):
        # σ(g,h)σ(g+h,k) == σ(h,k)σ(g,h+k) for all h, k
        lhs = table[g, :, None] * table[add[g, :], :]
        rhs = table * table[g, add]
        if not np.array_equal(lhs, rhs):
            return False
    return True


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its Cayley table of element indices."""

    table: np.ndarray
    identity: int = 0
    labels: tuple[str, ...] | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        table = np.asarray(self.table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise MalformedInputError(f"Cayley table must be square, got shape {table.shape}")
        if table.size and (table.min() < 0 or table.max() >= table.shape[0]):
            raise MalformedInputError("Cayley table entries out of range")
        if self.labels is not None and len(self.labels) != table.shape[0]:
            raise MalformedInputError("Label count does not match group order")
        object.__setattr__(self, "table", table)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, 0, tuple(str(i) for i in range(n)), f"Z{n}")

    @classmethod
    def from_abelian(cls, group: AbelianGroup) -> "FiniteGroup":
        labels = tuple("".join(str(x) for x in g) for g in group.elements)
        return cls(group.addition_table, group.index(group.identity), labels)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def product(self, elements: Iterable[int]) -> int:
        result = self.identity
        for g in elements:
            result = int(self.table[result, g])
        return result

    @cached_property
    def inverses(self) -> np.ndarray:
        hits = self.table == self.identity
        if not (hits.sum(axis=1) == 1).all():
            raise MalformedInputError("Cayley table does not have unique inverses")
        return np.argmax(hits, axis=1)

    def inverse(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse(a), -k
        result = self.identity
        for _ in range(k):
            result = int(self.table[result, a])
        return result

    @cached_property
    def orders(self) -> tuple[int, ...]:
        result = []
        for g in range(self.order):
            k, x = 1, g
            while x != self.identity:
                x = int(self.table[x, g])
                k += 1
            result.append(k)
        return tuple(result)

    def element_order(self, g: int) -> int:
        return self.orders[g]

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders)

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def verify_axioms(self) -> list[str]:
        """Return a list of violated group axioms (empty if the table is a group)."""
        violations = []
        n = self.order
        idx = np.arange(n)
        if not (np.array_equal(self.table[self.identity], idx) and np.array_equal(self.table[:, self.identity], idx)):
            violations.append("identity")
        hits = self.table == self.identity
        if not ((hits.sum(axis=1) == 1).all() and (hits.sum(axis=0) == 1).all()):
            violations.append("inverses")
        if n <= settings.axiom_check_bound:
            if not np.array_equal(self.table[self.table], self.table[:, self.table]):
                violations.append("associativity")
        return violations

    def closure(self, generators: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by the given elements."""
        gens = list(dict.fromkeys(int(g) for g in generators))
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def generates(self, elements: Iterable[int]) -> bool:
        return len(self.closure(elements)) == self.order

    def conjugate(self, g: int, h: int) -> int:
        """Return g h g^-1."""
        return int(self.table[self.table[g, h], self.inverses[g]])

    @cached_property
    def commutator_table(self) -> np.ndarray:
        """Entry [g, h] is g h g^-1 h^-1."""
        gh = self.table
        ghg = self.table[gh, self.inverses[:, None]]
        return self.table[ghg, self.inverses[None, :]]

    def commutator(self, g: int, h: int) -> int:
        return int(self.commutator_table[g, h])

    @cached_property
    def center(self) -> frozenset[int]:
        return frozenset(int(g) for g in np.flatnonzero((self.table == self.table.T).all(axis=1)))

    @cached_property
    def commutator_subgroup(self) -> frozenset[int]:
        return self.closure(np.unique(self.commutator_table))

    @cached_property
    def squares_subgroup(self) -> frozenset[int]:
        return self.power_subgroup(2)

    def power_subgroup(self, p: int) -> frozenset[int]:
        return self.closure(self.power(g, p) for g in range(self.order))

    def conjugacy_class(self, g: int) -> tuple[int, ...]:
        return tuple(sorted({self.conjugate(x, g) for x in range(self.order)}))

    def centralizer(self, g: int) -> frozenset[int]:
        return frozenset(int(x) for x in np.flatnonzero(self.table[g] == self.table[:, g]))

    def is_normal(self, subgroup: Iterable[int]) -> bool:
        members = frozenset(subgroup)
        return all(self.conjugate(x, h) in members for x in range(self.order) for h in members)

    @cached_property
    def generating_set(self) -> tuple[int, ...]:
        """Greedy generating set along the canonical element order."""
        gens: list[int] = []
        span = frozenset({self.identity})
        for g in range(self.order):
            if len(span) == self.order:
                break
            if g not in span:
                gens.append(g)
                span = self.closure(gens)
        return tuple(gens)


def direct_product(first: FiniteGroup, second: FiniteGroup) -> FiniteGroup:
    """Cayley table of first x second, index a * |second| + b."""
    n, m = first.order, second.order
    a = np.repeat(np.arange(n), m)
    b = np.tile(np.arange(m), n)
    table = first.table[a[:, None], a[None, :]] * m + second.table[b[:, None], b[None, :]]
    labels = tuple(f"({first.label(x)},{second.label(y)})" for x, y in zip(a, b))
    name = f"{first.name}x{second.name}" if first.name and second.name else None
    return FiniteGroup(table, first.identity * m + second.identity, labels, name)


def minimal_generating_set(group: FiniteGroup) -> tuple[int, ...]:
    """Lexicographically first generating set of minimum size."""
    _check_size(group)
    if group.order == 1:
        return ()
    candidates = [g for g in range(group.order) if g != group.identity]
    for size in range(1, len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            if group.generates(combo):
                return combo
    raise InternalConsistencyError("A finite group must be generated by its elements")


@dataclass(frozen=True, eq=False)
class CentralExtension:
    """Central extension 1 -> {±1} -> G -> Γ -> 1 built from a cocycle.

    The element (λ, ḡ) has index ``b * |Γ| + index(ḡ)`` where ``b = 0`` for
    λ = +1 and ``b = 1`` for λ = -1, so the section s(ḡ) = (+1, ḡ) is the
    first block and θ* = (-1, 1) has index |Γ|.
    """

    base: AbelianGroup
    cocycle: Cocycle2
    group: FiniteGroup
    stem: bool
    name: str | None = None

    @property
    def theta_star(self) -> int:
        return self.base.order

    def element(self, sign: int, gbar: Sequence[int]) -> int:
        return (0 if sign == 1 else self.base.order) + self.base.index(gbar)

    def section(self, gbar: Sequence[int]) -> int:
        return self.base.index(gbar)

    def projection(self, g: int) -> Element:
        return self.base.element(g % self.base.order)

    def sign_part(self, g: int) -> int:
        return 1 if g < self.base.order else -1

    def form(self, gbar: Sequence[int], hbar: Sequence[int]) -> int:
        """⟨ḡ, h̄⟩ = σ(ḡ, h̄) σ(h̄, ḡ)^-1 as a sign."""
        return self.cocycle.value(gbar, hbar) * self.cocycle.value(hbar, gbar)

    @cached_property
    def form_gram(self) -> np.ndarray:
        """F2 Gram matrix of the commutator form on the generators of Γ."""
        r = self.base.rank
        gram = np.zeros((r, r), dtype=np.uint8)
        for a in range(r):
            for b in range(r):
                gram[a, b] = self.form(self.base.generator(a), self.base.generator(b)) == -1
        return gram


def central_extension(base: AbelianGroup, cocycle: Cocycle2, name: str | None = None) -> CentralExtension:
    """Build G = {±1} x Γ with (λ,ḡ)(μ,h̄) = (λμσ(ḡ,h̄), ḡh̄)."""
    if not validate_cocycle(base, cocycle):
        raise InvalidCocycleError("Table is not a normalized 2-cocycle")
    n = base.order
    idx = np.arange(2 * n)
    bits = idx // n
    gbar = idx % n
    add = base.addition_table[gbar[:, None], gbar[None, :]]
    twist = (cocycle.table[gbar[:, None], gbar[None, :]] == -1).astype(np.int64)
    sign_bits = bits[:, None] ^ bits[None, :] ^ twist
    table = sign_bits * n + add
    labels = tuple(("+" if b == 0 else "-") + "".join(str(x) for x in base.element(g)) for b, g in zip(bits, gbar))
    group = FiniteGroup(table, base.index(base.identity), labels, name)
    stem = n in group.commutator_subgroup
    extension = CentralExtension(base, cocycle, group, stem, name)
    logger.info("Built central extension: name=%s order=%s stem=%s", name, group.order, stem)
    return extension


def claim_two_violations(extension: CentralExtension) -> list[tuple[Element, Element]]:
    """Pairs where [s(ḡ), s(h̄)] differs from σ(ḡ,h̄)σ(h̄,ḡ)^-1 · 1."""
    base, group = extension.base, extension.group
    n = base.order
    comm = group.commutator_table[:n, :n]
    form = extension.cocycle.table * extension.cocycle.table.T
    expected = np.where(form == 1, group.identity, extension.theta_star)
    bad = np.argwhere(comm != expected)
    return [(base.element(int(a)), base.element(int(b))) for a, b in bad]


def projection_is_homomorphism(extension: CentralExtension) -> bool:
    n = extension.base.order
    pi = np.arange(2 * n) % n
    table = extension.group.table
    return bool(np.array_equal(pi[table], extension.base.addition_table[pi[:, None], pi[None, :]]))


@dataclass(frozen=True, eq=False)
class CommutatorData:
    """[G,G], Z(G), G² and the alternating form on V = G/G²."""

    group: FiniteGroup
    commutator_subgroup: frozenset[int]
    center: frozenset[int]
    squares: frozenset[int]
    basis: tuple[int, ...]
    gram: np.ndarray
    coset_key: np.ndarray
    coset_vectors: dict[int, int]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def nullity(self) -> int:
        return self.dimension - gf2_rank(self.gram)

    def coordinates(self, g: int) -> np.ndarray:
        """F2 coordinates of the coset gG² in the chosen basis."""
        bits = self.coset_vectors[int(self.coset_key[g])]
        return np.array([(bits >> i) & 1 for i in range(self.dimension)], dtype=np.uint8)


def _check_size(group: FiniteGroup) -> None:
    if group.order > settings.group_size_bound:
        raise ResourceLimitError(
            f"Group order {group.order} exceeds the bound {settings.group_size_bound}"
        )


def commutator_data(group: FiniteGroup, require_z2: bool = False) -> CommutatorData:
    """Compute the commutator-induced symplectic structure of G exhaustively."""
    _check_size(group)
    derived = group.commutator_subgroup
    if require_z2 and len(derived) > 2:
        raise UnsupportedCommutatorError(f"|[G,G]| = {len(derived)} > 2")
    squares = group.squares_subgroup
    square_list = sorted(squares)
    coset_key = group.table[:, square_list].min(axis=1)

    # greedy basis sweep; span maps coset key -> (representative, bitmask)
    span = {int(coset_key[group.identity]): (group.identity, 0)}
    basis: list[int] = []
    for g in range(group.order):
        if int(coset_key[g]) in span:
            continue
        bit = 1 << len(basis)
        basis.append(g)
        for rep, mask in list(span.values()):
            y = group.mul(rep, g)
            span[int(coset_key[y])] = (y, mask | bit)

    gram = np.zeros((len(basis), len(basis)), dtype=np.uint8)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            gram[i, j] = group.commutator(a, b) != group.identity

    if len(derived) == 2:
        _check_bimultiplicative(group)

    coset_vectors = {key: mask for key, (_, mask) in span.items()}
    logger.info(
        "Commutator data: order=%s |[G,G]|=%s |Z|=%s dimV=%s",
        group.order,
        len(derived),
        len(group.center),
        len(basis),
    )
    return CommutatorData(group, derived, group.center, squares, tuple(basis), gram, coset_key, coset_vectors)


def _check_bimultiplicative(group: FiniteGroup) -> None:
    table = group.table
    comm = group.commutator_table
    for h in range(group.order):
        c = comm[:, h]
        # [gg', h] == [g, h][g', h]
        if not np.array_equal(c[table], table[c[:, None], c[None, :]]):
            raise InvariantViolationError(f"Commutator map is not bimultiplicative at h={group.label(h)}")


def _log_exact(n: int, p: int) -> int:
    k = 0
    while n % p == 0 and n > 1:
        n //= p
        k += 1
    if n != 1:
        raise InternalConsistencyError("Quotient order is not a prime power")
    return k


def is_nilpotent(group: FiniteGroup) -> bool:
    """Every Sylow subgroup is normal, i.e. the p-power-order elements have order p^v."""
    for p, v in sympy.factorint(group.order).items():
        sylow = [g for g in range(group.order) if _is_power_of(group.element_order(g), p)]
        if len(sylow) != p**v:
            return False
    return True


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def frattini_rank(group: FiniteGroup, p: int) -> int:
    """dim over F_p of G / [G,G]G^p."""
    quotient = group.closure(group.commutator_subgroup | group.power_subgroup(p))
    return _log_exact(group.order // len(quotient), p)


def is_two_saturated(group: FiniteGroup) -> bool:
    """Whether dim_Fp(G/[G,G]G^p) <= dim_F2(G/G²) for every prime p dividing |G|."""
    _check_size(group)
    if not is_nilpotent(group):
        raise UnsupportedError("2-saturation is only defined for nilpotent groups")
    two_rank = _log_exact(group.order // len(group.squares_subgroup), 2) if group.order % 2 == 0 else 0
    if group.order % 2 and len(group.squares_subgroup) != group.order:
        raise InternalConsistencyError("Odd-order group with a proper squares subgroup")
    return all(frattini_rank(group, p) <= two_rank for p in sympy.primefactors(group.order))


def lift_basis_to_generators(
    group: FiniteGroup,
    basis: Sequence[int],
    data: CommutatorData | None = None,
    search_limit: int = 200000,
) -> tuple[int, ...]:
    """Lift a basis of V = G/G² to elements that generate G.

    The given representatives are tried first; otherwise every lift inside the
    cosets bG² is searched in lexicographic order.
    """
    data = data or commutator_data(group)
    vectors = np.array([data.coordinates(b) for b in basis], dtype=np.uint8).reshape(len(basis), data.dimension)
    if len(basis) != data.dimension or gf2_rank(vectors) != len(basis):
        raise MalformedInputError("Cosets do not form a basis of G/G²")
    if group.generates(basis):
        return tuple(int(b) for b in basis)

    square_list = sorted(data.squares)
    cosets = [sorted({group.mul(b, s) for s in square_list}) for b in basis]
    for count, lifts in enumerate(itertools.product(*cosets)):
        if count >= search_limit:
            break
        if group.generates(lifts):
            logger.info("Generating lift found after %s candidates", count + 1)
            return tuple(lifts)
    raise InternalConsistencyError("No generating lift exists; the group is not 2-saturated")
