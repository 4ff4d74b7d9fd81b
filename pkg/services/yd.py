"""Yetter-Drinfeld modules, their braidings and twisted symmetries.

Diagonal modules live over an abelian group and carry one (degree, character)
pair per basis vector. Monomial modules live over a Cayley-table group; each
stored generator acts as a permutation with scalars ``ζ_N^phase``.

Braidings are signed permutations of the pair basis ``e_i ⊗ e_j`` (index
``i * m + j``): ``c(e_i ⊗ e_j) = s · e_π(j) ⊗ e_i``.
"""

import logging
import math
from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from services.exceptions import (
    InvariantViolationError,
    MalformedInputError,
    PreconditionError,
    UnsupportedError,
)
from services.groups import (
    AbelianGroup,
    CentralExtension,
    Character,
    Element,
    FiniteGroup,
    phase_to_sign,
)

logger = logging.getLogger(__name__)


def _phase_sign(phase: int, root_order: int) -> int:
    phase %= root_order
    if phase == 0:
        return 1
    if 2 * phase == root_order:
        return -1
    raise UnsupportedError(f"Scalar of phase {phase}/{root_order} is not +1 or -1")


@dataclass(frozen=True, eq=False)
class BraidingOperator:
    """Signed permutation of the m² pair basis vectors."""

    dimension: int
    target: np.ndarray
    signs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "target", np.asarray(self.target, dtype=np.int64))
        object.__setattr__(self, "signs", np.asarray(self.signs, dtype=np.int8))
        if self.target.shape != (self.dimension**2,) or self.signs.shape != self.target.shape:
            raise MalformedInputError("Braiding arrays must have length m²")
        if not np.array_equal(np.sort(self.target), np.arange(self.dimension**2)):
            raise MalformedInputError("Braiding target is not a permutation")

    def dense(self) -> np.ndarray:
        """Matrix whose column k is c(e_k)."""
        size = self.dimension**2
        matrix = np.zeros((size, size), dtype=np.int64)
        matrix[self.target, np.arange(size)] = self.signs
        return matrix

    def lift(self, position: int, factors: int) -> tuple[np.ndarray, np.ndarray]:
        """c acting on tensor slots (position, position + 1) of V^⊗factors."""
        m = self.dimension
        shape = (m,) * factors
        idx = np.arange(m**factors)
        digits = list(np.unravel_index(idx, shape))
        pair = digits[position] * m + digits[position + 1]
        t = self.target[pair]
        digits[position], digits[position + 1] = t // m, t % m
        return np.ravel_multi_index(tuple(digits), shape), self.signs[pair]

    def satisfies_yang_baxter(self) -> bool:
        c1 = self.lift(0, 3)
        c2 = self.lift(1, 3)
        return _same(_compose(c1, c2, c1), _compose(c2, c1, c2))


def _compose(*maps: tuple[np.ndarray, np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Signed permutations applied left to right."""
    target, signs = maps[0]
    for t, s in maps[1:]:
        signs = signs * s[target]
        target = t[target]
    return target, signs


def _same(a: tuple[np.ndarray, np.ndarray], b: tuple[np.ndarray, np.ndarray]) -> bool:
    return bool(np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1]))


@dataclass(frozen=True, eq=False)
class DiagonalYD:
    """⊕ O_{ḡ_i}^{χ_i} over an abelian group."""

    group: AbelianGroup
    degrees: tuple[Element, ...]
    characters: tuple[Character, ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.degrees) != len(self.characters):
            raise MalformedInputError("Diagonal module needs one character per degree")
        if any(chi.group != self.group for chi in self.characters):
            raise MalformedInputError("Character defined on a different group")
        object.__setattr__(self, "degrees", tuple(self.group.check(g) for g in self.degrees))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"y{i + 1}" for i in range(len(self.degrees))))

    @property
    def dimension(self) -> int:
        return len(self.degrees)

    def q_matrix(self) -> list[list[Fraction]]:
        return [[chi.phase(g) for chi in self.characters] for g in self.degrees]

    def q_signs(self) -> np.ndarray:
        return np.array([[phase_to_sign(x) for x in row] for row in self.q_matrix()], dtype=np.int8).reshape(
            self.dimension, self.dimension
        )

    def direct_sum(self, other: "DiagonalYD") -> "DiagonalYD":
        if other.group != self.group:
            raise MalformedInputError("Direct sum of modules over different groups")
        return DiagonalYD(
            self.group, self.degrees + other.degrees, self.characters + other.characters, self.names + other.names
        )


def q_matrix(module: DiagonalYD) -> list[list[Fraction]]:
    """q_ij = χ_j(ḡ_i) as phases."""
    return module.q_matrix()


@dataclass(frozen=True, eq=False)
class MonomialYD:
    """YD module over a nonabelian group with monomial generator actions."""

    group: FiniteGroup
    degrees: tuple[int, ...]
    generators: tuple[int, ...]
    perms: tuple[tuple[int, ...], ...]
    phases: tuple[tuple[int, ...], ...]
    root_order: int = 2
    names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        m = len(self.degrees)
        if len(self.perms) != len(self.generators) or len(self.phases) != len(self.generators):
            raise MalformedInputError("Monomial module needs one action per generator")
        for perm, phase in zip(self.perms, self.phases):
            if sorted(perm) != list(range(m)) or len(phase) != m:
                raise MalformedInputError("Generator action is not a monomial matrix")
        if any(not 0 <= g < self.group.order for g in (*self.degrees, *self.generators)):
            raise MalformedInputError("Degree or generator outside the group")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(m)))

    @property
    def dimension(self) -> int:
        return len(self.degrees)

    @cached_property
    def _element_actions(self) -> tuple[np.ndarray, np.ndarray]:
        """Permutation and phase arrays of every group element, built by BFS over the generators."""
        G, m = self.group, self.dimension
        perms = np.full((G.order, m), -1, dtype=np.int64)
        phases = np.zeros((G.order, m), dtype=np.int64)
        perms[G.identity] = np.arange(m)
        visited = np.zeros(G.order, dtype=bool)
        visited[G.identity] = True
        queue = deque([G.identity])
        gens = [
            (g, np.array(p, dtype=np.int64), np.array(f, dtype=np.int64))
            for g, p, f in zip(self.generators, self.perms, self.phases)
        ]
        while queue:
            x = queue.popleft()
            for s, p_s, f_s in gens:
                y = G.mul(x, s)
                if visited[y]:
                    continue
                # ρ(xs) = ρ(x)ρ(s)
                visited[y] = True
                perms[y] = perms[x][p_s]
                phases[y] = (f_s + phases[x][p_s]) % self.root_order
                queue.append(y)
        if not visited.all():
            raise MalformedInputError("Stored generators do not generate the group")
        return perms, phases

    def action(self, g: int) -> tuple[np.ndarray, np.ndarray]:
        perms, phases = self._element_actions
        return perms[g], phases[g]

    def acts_trivially(self, g: int) -> bool:
        perm, phase = self.action(g)
        return bool(np.array_equal(perm, np.arange(self.dimension)) and not phase.any())

    def restrict(self, indices: Sequence[int]) -> "MonomialYD":
        """Submodule on a G-stable subset of the basis."""
        indices = list(indices)
        position = {b: k for k, b in enumerate(indices)}
        perms, phases = [], []
        for perm, phase in zip(self.perms, self.phases):
            perms.append(tuple(position[perm[b]] for b in indices))
            phases.append(tuple(phase[b] for b in indices))
        return MonomialYD(
            self.group,
            tuple(self.degrees[b] for b in indices),
            self.generators,
            tuple(perms),
            tuple(phases),
            self.root_order,
            tuple(self.names[b] for b in indices),
        )


@dataclass
class YDReport:
    valid: bool
    violations: list[str]

    def __bool__(self) -> bool:
        return self.valid


def verify_yd(module: MonomialYD) -> YDReport:
    """Check that the action is a homomorphism and that g·M_h ⊆ M_{ghg⁻¹}."""
    G = module.group
    violations: list[str] = []
    try:
        perms, phases = module._element_actions
    except MalformedInputError as e:
        return YDReport(False, [e.message])
    if module.dimension:
        for s, p_s, f_s in zip(module.generators, module.perms, module.phases):
            p_s = np.asarray(p_s, dtype=np.int64)
            f_s = np.asarray(f_s, dtype=np.int64)
            composite_perm = perms[:, p_s]
            composite_phase = (f_s[None, :] + phases[:, p_s]) % module.root_order
            products = G.table[:, s]
            bad = np.flatnonzero(
                (composite_perm != perms[products]).any(axis=1) | (composite_phase != phases[products]).any(axis=1)
            )
            violations.extend(f"action not multiplicative at ({G.label(int(g))}, {G.label(s)})" for g in bad)
            for j, h in enumerate(module.degrees):
                if module.degrees[p_s[j]] != G.conjugate(s, h):
                    violations.append(f"{G.label(s)} maps {module.names[j]} out of degree {G.label(G.conjugate(s, h))}")
    return YDReport(not violations, violations)


def braiding(module: DiagonalYD | MonomialYD) -> BraidingOperator:
    """Canonical braiding c(v ⊗ w) = (g·w) ⊗ v for v of degree g."""
    m = module.dimension
    if m == 0:
        return BraidingOperator(0, np.zeros(0), np.zeros(0))
    i, j = np.divmod(np.arange(m * m), m)
    if isinstance(module, DiagonalYD):
        q = module.q_signs()
        operator = BraidingOperator(m, j * m + i, q[i, j])
    else:
        perms, phases = module._element_actions
        degrees = np.asarray(module.degrees, dtype=np.int64)
        images = perms[degrees[i], j]
        signs = np.array([_phase_sign(int(p), module.root_order) for p in phases[degrees[i], j]], dtype=np.int8)
        operator = BraidingOperator(m, images * m + i, signs)
    if not operator.satisfies_yang_baxter():
        raise InvariantViolationError("Braiding fails the Yang-Baxter equation")
    return operator


def braiding_matrix(module: DiagonalYD | MonomialYD) -> np.ndarray:
    """Dense complex matrix of the braiding; scalars may be any roots of unity."""
    m = module.dimension
    matrix = np.zeros((m * m, m * m), dtype=np.complex128)
    if m == 0:
        return matrix
    i, j = np.divmod(np.arange(m * m), m)
    if isinstance(module, DiagonalYD):
        q = module.q_matrix()
        phases = np.array([float(q[a][b]) for a, b in zip(i, j)])
        images = j
    else:
        perms, element_phases = module._element_actions
        degrees = np.asarray(module.degrees, dtype=np.int64)
        images = perms[degrees[i], j]
        phases = element_phases[degrees[i], j] / module.root_order
    matrix[images * m + i, np.arange(m * m)] = np.exp(2j * np.pi * phases)
    return matrix


@dataclass(frozen=True, eq=False)
class TwistForm:
    """Alternating F2 form on the generators of Γ, read as a {±1}-valued bicharacter."""

    group: AbelianGroup
    gram: np.ndarray

    def __post_init__(self) -> None:
        gram = np.asarray(self.gram, dtype=np.int64) % 2
        r = self.group.rank
        if gram.shape != (r, r):
            raise MalformedInputError(f"Twist form must be {r}x{r}")
        if not np.array_equal(gram, gram.T) or gram.diagonal().any():
            raise MalformedInputError("Twist form must be alternating")
        odd = [i for i, f in enumerate(self.group.invariant_factors) if f % 2]
        if odd and gram[odd, :].any():
            raise MalformedInputError("Twist form touches an odd-order factor")
        object.__setattr__(self, "gram", gram.astype(np.uint8))

    @classmethod
    def trivial(cls, group: AbelianGroup) -> "TwistForm":
        return cls(group, np.zeros((group.rank, group.rank), dtype=np.uint8))

    @classmethod
    def from_extension(cls, extension: CentralExtension) -> "TwistForm":
        return cls(extension.base, extension.form_gram)

    def value(self, g: Sequence[int], h: Sequence[int]) -> int:
        a = np.asarray(self.group.check(g), dtype=np.int64) % 2
        b = np.asarray(self.group.check(h), dtype=np.int64) % 2
        return -1 if int(a @ self.gram @ b) % 2 else 1


def twist_by_form(module: DiagonalYD, form: TwistForm) -> DiagonalYD:
    """χ_i^σ(ḡ) = ⟨ḡ, ḡ_i⟩ χ_i(ḡ); degrees unchanged."""
    if form.group != module.group:
        raise MalformedInputError("Twist form lives on a different group")
    factors = module.group.invariant_factors
    twisted = []
    for g, chi in zip(module.degrees, module.characters):
        flags = (form.gram.astype(np.int64) @ (np.asarray(g, dtype=np.int64) % 2)) % 2
        exponents = tuple(e + (f // 2 if flag else 0) for e, f, flag in zip(chi.exponents, factors, flags))
        twisted.append(Character(module.group, exponents))
    return DiagonalYD(module.group, module.degrees, tuple(twisted), module.names)


def verify_twisted_symmetry(module: DiagonalYD, perm: Sequence[int], extension: CentralExtension) -> bool:
    """Whether perm preserves degrees, self-braidings and monodromies with q_{p(i)p(j)} = ⟨ḡ_i, ḡ_j⟩ q_ij."""
    m = module.dimension
    if sorted(perm) != list(range(m)):
        raise MalformedInputError("Symmetry is not a permutation of the summands")
    if extension.base != module.group:
        raise MalformedInputError("Extension base differs from the module's group")
    if any(module.degrees[perm[i]] != module.degrees[i] for i in range(m)):
        raise PreconditionError("Permutation does not preserve degrees")
    q = module.q_matrix()
    for i in range(m):
        for j in range(m):
            permuted = q[perm[i]][perm[j]]
            if i == j and permuted != q[i][i]:
                return False
            if (permuted + q[perm[j]][perm[i]]) % 1 != (q[i][j] + q[j][i]) % 1:
                return False
            defect = Fraction(0) if extension.form(module.degrees[i], module.degrees[j]) == 1 else Fraction(1, 2)
            if permuted != (defect + q[i][j]) % 1:
                return False
    return True


def centralizer_character(
    group: FiniteGroup, rep: int, values: Mapping[int, int], root_order: int = 2
) -> dict[int, int]:
    """Extend phases given on generators of C(rep) multiplicatively to all of C(rep)."""
    centralizer = group.centralizer(rep)
    if any(a not in centralizer for a in values):
        raise MalformedInputError("Character values given outside the centralizer")
    chi = {group.identity: 0}
    queue = deque([group.identity])
    while queue:
        x = queue.popleft()
        for a, phase in values.items():
            y = group.mul(x, a)
            value = (chi[x] + phase) % root_order
            if y in chi:
                if chi[y] != value:
                    raise MalformedInputError(f"Character values are not multiplicative at {group.label(y)}")
                continue
            chi[y] = value
            queue.append(y)
    if set(chi) != set(centralizer):
        raise MalformedInputError("Character values do not determine the whole centralizer")
    _check_multiplicative(group, chi, root_order)
    return chi


def _check_multiplicative(group: FiniteGroup, chi: Mapping[int, int], root_order: int) -> None:
    for a in chi:
        for b in chi:
            if (chi[a] + chi[b] - chi[group.mul(a, b)]) % root_order:
                raise MalformedInputError("Centralizer character is not multiplicative")


def simple_conjugacy_module(
    group: FiniteGroup, rep: int, chi: Mapping[int, int], root_order: int = 2, prefix: str = "x"
) -> MonomialYD:
    """The simple module O_[rep]^χ induced from a character of the centralizer.

    Basis vectors are indexed by the class, representative first; the
    transversal takes the lowest-index element of each coset.
    """
    centralizer = group.centralizer(rep)
    if set(chi) != set(centralizer):
        raise MalformedInputError("Character must be given on the whole centralizer")
    _check_multiplicative(group, chi, root_order)
    others = sorted(c for c in group.conjugacy_class(rep) if c != rep)
    members = [rep] + others
    if len(members) * len(centralizer) != group.order:
        raise InvariantViolationError("Class size times centralizer order differs from |G|")
    position = {c: k for k, c in enumerate(members)}
    transversal = [group.identity] + [
        min(t for t in range(group.order) if group.conjugate(t, rep) == c) for c in others
    ]

    gens = group.generating_set
    perms, phases = [], []
    for s in gens:
        perm, phase = [], []
        for k, c in enumerate(members):
            l = position[group.conjugate(s, c)]
            h = group.product((group.inverse(transversal[l]), s, transversal[k]))
            perm.append(l)
            phase.append(chi[h] % root_order)
        perms.append(tuple(perm))
        phases.append(tuple(phase))
    names = tuple(f"{prefix}{k + 1}" for k in range(len(members)))
    module = MonomialYD(group, tuple(members), gens, tuple(perms), tuple(phases), root_order, names)
    logger.info("Simple module built: class_size=%s rep=%s", len(members), group.label(rep))
    return module


def direct_sum(modules: Sequence[MonomialYD]) -> MonomialYD:
    """Concatenate monomial modules over the same group."""
    if not modules:
        raise MalformedInputError("Direct sum of no modules")
    group = modules[0].group
    if any(m.group is not group and not np.array_equal(m.group.table, group.table) for m in modules):
        raise MalformedInputError("Direct sum of modules over different groups")
    root_order = math.lcm(*(m.root_order for m in modules))
    gens = modules[0].generators
    degrees, names = [], []
    perms: list[list[int]] = [[] for _ in gens]
    phases: list[list[int]] = [[] for _ in gens]
    offset = 0
    for module in modules:
        scale = root_order // module.root_order
        for k, g in enumerate(gens):
            perm, phase = module.action(g)
            perms[k].extend(int(p) + offset for p in perm)
            phases[k].extend(int(f) * scale for f in phase)
        degrees.extend(module.degrees)
        names.extend(module.names)
        offset += module.dimension
    return MonomialYD(
        group,
        tuple(degrees),
        gens,
        tuple(tuple(p) for p in perms),
        tuple(tuple(f) for f in phases),
        root_order,
        tuple(names),
    )


def decompose_simples(module: MonomialYD) -> list[MonomialYD]:
    """Split the basis into the orbits of the generator permutations."""
    parent = list(range(module.dimension))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for perm in module.perms:
        for j, k in enumerate(perm):
            ra, rb = find(j), find(k)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    blocks: dict[int, list[int]] = {}
    for j in range(module.dimension):
        blocks.setdefault(find(j), []).append(j)
    return [module.restrict(block) for _, block in sorted(blocks.items())]


def is_faithful(module: MonomialYD) -> bool:
    """Only the identity acts as the identity matrix."""
    if module.dimension == 0:
        return False
    trivial = [g for g in range(module.group.order) if module.acts_trivially(g)]
    return trivial == [module.group.identity]
