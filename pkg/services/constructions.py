"""Covering constructions from symplectic root systems.

Every construction lays blocks out over a symplectic basis of the
commutator form on the 2-part of Γ (pairs first, then nulls). A block's
characters are trivial on the basis vectors of all other blocks, so blocks
have trivial cross-monodromy.
"""

import itertools
import logging
import re
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from services import dynkin
from services.cartan import cartan_from_q, classify
from services.covering import CoveringResult, covering_module
from services.exceptions import (
    InternalConsistencyError,
    InvariantViolationError,
    MalformedInputError,
    NoSymplecticRootSystemError,
    PreconditionError,
    UnsupportedError,
)
from services.groups import (
    AbelianGroup,
    CentralExtension,
    Character,
    Element,
    commutator_data,
    lift_basis_to_generators,
)
from services.symplectic import SympSpace, gf2_rank, gf2_solve, minimal_root_system, symplectic_basis
from services.yd import DiagonalYD, TwistForm, twist_by_form

logger = logging.getLogger(__name__)

# E6 with the branch end and branch point inert, the arms split
F4_EDGES = ((0, 1), (1, 2), (1, 4), (2, 3), (4, 5))
F4_SYMMETRY = (0, 1, 4, 5, 2, 3)
F4_SEED = (0, 1, 1, 1)


@dataclass
class _Frame:
    """Basis indices owned by one block: hyperbolic pairs, then nulls."""

    pairs: list[int] = field(default_factory=list)
    nulls: list[int] = field(default_factory=list)

    @property
    def indices(self) -> list[int]:
        return self.pairs + self.nulls


@dataclass
class _Block:
    degrees: list[Element]
    characters: list[Character]
    perm: list[int]


class _Layout:
    """Symplectic basis of the 2-part of Γ, handed out to blocks in order."""

    def __init__(self, extension: CentralExtension):
        self.extension = extension
        base = extension.base
        factors = base.invariant_factors
        if any(f % 2 == 0 and f != 2 for f in factors):
            raise UnsupportedError("The 2-part of the base group must be elementary abelian")
        self.two = [i for i, f in enumerate(factors) if f == 2]
        self.odd = [i for i, f in enumerate(factors) if f % 2]
        gram = extension.form_gram[np.ix_(self.two, self.two)]
        pairs, nulls = symplectic_basis(SympSpace(gram))
        self.basis = [v for pair in pairs for v in pair] + nulls
        self.free_pairs = list(range(0, 2 * len(pairs), 2))
        self.free_nulls = list(range(2 * len(pairs), len(self.basis)))
        self.form = TwistForm.from_extension(extension)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def take(self, pairs: int, nulls: int) -> _Frame:
        if pairs > len(self.free_pairs) or nulls > len(self.free_nulls):
            raise PreconditionError("Blocks need more symplectic pairs or null vectors than Γ has")
        frame = _Frame()
        for _ in range(pairs):
            p = self.free_pairs.pop(0)
            frame.pairs.extend([p, p + 1])
        for _ in range(nulls):
            frame.nulls.append(self.free_nulls.pop(0))
        return frame

    def vector(self, index: int) -> np.ndarray:
        return self.basis[index]

    def combine(self, coefficients: Sequence[int], frame_indices: Sequence[int]) -> np.ndarray:
        total = np.zeros(len(self.two), dtype=np.uint8)
        for c, k in zip(coefficients, frame_indices):
            if c % 2:
                total ^= self.basis[k]
        return total

    def two_part(self, g: Element) -> np.ndarray:
        return np.array([g[i] for i in self.two], dtype=np.uint8)

    def element(self, two_part: np.ndarray, odd_part: Sequence[int] = ()) -> Element:
        g = [0] * self.extension.base.rank
        for i, x in zip(self.two, two_part):
            g[i] = int(x)
        for i, x in zip(self.odd, odd_part):
            g[i] = int(x)
        return tuple(g)

    def character(self, constraints: Sequence[tuple[np.ndarray, int]], frame: _Frame) -> Character:
        """Character with χ(v) = (-1)^bit on each constraint, trivial off the frame and on the odd part."""
        outside = [k for k in range(self.rank) if k not in frame.indices]
        rows = [np.asarray(v, dtype=np.uint8) for v, _ in constraints] + [self.basis[k] for k in outside]
        rhs = [bit for _, bit in constraints] + [0] * len(outside)
        solution = gf2_solve(np.array(rows, dtype=np.uint8).reshape(len(rows), len(self.two)), np.array(rhs))
        if solution is None:
            raise InternalConsistencyError("Character constraints are inconsistent")
        exponents = [0] * self.extension.base.rank
        for i, bit in zip(self.two, solution):
            exponents[i] = int(bit)
        return Character(self.extension.base, tuple(exponents))


def _twisted(layout: _Layout, degrees: list[Element], characters: list[Character]) -> list[Character]:
    seed = DiagonalYD(layout.extension.base, tuple(degrees), tuple(characters))
    return list(twist_by_form(seed, layout.form).characters)


def _unramified_block(layout: _Layout, diagram: str, frame: _Frame) -> _Block:
    decoration = minimal_root_system(diagram)
    nulls = decoration.space.nullity
    pairs = (decoration.space.dimension - nulls) // 2
    if len(frame.pairs) != 2 * pairs or len(frame.nulls) != nulls:
        raise NoSymplecticRootSystemError(f"{diagram} needs {pairs} symplectic pairs and {nulls} nulls")
    n = decoration.nodes
    adjacency = decoration.adjacency
    vectors = [layout.combine(phi, frame.indices) for phi in decoration.vectors]
    characters = [
        layout.character(
            [(vectors[j], int(i == j or (i < j and adjacency[i, j] == 1))) for j in range(n)],
            frame,
        )
        for i in range(n)
    ]
    degrees = [layout.element(v) for v in vectors]
    twisted = _twisted(layout, degrees, characters)
    return _Block(degrees + degrees, characters + twisted, [i + n for i in range(n)] + list(range(n)))


def _cn_block(layout: _Layout, n: int, frame: _Frame) -> _Block:
    if n < 3:
        raise MalformedInputError("The ramified construction needs n >= 3")
    # the A_{n-1} seed lives on W = frame minus z, so its characters are trivial on z
    seed = _unramified_block(layout, f"A{n - 1}", _Frame(frame.pairs, frame.nulls[1:]))
    z = layout.vector(frame.nulls[0])
    seed_vectors = [layout.two_part(g) for g in seed.degrees[: n - 1]]
    inert = layout.character(
        [(z, 1), (seed_vectors[0], 1)] + [(v, 0) for v in seed_vectors[1:]],
        frame,
    )
    perm = [0] + [p + 1 for p in seed.perm]
    return _Block([layout.element(z)] + seed.degrees, [inert] + seed.characters, perm)


def _f4_block(layout: _Layout, frame: _Frame) -> _Block:
    if len(frame.pairs) != 2 or len(frame.nulls) != 2:
        raise NoSymplecticRootSystemError("F4 needs one symplectic pair and two nulls")
    # frame coordinates (z, z', x, y); node degrees as coordinate indices
    order = [frame.nulls[0], frame.nulls[1], frame.pairs[0], frame.pairs[1]]
    node_coord = [0, 1, 2, 3, 2, 3]
    pairing = np.zeros((4, 4), dtype=np.uint8)
    pairing[2, 3] = pairing[3, 2] = 1
    edges = {frozenset(e) for e in F4_EDGES}

    def twist(values: tuple[int, ...], coord: int) -> tuple[int, ...]:
        return tuple(v ^ int(pairing[k, coord]) for k, v in enumerate(values))

    for bits in itertools.product((0, 1), repeat=12):
        chi1, chi2, chi4 = bits[0:4], bits[4:8], bits[8:12]
        chars = [chi1, chi2, F4_SEED, chi4, twist(F4_SEED, 2), twist(chi4, 3)]
        q = [[chars[b][node_coord[a]] for b in range(6)] for a in range(6)]
        if all(q[a][a] == 1 for a in range(6)) and all(
            (q[a][b] ^ q[b][a]) == (frozenset((a, b)) in edges) for a in range(6) for b in range(a + 1, 6)
        ):
            break
    else:
        raise InternalConsistencyError("No E6 character table over this frame")

    vectors = [layout.vector(k) for k in order]
    characters = [
        layout.character([(vectors[k], values[k]) for k in range(4)], frame) for values in chars
    ]
    degrees = [layout.element(vectors[c]) for c in node_coord]
    return _Block(degrees, characters, list(F4_SYMMETRY))


def _inert_nodes_block(layout: _Layout, frame: _Frame, module: DiagonalYD | None) -> _Block:
    k0 = len(frame.nulls)
    vectors = [layout.vector(k) for k in frame.nulls]
    if module is None:
        characters = [layout.character([(v, int(i == j)) for j, v in enumerate(vectors)], frame) for i, v in enumerate(vectors)]
        return _Block([layout.element(v) for v in vectors], characters, list(range(k0)))
    if module.group != AbelianGroup.elementary(k0):
        raise MalformedInputError(f"Inert module must live on Z2^{k0}")
    classify(cartan_from_q(module.q_matrix()))
    degrees, characters = [], []
    for g, chi in zip(module.degrees, module.characters):
        degrees.append(layout.element(layout.combine(g, frame.nulls)))
        values = [(v, int(chi.sign(module.group.generator(j)) == -1)) for j, v in enumerate(vectors)]
        characters.append(layout.character(values, frame))
    return _Block(degrees, characters, list(range(module.dimension)))


def _abelian_block(layout: _Layout, module: DiagonalYD) -> _Block:
    factors = tuple(layout.extension.base.invariant_factors[i] for i in layout.odd)
    if module.group.invariant_factors != factors:
        raise MalformedInputError(f"Abelian module must live on the odd part {factors}")
    zero = np.zeros(len(layout.two), dtype=np.uint8)
    degrees, characters = [], []
    for g, chi in zip(module.degrees, module.characters):
        degrees.append(layout.element(zero, g))
        exponents = [0] * layout.extension.base.rank
        for i, e in zip(layout.odd, chi.exponents):
            exponents[i] = e
        characters.append(Character(layout.extension.base, tuple(exponents)))
    return _Block(degrees, characters, list(range(module.dimension)))


def block_invariants(label: str) -> tuple[int, int]:
    """(2-rank, 2-center) a connected block of this type needs."""
    kind, n = dynkin.parse_label(label)
    if kind == "A":
        return n, n % 2
    if kind == "D":
        return n, 2 - n % 2
    if kind == "E":
        return n, n % 2
    if kind == "C" and n >= 3:
        return n, 1 + (n - 1) % 2
    if kind == "F":
        return 4, 2
    raise UnsupportedError(f"No covering construction produces type {label}")


def admissible_block(n: int, k: int) -> str:
    """First connected type realizable with 2-rank n and 2-center k."""
    if n >= 1 and k == n % 2:
        return f"A{n}"
    if n >= 4 and k == 2 - n % 2:
        return f"D{n}"
    if (n, k) in {(6, 0), (7, 1), (8, 0)}:
        return f"E{n}"
    if n >= 3 and k == 1 + (n - 1) % 2:
        return f"C{n}"
    if (n, k) == (4, 2):
        return "F4"
    raise PreconditionError(f"No connected construction with 2-rank {n} and 2-center {k}")


def parse_plan(plan: str) -> tuple[list[str], int]:
    """Parse "A4+D5+3,1+0,2" into block labels and the inert remainder."""
    labels, remainder = [], 0
    for token in (t.strip() for t in plan.split("+") if t.strip()):
        pair = re.fullmatch(r"(\d+),(\d+)", token)
        if pair:
            n, k = int(pair.group(1)), int(pair.group(2))
            if n == 0:
                remainder += k
            else:
                labels.append(admissible_block(n, k))
            continue
        kind, n = dynkin.parse_label(token)
        labels.append(dynkin.label(kind, n))
    return labels, remainder


def _build(layout: _Layout, label: str) -> _Block:
    kind, n = dynkin.parse_label(label)
    rank, nulls = block_invariants(label)
    frame = layout.take((rank - nulls) // 2, nulls)
    if kind in {"A", "D", "E"}:
        return _unramified_block(layout, label, frame)
    if kind == "C":
        return _cn_block(layout, n, frame)
    return _f4_block(layout, frame)


def _assemble(layout: _Layout, blocks: Sequence[_Block]) -> tuple[DiagonalYD, list[int]]:
    degrees, characters, perm = [], [], []
    for block in blocks:
        offset = len(degrees)
        degrees.extend(block.degrees)
        characters.extend(block.characters)
        perm.extend(p + offset for p in block.perm)
    module = DiagonalYD(layout.extension.base, tuple(degrees), tuple(characters))
    _check_mixed_monodromy(module, perm)
    return module, perm


def _check_mixed_monodromy(module: DiagonalYD, perm: Sequence[int]) -> None:
    """Every seed node and every twisted node have trivial monodromy."""
    q = module.q_matrix()
    seeds = [i for i, p in enumerate(perm) if i < p]
    twists = [j for j, p in enumerate(perm) if j > p]
    for i in seeds:
        for j in twists:
            if (q[i][j] + q[j][i]) % 1 != 0:
                raise InvariantViolationError(f"Mixed monodromy between y{i + 1} and y{j + 1} does not cancel")


def _lift_degrees(extension: CentralExtension, module: DiagonalYD) -> DiagonalYD:
    """Move node degrees within their cosets of Γ² so their sections generate G.

    Only odd-order coordinates change, and every character is trivial on
    them, so the q-matrix is unchanged.
    """
    group = extension.group
    sections = [extension.section(g) for g in module.degrees]
    if group.generates(sections):
        return module
    data = commutator_data(group)
    basis: list[int] = []
    rows: list[np.ndarray] = []
    for i, s in enumerate(sections):
        candidate = rows + [data.coordinates(s)]
        if gf2_rank(np.array(candidate, dtype=np.uint8)) == len(candidate):
            rows, basis = candidate, basis + [i]
    if len(basis) != data.dimension:
        raise PreconditionError("Node degrees do not span G/G²")
    lift = lift_basis_to_generators(group, [sections[i] for i in basis], data)
    moved = {module.degrees[i]: extension.projection(g) for i, g in zip(basis, lift)}
    logger.info("Degrees lifted to generators: %s", [group.label(g) for g in lift])
    degrees = tuple(moved.get(g, g) for g in module.degrees)
    return DiagonalYD(module.group, degrees, module.characters, module.names)


def _cover(layout: _Layout, blocks: Sequence[_Block]) -> CoveringResult:
    """Assemble, lift to generating degrees and build the covering of a stem extension."""
    module, perm = _assemble(layout, blocks)
    module = _lift_degrees(layout.extension, module)
    result = covering_module(module, perm, layout.extension)
    if not result.indecomposable:
        raise InvariantViolationError("Degree supports of a stem extension do not generate the group")
    return result


def _check_group(extension: CentralExtension, rank: int, nulls: int, label: str) -> None:
    if not extension.stem:
        raise PreconditionError("The extension is not stem")
    data = commutator_data(extension.group, require_z2=True)
    if data.dimension != rank or data.nullity != nulls:
        raise NoSymplecticRootSystemError(
            f"{label} needs 2-rank {rank} and 2-center {nulls}; "
            f"the group has {data.dimension} and {data.nullity}"
        )


def construct_unramified(extension: CentralExtension, diagram: str) -> CoveringResult:
    """M = N ⊕ N_σ over the minimal root system of an ADE diagram; all nodes split."""
    kind, _ = dynkin.parse_label(diagram)
    if kind not in {"A", "D", "E"}:
        raise UnsupportedError(f"{diagram} is not simply laced")
    rank, nulls = block_invariants(diagram)
    _check_group(extension, rank, nulls, diagram)
    layout = _Layout(extension)
    return _cover(layout, [_build(layout, diagram)])


def construct_ramified_cn(extension: CentralExtension, n: int) -> CoveringResult:
    """A_{2n-1} with one inert node folded to C_n."""
    label = f"C{n}"
    if n < 3:
        raise MalformedInputError("The ramified construction needs n >= 3")
    rank, nulls = block_invariants(label)
    _check_group(extension, rank, nulls, label)
    layout = _Layout(extension)
    return _cover(layout, [_build(layout, label)])


def construct_ramified_f4(extension: CentralExtension) -> CoveringResult:
    """E6 with the branch inert, folded to F4."""
    _check_group(extension, 4, 2, "F4")
    layout = _Layout(extension)
    return _cover(layout, [_build(layout, "F4")])


def construct_disconnected(
    extension: CentralExtension,
    decomposition: Sequence[str | tuple[int, int]],
    remainder: int = 0,
    inert_module: DiagonalYD | None = None,
) -> CoveringResult:
    """Orthogonal sum of connected blocks plus an inert remainder.

    Args:
        extension: Stem extension whose (2-rank, 2-center) the blocks add up to.
        decomposition: Block labels or (n, k) pairs resolved by admissible_block.
        remainder: Number k0 of null vectors carrying inert nodes.
        inert_module: Diagonal module over Z2^k0 placed on the remainder;
            defaults to k0 disjoint A1 nodes.
    """
    labels = [admissible_block(*b) if isinstance(b, tuple) else b for b in decomposition]
    rank = sum(block_invariants(label)[0] for label in labels) + remainder
    nulls = sum(block_invariants(label)[1] for label in labels) + remainder
    _check_group(extension, rank, nulls, "+".join(labels + ([f"0,{remainder}"] if remainder else [])))
    layout = _Layout(extension)
    blocks = [_build(layout, label) for label in labels]
    if remainder:
        blocks.append(_inert_nodes_block(layout, layout.take(0, remainder), inert_module))
    return _cover(layout, blocks)


def construct_with_abelian_factor(
    extension: CentralExtension, plan: str | Sequence[str], abelian_module: DiagonalYD
) -> CoveringResult:
    """Saturated blocks on the 2-part plus a diagonal module on the odd-order factors."""
    labels, remainder = parse_plan(plan) if isinstance(plan, str) else (list(plan), 0)
    if not extension.stem:
        raise PreconditionError("The extension is not stem")
    layout = _Layout(extension)
    if not layout.odd:
        raise PreconditionError("The base group has no odd-order factor")
    blocks = [_build(layout, label) for label in labels]
    if remainder:
        blocks.append(_inert_nodes_block(layout, layout.take(0, remainder), None))
    if layout.free_pairs or layout.free_nulls:
        raise PreconditionError("Plan does not use the whole 2-part of the base group")
    blocks.append(_abelian_block(layout, abelian_module))
    module, perm = _assemble(layout, blocks)
    result = covering_module(module, perm, extension)
    if not result.indecomposable:
        raise InvariantViolationError("Degree supports do not generate the group")
    return result


def construct(extension: CentralExtension, kind: str) -> CoveringResult:
    """Dispatch "unramified:A4", "cn:3", "f4" or "disconnected:A2+0,1"."""
    head, _, arg = kind.partition(":")
    head = head.strip().lower()
    if head == "unramified" and arg:
        return construct_unramified(extension, arg)
    if head == "cn" and arg.isdigit():
        return construct_ramified_cn(extension, int(arg))
    if head == "f4" and not arg:
        return construct_ramified_f4(extension)
    if head == "disconnected" and arg:
        labels, remainder = parse_plan(arg)
        return construct_disconnected(extension, labels, remainder)
    raise MalformedInputError(f"Unknown construction type: {kind!r}")
