"""Worked examples, Schur multiplier orders and the rank/center summary table.

Examples are built from character constraints on simple modules O_[r]^χ over
the preset groups. Letters in element words: g, h with gh = εhg, g² = ε; e is
ε = θ*; z and w are central generators. Values left free by the constraints
are enumerated lexicographically with +1 first.
"""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache

from services import dynkin
from services.cartan import CartanMatrix, HilbertPoly, hilbert_from_roots, positive_roots
from services.constructions import block_invariants, construct
from services.covering import CoveringResult
from services.exceptions import (
    InconsistentCohomologyError,
    InternalConsistencyError,
    MalformedInputError,
    UnsupportedError,
)
from services.groups import CentralExtension, FiniteGroup
from services.presets import preset_extension
from services.yd import MonomialYD, centralizer_character, direct_sum, is_faithful, simple_conjugacy_module

logger = logging.getLogger(__name__)

# base coordinates of each letter per preset; e is always θ*
LETTERS: dict[str, dict[str, tuple[int, ...]]] = {
    "D4": {"h": (1, 0), "g": (1, 1)},
    "D4xZ2": {"h": (1, 0, 0), "g": (1, 1, 0), "z": (0, 0, 1)},
    "D4xZ2^2": {"h": (1, 0, 0, 0), "g": (1, 1, 0, 0), "z": (0, 0, 1, 0), "w": (0, 0, 0, 1)},
    "Z2sqxD4": {"z": (1, 0, 0, 0), "w": (0, 1, 0, 0), "h": (0, 0, 1, 0), "g": (0, 0, 1, 1)},
}

Constraint = tuple[tuple[tuple[int, str], ...], int]


@dataclass(frozen=True)
class ExampleSpec:
    id: str
    preset: str
    construction: str
    folded_type: str
    finer_type: str
    dimension_exponent: int
    check_degree: int
    reps: tuple[str, ...] = ()
    constraints: tuple[Constraint, ...] = ()
    twisted: bool = False
    diagonal_only: bool = False


def _eps(values: tuple[int, ...]) -> tuple[Constraint, ...]:
    return tuple((((i, "e"),), v) for i, v in enumerate(values))


def _fixed(*pairs: tuple[int, str]) -> tuple[Constraint, ...]:
    return tuple((((i, word),), -1) for i, word in pairs)


_A3 = _fixed((0, "h"), (1, "gh"), (2, "zh")) + ((((0, "zh"), (2, "h")), 1),)
_C3 = _fixed((0, "h"), (1, "gh"), (2, "z")) + ((((0, "z"), (2, "h")), 1), (((1, "z"), (2, "gh")), -1))
_D4 = _fixed((0, "h"), (1, "gh"), (2, "zh"), (3, "wh")) + (
    (((0, "zh"), (2, "h")), 1),
    (((0, "wh"), (3, "h")), 1),
    (((2, "wh"), (3, "zh")), 1),
)
_C4 = _fixed((0, "h"), (1, "gh"), (2, "zh"), (3, "w")) + (
    (((0, "zh"), (2, "h")), 1),
    (((0, "w"), (3, "h")), 1),
    (((1, "w"), (3, "gh")), 1),
    (((2, "w"), (3, "zh")), -1),
)
_F4 = _fixed((0, "h"), (1, "gh"), (2, "z"), (3, "w")) + (
    (((0, "z"), (2, "h")), 1),
    (((0, "w"), (3, "h")), 1),
    (((1, "w"), (3, "gh")), 1),
    (((1, "z"), (2, "gh")), -1),
    (((2, "w"), (3, "z")), -1),
)

EXAMPLES: dict[str, ExampleSpec] = {
    spec.id: spec
    for spec in (
        ExampleSpec("A2-D4-diag", "D4", "unramified:A2", "A2", "A2xA2", 6, 4, ("h", "gh"),
                    _fixed((0, "h"), (1, "gh")) + _eps((1, 1))),
        ExampleSpec("A2-D4-twist", "D4", "unramified:A2", "A2", "A2xA2", 6, 4, ("h", "gh"),
                    _fixed((0, "h"), (1, "gh")) + _eps((-1, -1)), twisted=True),
        ExampleSpec("A3-D4xZ2-diag", "D4xZ2", "unramified:A3", "A3", "A3xA3", 12, 3, ("h", "gh", "zh"),
                    _A3 + _eps((1, 1, 1))),
        ExampleSpec("A3-D4xZ2-twist", "D4xZ2", "unramified:A3", "A3", "A3xA3", 12, 3, ("h", "gh", "zh"),
                    _A3 + _eps((-1, -1, -1)), twisted=True),
        ExampleSpec("C3-D4xZ2-diag", "D4xZ2", "cn:3", "C3", "A5", 15, 3, ("h", "gh", "z"),
                    _C3 + _eps((1, 1, 1))),
        ExampleSpec("C3-D4xZ2-twist", "D4xZ2", "cn:3", "C3", "A5", 15, 3, ("h", "gh", "z"),
                    _C3 + _eps((-1, -1, 1)), twisted=True),
        ExampleSpec("A4-D4cD4", "D4cD4", "unramified:A4", "A4", "A4xA4", 20, 3, diagonal_only=True),
        ExampleSpec("D4-D4xZ2sq-diag", "D4xZ2^2", "unramified:D4", "D4", "D4xD4", 24, 3, ("h", "gh", "zh", "wh"),
                    _D4 + _eps((1, 1, 1, 1))),
        ExampleSpec("D4-D4xZ2sq-twist", "D4xZ2^2", "unramified:D4", "D4", "D4xD4", 24, 3, ("h", "gh", "zh", "wh"),
                    _D4 + _eps((-1, -1, -1, -1)), twisted=True),
        ExampleSpec("C4-D4xZ2sq-diag", "D4xZ2^2", "cn:4", "C4", "A7", 28, 3, ("h", "gh", "zh", "w"),
                    _C4 + _eps((1, 1, 1, 1))),
        ExampleSpec("C4-D4xZ2sq-twist", "D4xZ2^2", "cn:4", "C4", "A7", 28, 3, ("h", "gh", "zh", "w"),
                    _C4 + _eps((-1, -1, -1, 1)), twisted=True),
        ExampleSpec("F4-Z2sqxD4-diag", "Z2sqxD4", "f4", "F4", "E6", 36, 3, ("h", "gh", "z", "w"),
                    _F4 + _eps((1, 1, 1, 1))),
        ExampleSpec("F4-Z2sqxD4-twist", "Z2sqxD4", "f4", "F4", "E6", 36, 3, ("h", "gh", "z", "w"),
                    _F4 + _eps((-1, -1, 1, 1)), twisted=True),
    )
}


@dataclass(frozen=True, eq=False)
class ExampleBundle:
    spec: ExampleSpec
    extension: CentralExtension
    summands: tuple[MonomialYD, ...]
    module: MonomialYD
    covering: CoveringResult
    expected: HilbertPoly
    character_values: tuple[dict[str, int], ...] = field(default=())

    @property
    def faithful(self) -> bool:
        return is_faithful(self.module)


def hilbert_of_type(label: str) -> HilbertPoly:
    """∏ (1 + t^height) over the positive roots of a product type like "A2xA2"."""
    result = HilbertPoly(())
    for component in label.split("x"):
        cartan = CartanMatrix(dynkin.cartan_matrix(component))
        result = result * hilbert_from_roots(positive_roots(cartan))
    return result


def evaluate_word(extension: CentralExtension, letters: dict[str, tuple[int, ...]], word: str) -> int:
    group = extension.group
    elements = []
    for letter in word:
        if letter == "e":
            elements.append(extension.theta_star)
        elif letter in letters:
            elements.append(extension.section(letters[letter]))
        else:
            raise MalformedInputError(f"Unknown letter {letter!r} in word {word!r}")
    return group.product(elements)


def _centralizer_characters(group: FiniteGroup, rep: int) -> list[dict[int, int]]:
    """All ±1 characters of C(rep), lexicographic in the values on a greedy generating set."""
    centralizer = sorted(group.centralizer(rep))
    gens: list[int] = []
    span = frozenset({group.identity})
    for x in centralizer:
        if x not in span:
            gens.append(x)
            span = group.closure(gens)
    result = []
    for bits in itertools.product((0, 1), repeat=len(gens)):
        try:
            result.append(centralizer_character(group, rep, dict(zip(gens, bits))))
        except MalformedInputError:
            continue
    return result


def _satisfies(chars: Sequence[dict[int, int]], constraints: Sequence[tuple[tuple[tuple[int, int], ...], int]]) -> bool:
    for terms, sign in constraints:
        phase = sum(chars[i][element] for i, element in terms) % 2
        if (1 if phase == 0 else -1) != sign:
            return False
    return True


def build_example_modules(spec: ExampleSpec, extension: CentralExtension) -> tuple[list[MonomialYD], list[dict[int, int]]]:
    group = extension.group
    letters = LETTERS[spec.preset]
    reps = [evaluate_word(extension, letters, word) for word in spec.reps]
    constraints = []
    for terms, sign in spec.constraints:
        resolved = []
        for i, word in terms:
            element = evaluate_word(extension, letters, word)
            if element not in group.centralizer(reps[i]):
                raise MalformedInputError(f"{word} is not in the centralizer of {spec.reps[i]}")
            resolved.append((i, element))
        constraints.append((tuple(resolved), sign))
    candidates = [_centralizer_characters(group, rep) for rep in reps]
    for chars in itertools.product(*candidates):
        if _satisfies(chars, constraints):
            break
    else:
        raise InternalConsistencyError(f"Constraints of {spec.id} have no solution")
    modules = [
        simple_conjugacy_module(group, rep, chi, prefix=f"x{k + 1}_") for k, (rep, chi) in enumerate(zip(reps, chars))
    ]
    return modules, list(chars)


@cache
def worked_example(example_id: str) -> ExampleBundle:
    """Build a registered example with its covering and expected series."""
    if example_id not in EXAMPLES:
        raise MalformedInputError(f"Unknown example id: {example_id!r}")
    spec = EXAMPLES[example_id]
    extension = preset_extension(spec.preset)
    covering = construct(extension, spec.construction)
    if spec.reps:
        summands, chars = build_example_modules(spec, extension)
        module = direct_sum(summands)
        letters = LETTERS[spec.preset]
        values = tuple(
            {
                word: -1 if chi[evaluate_word(extension, letters, word)] else 1
                for word in sorted({w for terms, _ in spec.constraints for i, w in terms if i == k})
            }
            for k, chi in enumerate(chars)
        )
    else:
        module = covering.covering
        summands = ()
        values = ()
    bundle = ExampleBundle(
        spec=spec,
        extension=extension,
        summands=tuple(summands),
        module=module,
        covering=covering,
        expected=hilbert_of_type(spec.finer_type),
        character_values=values,
    )
    logger.info("Example built: id=%s dim=%s faithful=%s", example_id, module.dimension, bundle.faithful)
    return bundle


H2_REGISTRY: dict[str, int] = {"D4": 2, "Q8": 1, "D4xZ2": 8, "D4xZ2^2": 64}


def schur_multiplier_order(name: str) -> int:
    """|H²(G, k^×)| for a registered group or Z2^n."""
    if name in H2_REGISTRY:
        return H2_REGISTRY[name]
    if name.startswith("Z2^") and name[3:].isdigit():
        n = int(name[3:])
        return 2 ** (n * (n - 1) // 2)
    raise MalformedInputError(f"No Schur multiplier order registered for {name!r}")


def matsumoto_count(h2_group: int, h2_base: int, p: int) -> int:
    """|Im γ| = |H²(G)| · |H²(Γ)|⁻¹ · p; twists act nondiagonally iff it exceeds 1."""
    if min(h2_group, h2_base, p) < 1:
        raise MalformedInputError("Cohomology orders must be positive")
    count = Fraction(h2_group, h2_base) * p
    if count.denominator != 1:
        raise InconsistentCohomologyError(f"|H²(G)|·|H²(Γ)|⁻¹·p = {count} is not an integer")
    return int(count)


def nondiagonal_twist_exists(group_name: str, base_name: str | None = None) -> bool:
    if base_name is None:
        extension = preset_extension(group_name)
        base_name = f"Z2^{extension.base.rank}"
    return matsumoto_count(schur_multiplier_order(group_name), schur_multiplier_order(base_name), 2) > 1


@dataclass(frozen=True)
class TableRow:
    family: str
    rank: str
    center: str
    covering: str
    dimension_exponent: str
    finer_type: str


def summary_table() -> list[TableRow]:
    """Connected covering types by (2-rank, 2-center)."""
    return [
        TableRow("A_n", "n", "n mod 2", "A_n x A_n -> A_n", "n(n+1)", "A_n x A_n"),
        TableRow("E_6,7,8", "6,7,8", "0,1,0", "E_n x E_n -> E_n", "72,126,240", "E_n x E_n"),
        TableRow("D_n", "n", "2 - n mod 2", "D_n x D_n -> D_n", "2n(n-1)", "D_n x D_n"),
        TableRow("F_4", "4", "2", "E_6 -> F_4", "36", "E_6"),
        TableRow("C_n", "n", "1 + (n-1) mod 2", "A_2n-1 -> C_n", "n(2n-1)", "A_2n-1"),
    ]


def dimension_exponent(label: str) -> int:
    """log2 of the Nichols algebra dimension of the connected covering of this type."""
    kind, n = dynkin.parse_label(label)
    if kind == "C":
        return dynkin.positive_root_count(f"A{2 * n - 1}")
    if kind == "F":
        return dynkin.positive_root_count("E6")
    return 2 * dynkin.positive_root_count(label)


def table_row_for(rank: int, center: int) -> list[tuple[str, int]]:
    """Connected types realizable with the given 2-rank and 2-center, with dimension exponents."""
    labels = [f"A{rank}", f"D{rank}", f"E{rank}", f"C{rank}", "F4"]
    result = []
    for label in dict.fromkeys(labels):
        try:
            if block_invariants(label) == (rank, center):
                result.append((label, dimension_exponent(label)))
        except (MalformedInputError, UnsupportedError):
            continue
    return result
