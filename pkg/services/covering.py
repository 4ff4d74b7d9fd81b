"""The covering construction.

A diagonal module M over Γ with a twisted symmetry p becomes a monomial
module over the central extension G: inert summands keep their vector, split
pairs {i, p(i)} become x± = y_i ± y_p(i) of degrees s(ḡ_i) and θ*·s(ḡ_i).
G acts through Γ, so the braided vector space is unchanged.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from services.cartan import (
    CartanMatrix,
    HilbertPoly,
    cartan_from_q,
    classify,
    fold,
    hilbert_from_roots,
    positive_roots,
    type_label,
)
from services.exceptions import (
    InvariantViolationError,
    MalformedInputError,
    PreconditionError,
    UnsupportedError,
)
from services.groups import CentralExtension
from services.yd import (
    DiagonalYD,
    MonomialYD,
    braiding_matrix,
    is_faithful,
    verify_twisted_symmetry,
    verify_yd,
)

logger = logging.getLogger(__name__)

INERT = "inert"
SPLIT = "split"


@dataclass(frozen=True, eq=False)
class CoveringResult:
    base: DiagonalYD
    symmetry: tuple[int, ...]
    extension: CentralExtension
    covering: MonomialYD
    basis_change: np.ndarray
    orbits: tuple[tuple[int, ...], ...]
    node_tags: tuple[str, ...]
    cartan: CartanMatrix
    folded_cartan: CartanMatrix
    unfolded_type: str
    folded_type: str
    hilbert: HilbertPoly

    @property
    def dimension(self) -> int:
        return self.hilbert.at_one()

    @property
    def dimension_exponent(self) -> int | None:
        """log2 of the dimension when it is a power of two."""
        d = self.dimension
        return d.bit_length() - 1 if d & (d - 1) == 0 else None

    @property
    def indecomposable(self) -> bool:
        """Degree supports generate G."""
        return self.extension.group.generates(self.covering.degrees)

    @property
    def faithful(self) -> bool:
        return is_faithful(self.covering)


def symmetry_orbits(perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Orbits of an involution ordered by their smallest element."""
    orbits = []
    for i, j in enumerate(perm):
        if perm[j] != i:
            raise MalformedInputError("Symmetry is not an involution")
        if i == j:
            orbits.append((i,))
        elif i < j:
            orbits.append((i, j))
    return tuple(orbits)


def diagonal_hilbert(module: DiagonalYD, cartan: CartanMatrix) -> HilbertPoly:
    """Hilbert polynomial of a Cartan-type diagonal braiding.

    Components with all self-braidings -1 contribute (1 + t^height) per positive
    root; an isolated node of order N contributes [N]_t.
    """
    q = module.q_matrix()
    result = HilbertPoly(())
    for component in classify(cartan):
        orders = [q[i][i].denominator for i in component.nodes]
        if all(order == 2 for order in orders):
            sub = CartanMatrix(cartan.submatrix(component.nodes))
            result = result * hilbert_from_roots(positive_roots(sub))
        elif len(component.nodes) == 1:
            result = result * HilbertPoly.from_counts({(orders[0], 1): 1})
        else:
            raise UnsupportedError(f"Component {component.label} mixes self-braidings other than -1")
    return result


def _root_order(phases: Sequence[Fraction]) -> int:
    return math.lcm(2, *(Fraction(p).denominator for p in phases))


def covering_module(module: DiagonalYD, perm: Sequence[int], extension: CentralExtension) -> CoveringResult:
    """Build the covering YD module over G of a diagonal module with a twisted symmetry.

    Args:
        module: Diagonal module over the base Γ of the extension.
        perm: Involution on the summands.
        extension: Central extension G of Γ by {±1}.

    Returns:
        The covering with basis change, node tags, folded Cartan matrix and
        Hilbert polynomial.

    Raises:
        PreconditionError: If perm is not a twisted symmetry.
        UnsupportedError: If two summands are isomorphic.
        InvariantViolationError: If the result fails the YD condition, the
            braidings differ or the node tags disagree with centrality.
    """
    perm = tuple(int(p) for p in perm)
    orbits = symmetry_orbits(perm)
    if not verify_twisted_symmetry(module, perm, extension):
        raise PreconditionError("Permutation is not a twisted symmetry for this extension")
    keys = [(g, chi.exponents) for g, chi in zip(module.degrees, module.characters)]
    if len(set(keys)) != len(keys):
        raise UnsupportedError("Simple summands must be mutually non-isomorphic")

    G = extension.group
    m = module.dimension
    # x-basis: one vector per orbit (y_i or y_i + y_p(i)), then the differences
    plus = list(orbits)
    minus = [orbit for orbit in orbits if len(orbit) == 2]
    basis_change = np.zeros((m, m), dtype=np.int64)
    degrees, names, tags = [], [], []
    for k, orbit in enumerate(plus):
        basis_change[list(orbit), k] = 1
        degrees.append(extension.section(module.degrees[orbit[0]]))
        names.append(f"x{k + 1}")
        tags.append(INERT if len(orbit) == 1 else SPLIT)
    for k, (i, j) in enumerate(minus, start=len(plus)):
        basis_change[i, k], basis_change[j, k] = 1, -1
        degrees.append(G.mul(extension.theta_star, extension.section(module.degrees[i])))
        names.append(f"x{k + 1}")
    minus_index = {orbit: len(plus) + n for n, orbit in enumerate(minus)}

    generators = G.generating_set
    images = [extension.projection(g) for g in generators]
    root_order = _root_order([chi.phase(h) for chi in module.characters for h in images])
    perms, phases = [], []
    for h in images:
        perm_g = list(range(m))
        phase_g = [0] * m
        for k, orbit in enumerate(plus):
            c_i = module.characters[orbit[0]].phase(h)
            phase = int(c_i * root_order)
            if len(orbit) == 1:
                phase_g[k] = phase
                continue
            b = minus_index[orbit]
            diff = (module.characters[orbit[1]].phase(h) - c_i) % 1
            if diff == 0:
                phase_g[k] = phase_g[b] = phase
            elif diff == Fraction(1, 2):
                perm_g[k], perm_g[b] = b, k
                phase_g[k] = phase_g[b] = phase
            else:
                raise InvariantViolationError(f"Orbit {orbit} is not mapped to itself by {h}")
        perms.append(tuple(perm_g))
        phases.append(tuple(phase_g))
    covering = MonomialYD(G, tuple(degrees), generators, tuple(perms), tuple(phases), root_order, tuple(names))

    report = verify_yd(covering)
    if not report:
        raise InvariantViolationError(f"Covering fails the YD condition: {report.violations[:3]}")
    kron = np.kron(basis_change, basis_change)
    if not np.allclose(kron @ braiding_matrix(covering), braiding_matrix(module) @ kron):
        raise InvariantViolationError("Covering braiding differs from the base braiding")
    for orbit, tag in zip(orbits, tags):
        central = extension.section(module.degrees[orbit[0]]) in G.center
        if central != (tag == INERT):
            raise InvariantViolationError(f"Node {orbit} is {tag} but its degree centrality is {central}")

    cartan = cartan_from_q(module.q_matrix())
    folded = fold(cartan, orbits)
    result = CoveringResult(
        base=module,
        symmetry=perm,
        extension=extension,
        covering=covering,
        basis_change=basis_change,
        orbits=orbits,
        node_tags=tuple(tags),
        cartan=cartan,
        folded_cartan=folded,
        unfolded_type=type_label(cartan),
        folded_type=type_label(folded),
        hilbert=diagonal_hilbert(module, cartan),
    )
    logger.info(
        "Covering built: group=%s unfolded=%s folded=%s dim=%s",
        extension.name,
        result.unfolded_type,
        result.folded_type,
        result.dimension,
    )
    return result
