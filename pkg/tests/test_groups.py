import itertools
from fractions import Fraction

import numpy as np
import pytest

from services.exceptions import (
    InvalidCocycleError,
    MalformedInputError,
    UnsupportedCommutatorError,
    UnsupportedError,
)
from services.groups import (
    AbelianGroup,
    Character,
    Cocycle2,
    FiniteGroup,
    central_extension,
    claim_two_violations,
    commutator_data,
    direct_product,
    is_two_saturated,
    lift_basis_to_generators,
    minimal_generating_set,
    phase_to_sign,
    projection_is_homomorphism,
    validate_cocycle,
)
from services.presets import preset_extension


def _symmetric_group(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms]
    return FiniteGroup(np.array(table), 0, name=f"S{n}")


def test_d4_extension_shape(d4):
    group = d4.group
    assert group.order == 8
    assert d4.stem
    assert group.commutator_subgroup == frozenset({group.identity, d4.theta_star})
    assert group.center == frozenset({group.identity, d4.theta_star})
    assert sorted(group.orders).count(4) == 2
    assert group.element_order(d4.section((1, 1))) == 4
    assert group.element_order(d4.section((1, 0))) == 2


def test_q8_has_six_elements_of_order_four(q8):
    assert sorted(q8.group.orders).count(4) == 6
    assert len(q8.group.center) == 2


@pytest.mark.parametrize("name", ["D4", "Q8", "D4xZ2", "D4xZ2^2", "D4cD4", "Z2sqxD4", "Z3xD4"])
def test_commutators_of_sections_follow_the_cocycle(name):
    extension = preset_extension(name)
    assert validate_cocycle(extension.base, extension.cocycle)
    assert claim_two_violations(extension) == []
    assert projection_is_homomorphism(extension)


@pytest.mark.parametrize(
    ("name", "dimension", "nullity"),
    [("D4", 2, 0), ("Q8", 2, 0), ("D4xZ2", 3, 1), ("D4xZ2^2", 4, 2), ("D4cD4", 4, 0), ("Z2sqxD4", 4, 2)],
)
def test_commutator_form_rank_and_nullity(name, dimension, nullity):
    data = commutator_data(preset_extension(name).group, require_z2=True)
    assert data.dimension == dimension
    assert data.nullity == nullity
    assert len(data.commutator_subgroup) == 2


def test_commutator_data_rejects_large_commutator_subgroup():
    s3 = _symmetric_group(3)
    assert len(s3.commutator_subgroup) == 3
    with pytest.raises(UnsupportedCommutatorError):
        commutator_data(s3, require_z2=True)


@pytest.mark.parametrize("name", ["D4", "Q8", "D4xZ2"])
def test_minimal_generating_set_matches_frattini_quotient(name):
    group = preset_extension(name).group
    gens = minimal_generating_set(group)
    assert group.generates(gens)
    assert len(gens) == commutator_data(group).dimension


def test_lifted_basis_generates(d4xz2):
    data = commutator_data(d4xz2.group)
    lift = lift_basis_to_generators(d4xz2.group, data.basis, data)
    assert d4xz2.group.generates(lift)


def test_two_saturation():
    assert is_two_saturated(preset_extension("D4").group)
    assert is_two_saturated(FiniteGroup.cyclic(6))
    assert not is_two_saturated(FiniteGroup.cyclic(3))
    assert not is_two_saturated(FiniteGroup.from_abelian(AbelianGroup((3, 3))))


def test_lifted_basis_picks_up_the_odd_factor():
    group = preset_extension("Z3xD4").group
    data = commutator_data(group)
    assert data.dimension == 2
    assert group.generates(lift_basis_to_generators(group, data.basis, data))


def test_direct_product_keeps_commutator_order(d4):
    product = direct_product(d4.group, FiniteGroup.cyclic(2))
    assert product.order == 16
    assert len(product.commutator_subgroup) == 2
    assert not product.verify_axioms()


def test_characters_are_multiplicative():
    rng = np.random.default_rng(7)
    group = AbelianGroup((2, 4, 3))
    for _ in range(20):
        chi = Character(group, tuple(int(rng.integers(f)) for f in group.invariant_factors))
        g, h = (group.element(int(rng.integers(group.order))) for _ in range(2))
        assert chi.phase(group.add(g, h)) == (chi.phase(g) + chi.phase(h)) % 1


def test_character_from_signs_rejects_odd_factor():
    with pytest.raises(MalformedInputError):
        Character.from_signs(AbelianGroup((3,)), (-1,))


def test_phase_to_sign_needs_plus_or_minus_one():
    assert phase_to_sign(Fraction(1, 2)) == -1
    assert phase_to_sign(Fraction(3, 2)) == -1
    with pytest.raises(UnsupportedError):
        phase_to_sign(Fraction(1, 3))


def test_random_bilinear_cocycles_satisfy_the_commutator_identity():
    rng = np.random.default_rng(11)
    group = AbelianGroup.elementary(3)
    for _ in range(10):
        B = rng.integers(0, 2, size=(3, 3))
        cocycle = Cocycle2.bilinear(group, B)
        assert validate_cocycle(group, cocycle)
        extension = central_extension(group, cocycle)
        assert claim_two_violations(extension) == []
        assert extension.stem == bool(((B + B.T) % 2).any())


def test_unnormalized_table_is_rejected():
    group = AbelianGroup.elementary(2)
    table = np.ones((4, 4), dtype=np.int8)
    table[0, 1] = -1
    assert not validate_cocycle(group, Cocycle2(group, table))
    with pytest.raises(InvalidCocycleError):
        central_extension(group, Cocycle2(group, table))


def test_cocycle_text_rejects_bad_entries():
    with pytest.raises(MalformedInputError):
        Cocycle2.from_text("2\n1 1\n1 2\n")
    with pytest.raises(MalformedInputError):
        Cocycle2.from_text("")


def test_cocycle_text_loads_the_d4_table(d4):
    loaded = Cocycle2.from_text(d4.cocycle.to_text())
    assert np.array_equal(loaded.table, d4.cocycle.table)


def test_published_d4_cocycle_over_the_klein_group():
    # rows and columns in the order 1, v, w, vw with v = (1, 0), w = (0, 1)
    labelled = [
        [1, 1, 1, 1],
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, -1, 1, -1],
    ]
    group = AbelianGroup.elementary(2)
    order = [group.index(g) for g in [(0, 0), (1, 0), (0, 1), (1, 1)]]
    table = np.empty((4, 4), dtype=np.int8)
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            table[a, b] = labelled[i][j]
    cocycle = Cocycle2(group, table)
    assert validate_cocycle(group, cocycle)
    extension = central_extension(group, cocycle)
    assert extension.stem
    assert sorted(extension.group.orders).count(4) == 2
    v, w = (1, 0), (0, 1)
    assert [extension.form(g, v) for g in (v, w)] == [1, -1]
    assert [extension.form(g, w) for g in (v, w)] == [-1, 1]


def test_commutator_gram_values():
    assert commutator_data(preset_extension("D4").group).gram.tolist() == [[0, 1], [1, 0]]
    klein3 = FiniteGroup.from_abelian(AbelianGroup.elementary(3))
    data = commutator_data(klein3)
    assert data.dimension == 3
    assert not data.gram.any()
