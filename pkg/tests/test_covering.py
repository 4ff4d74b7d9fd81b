import numpy as np
import pytest

from schemas.covering import CoveringBundle
from services.cartan import CartanMatrix
from services.certificate import certify
from services.constructions import (
    admissible_block,
    block_invariants,
    construct,
    construct_with_abelian_factor,
    parse_plan,
)
from services.covering import INERT, SPLIT, covering_module, diagonal_hilbert, symmetry_orbits
from services.exceptions import (
    MalformedInputError,
    NoSymplecticRootSystemError,
    PreconditionError,
    UnsupportedError,
)
from services.groups import AbelianGroup, Character
from services.presets import preset_extension
from services.yd import DiagonalYD, braiding_matrix, verify_yd


@pytest.mark.parametrize(
    ("preset", "kind", "folded", "unfolded", "exponent", "inert"),
    [
        ("D4", "unramified:A2", "A2", "A2xA2", 6, 0),
        ("D4xZ2", "unramified:A3", "A3", "A3xA3", 12, 0),
        ("D4xZ2", "cn:3", "C3", "A5", 15, 1),
        ("D4cD4", "unramified:A4", "A4", "A4xA4", 20, 0),
        ("D4xZ2^2", "unramified:D4", "D4", "D4xD4", 24, 0),
        ("D4xZ2^2", "cn:4", "C4", "A7", 28, 1),
        ("Z2sqxD4", "f4", "F4", "E6", 36, 2),
    ],
)
def test_connected_constructions(preset, kind, folded, unfolded, exponent, inert):
    result = construct(preset_extension(preset), kind)
    assert result.folded_type == folded
    assert result.unfolded_type == unfolded
    assert result.dimension_exponent == exponent
    assert result.node_tags.count(INERT) == inert
    assert result.node_tags.count(SPLIT) == len(result.orbits) - inert
    assert result.indecomposable
    assert result.covering.dimension == result.base.dimension
    assert verify_yd(result.covering)


def test_covering_braiding_matches_the_base(d4):
    result = construct(d4, "unramified:A2")
    B = result.basis_change
    kron = np.kron(B, B)
    assert np.allclose(kron @ braiding_matrix(result.covering), braiding_matrix(result.base) @ kron)
    assert len(set(result.covering.degrees)) == 4


def test_split_pairs_have_degrees_differing_by_theta_star(d4):
    result = construct(d4, "unramified:A2")
    group = d4.group
    degrees = result.covering.degrees
    split = [orbit for orbit in result.orbits if len(orbit) == 2]
    for k, _ in enumerate(split):
        plus, minus = degrees[k], degrees[len(result.orbits) + k]
        assert minus == group.mul(d4.theta_star, plus)
        assert plus not in group.center


def test_a2_covering_hilbert_series(d4):
    result = construct(d4, "unramified:A2")
    assert result.hilbert.coefficients == (1, 4, 8, 12, 14, 12, 8, 4, 1)
    assert result.dimension == 64


def test_disconnected_plan_with_inert_remainder():
    result = construct(preset_extension("D4xZ2^2"), "disconnected:A3+0,1")
    assert result.folded_type == "A3xA1"
    assert result.dimension == 2**13
    assert result.node_tags.count(INERT) == 1


def test_construction_preconditions(d4):
    with pytest.raises(NoSymplecticRootSystemError):
        construct(d4, "unramified:A3")
    with pytest.raises(MalformedInputError):
        construct(d4, "cn:2")
    with pytest.raises(MalformedInputError):
        construct(d4, "bogus")
    with pytest.raises(UnsupportedError):
        construct(d4, "unramified:B3")
    with pytest.raises(PreconditionError):
        construct(preset_extension("Z2^2"), "unramified:A2")


@pytest.mark.parametrize(
    ("label", "invariants"),
    [("A4", (4, 0)), ("A5", (5, 1)), ("D4", (4, 2)), ("D5", (5, 1)), ("E6", (6, 0)), ("E7", (7, 1)), ("C3", (3, 1)), ("C4", (4, 2)), ("F4", (4, 2))],
)
def test_block_invariants(label, invariants):
    assert block_invariants(label) == invariants


def test_admissible_blocks_and_plans():
    assert admissible_block(4, 0) == "A4"
    assert admissible_block(4, 2) == "D4"
    assert admissible_block(3, 1) == "A3"
    with pytest.raises(PreconditionError):
        admissible_block(2, 2)
    assert parse_plan("A4+D5+3,1+0,2") == (["A4", "D5", "A3"], 2)


def test_twisted_symmetry_is_required(d4):
    result = construct(d4, "unramified:A2")
    identity = list(range(result.base.dimension))
    with pytest.raises(PreconditionError):
        covering_module(result.base, identity, d4)


def test_isomorphic_summands_are_unsupported(d4):
    base = d4.base
    chi = Character.from_signs(base, (-1, 1))
    module = DiagonalYD(base, ((0, 0), (0, 0)), (chi, chi))
    with pytest.raises(UnsupportedError):
        covering_module(module, [0, 1], d4)


def test_symmetry_orbits():
    assert symmetry_orbits([1, 0, 2]) == ((0, 1), (2,))
    with pytest.raises(MalformedInputError):
        symmetry_orbits([1, 2, 0])


def test_isolated_node_of_order_three():
    group = AbelianGroup((3,))
    module = DiagonalYD(group, ((1,),), (Character(group, (1,)),))
    poly = diagonal_hilbert(module, CartanMatrix(np.array([[2]])))
    assert poly.coefficients == (1, 1, 1)
    assert poly.at_one() == 3


def test_abelian_factor_beside_a_saturated_block():
    extension = preset_extension("Z3xD4")
    odd = AbelianGroup((3,))
    abelian = DiagonalYD(odd, ((1,),), (Character(odd, (1,)),))
    result = construct_with_abelian_factor(extension, "A2", abelian)
    assert result.indecomposable
    assert result.hilbert.at_one() == 64 * 3
    with pytest.raises(PreconditionError):
        construct_with_abelian_factor(preset_extension("D4"), "A2", abelian)


def test_certificate_of_a_construction(d4):
    bundle = CoveringBundle.from_result(construct(d4, "unramified:A2"))
    certificate = certify(bundle)
    assert certificate.passed
    assert {check.name for check in certificate.checks} >= {"YD condition", "folded type", "Hilbert series"}


def test_certificate_reports_a_wrong_folded_type(d4):
    bundle = CoveringBundle.from_result(construct(d4, "unramified:A2"))
    certificate = certify(bundle.model_copy(update={"folded_type": "A3"}))
    assert not certificate.passed
    assert [check.name for check in certificate.checks if not check.passed] == ["folded type"]


def test_unramified_covering_over_a_group_with_an_odd_factor():
    extension = preset_extension("Z3xD4")
    result = construct(extension, "unramified:A2")
    assert extension.group.generates(result.covering.degrees)
    assert result.indecomposable
    assert any(g[0] != 0 for g in result.base.degrees)
    assert result.hilbert.coefficients == (1, 4, 8, 12, 14, 12, 8, 4, 1)
    assert certify(CoveringBundle.from_result(result)).passed


def test_certificate_rejects_a_non_generating_stem_covering():
    extension = preset_extension("Z3xD4")
    result = construct(extension, "unramified:A2")
    base = result.base
    flat = DiagonalYD(base.group, tuple((0,) + g[1:] for g in base.degrees), base.characters)
    split = covering_module(flat, result.symmetry, extension)
    assert not split.indecomposable
    certificate = certify(CoveringBundle.from_result(split))
    assert [check.name for check in certificate.checks if not check.passed] == ["indecomposability"]
