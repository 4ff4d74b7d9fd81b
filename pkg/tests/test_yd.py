from fractions import Fraction

import numpy as np
import pytest

from services.constructions import construct
from services.exceptions import MalformedInputError, UnsupportedError
from services.groups import AbelianGroup, Character
from services.registry import worked_example
from services.yd import (
    DiagonalYD,
    MonomialYD,
    TwistForm,
    braiding,
    braiding_matrix,
    centralizer_character,
    decompose_simples,
    direct_sum,
    is_faithful,
    q_matrix,
    simple_conjugacy_module,
    twist_by_form,
    verify_twisted_symmetry,
    verify_yd,
)


def _random_diagonal(rng: np.random.Generator, group: AbelianGroup, m: int) -> DiagonalYD:
    degrees = tuple(group.element(int(rng.integers(group.order))) for _ in range(m))
    characters = tuple(Character(group, tuple(int(x) for x in rng.integers(0, 2, group.rank))) for _ in range(m))
    return DiagonalYD(group, degrees, characters)


def test_diagonal_braidings_satisfy_yang_baxter():
    rng = np.random.default_rng(5)
    group = AbelianGroup.elementary(3)
    for _ in range(10):
        module = _random_diagonal(rng, group, int(rng.integers(1, 5)))
        c = braiding(module)
        assert c.satisfies_yang_baxter()
        assert np.allclose(braiding_matrix(module), c.dense())


def test_braiding_of_pair_basis():
    group = AbelianGroup.elementary(1)
    module = DiagonalYD(group, ((1,), (0,)), (Character.from_signs(group, (-1,)), Character.trivial(group)))
    c = braiding(module)
    # c(y1 ⊗ y1) = χ1(g1) y1 ⊗ y1 = -y1 ⊗ y1
    assert c.target[0] == 0 and c.signs[0] == -1
    # c(y1 ⊗ y2) = y2 ⊗ y1
    assert c.target[1] == 2 and c.signs[1] == 1


def test_non_sign_scalars_use_the_dense_braiding():
    group = AbelianGroup((3,))
    module = DiagonalYD(group, ((1,),), (Character(group, (1,)),))
    with pytest.raises(UnsupportedError):
        braiding(module)
    assert np.isclose(braiding_matrix(module)[0, 0], np.exp(2j * np.pi / 3))


def test_example_module_is_a_yd_module(d4_example):
    module = d4_example.module
    assert module.dimension == 4
    assert verify_yd(module)
    assert braiding(module).satisfies_yang_baxter()
    summands = decompose_simples(module)
    assert [s.dimension for s in summands] == [2, 2]
    assert all(verify_yd(s) for s in summands)


def test_central_class_gives_a_one_dimensional_module(d4):
    group = d4.group
    chi = centralizer_character(group, d4.theta_star, {g: 0 for g in group.generating_set})
    module = simple_conjugacy_module(group, d4.theta_star, chi)
    assert module.dimension == 1
    assert module.acts_trivially(d4.theta_star)
    assert verify_yd(module)


def test_centralizer_character_must_be_multiplicative(d4):
    group = d4.group
    h = d4.section((1, 1))
    # h has order 4, so χ(h) = -1 forces χ(h²) = χ(θ*) = 1
    with pytest.raises(MalformedInputError):
        centralizer_character(group, h, {h: 1, d4.theta_star: 1})


def test_direct_sum_concatenates(d4_example):
    summands = decompose_simples(d4_example.module)
    rebuilt = direct_sum(summands)
    assert rebuilt.degrees == d4_example.module.degrees
    assert verify_yd(rebuilt)


def test_broken_action_fails_verification(d4_example):
    good = decompose_simples(d4_example.module)[0]
    bad = MonomialYD(
        good.group,
        (good.degrees[0], good.degrees[0]),
        good.generators,
        good.perms,
        good.phases,
        good.root_order,
    )
    assert verify_yd(good)
    assert not verify_yd(bad)


def test_monomial_module_rejects_non_permutations(d4):
    with pytest.raises(MalformedInputError):
        MonomialYD(d4.group, (0, 1), (0,), ((0, 0),), ((0, 0),))


def test_twisting_twice_is_the_identity(d4):
    result = construct(d4, "unramified:A2")
    form = TwistForm.from_extension(d4)
    twice = twist_by_form(twist_by_form(result.base, form), form)
    assert [chi.exponents for chi in twice.characters] == [chi.exponents for chi in result.base.characters]


def test_twisted_symmetry_of_a_construction(d4):
    result = construct(d4, "unramified:A2")
    assert verify_twisted_symmetry(result.base, result.symmetry, d4)
    identity = list(range(result.base.dimension))
    assert not verify_twisted_symmetry(result.base, identity, d4)


def test_twist_form_must_be_alternating():
    with pytest.raises(MalformedInputError):
        TwistForm(AbelianGroup.elementary(2), np.array([[1, 0], [0, 0]]))


def test_q_matrix_of_a_diagonal_module():
    group = AbelianGroup.elementary(1)
    module = DiagonalYD(group, ((1,), (0,)), (Character.from_signs(group, (-1,)), Character.trivial(group)))
    assert q_matrix(module) == [[Fraction(1, 2), Fraction(0)], [Fraction(0), Fraction(0)]]


def test_faithfulness_follows_the_central_value():
    assert not is_faithful(worked_example("A2-D4-diag").module)
    assert is_faithful(worked_example("A2-D4-twist").module)
