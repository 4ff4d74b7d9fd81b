from fractions import Fraction

import numpy as np
import pytest

from services import dynkin
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
    MalformedInputError,
    NotFiniteCartanTypeError,
    PreconditionError,
    UnsupportedFoldingPatternError,
)

HALF = Fraction(1, 2)


def _cartan(label: str) -> CartanMatrix:
    return CartanMatrix(dynkin.cartan_matrix(label))


@pytest.mark.parametrize(
    ("label", "count"),
    [("A1", 1), ("A4", 10), ("B3", 9), ("C3", 9), ("D4", 12), ("D5", 20), ("E6", 36), ("E7", 63), ("F4", 24), ("G2", 6)],
)
def test_positive_root_counts(label, count):
    roots = positive_roots(_cartan(label))
    assert roots.size == count == dynkin.positive_root_count(label)
    assert type_label(_cartan(label)) == label


def test_e6_height_histogram():
    histogram = positive_roots(_cartan("E6")).histogram()
    assert histogram == {1: 6, 2: 5, 3: 5, 4: 5, 5: 4, 6: 3, 7: 3, 8: 2, 9: 1, 10: 1, 11: 1}


def test_classification_survives_node_relabeling():
    rng = np.random.default_rng(3)
    for label in ("A5", "D5", "E6", "F4", "C4"):
        C = dynkin.cartan_matrix(label)
        perm = rng.permutation(C.shape[0])
        shuffled = CartanMatrix(C[np.ix_(perm, perm)])
        assert type_label(shuffled) == label
        assert positive_roots(shuffled).histogram() == positive_roots(_cartan(label)).histogram()


def test_disconnected_type_label():
    C = np.zeros((4, 4), dtype=np.int64)
    C[:2, :2] = dynkin.cartan_matrix("A2")
    C[2:, 2:] = dynkin.cartan_matrix("A2")
    cartan = CartanMatrix(C)
    assert type_label(cartan) == "A2xA2"
    assert [component.nodes for component in classify(cartan)] == [(0, 1), (2, 3)]


def test_cartan_from_minus_one_braiding():
    # q_11 = q_22 = -1 with monodromy -1 is type A2
    q = [[HALF, HALF], [Fraction(0), HALF]]
    assert cartan_from_q(q).tolist() == [[2, -1], [-1, 2]]
    disconnected = [[HALF, Fraction(0)], [Fraction(0), HALF]]
    assert cartan_from_q(disconnected).tolist() == [[2, 0], [0, 2]]


def test_cartan_from_q_needs_nontrivial_self_braiding():
    with pytest.raises(PreconditionError):
        cartan_from_q([[Fraction(0)]])


@pytest.mark.parametrize(
    ("label", "orbits", "folded"),
    [
        ("A3", [[0, 2], [1]], "C2"),
        ("A5", [[0, 4], [1, 3], [2]], "C3"),
        ("A7", [[0, 6], [1, 5], [2, 4], [3]], "C4"),
        ("E6", [[0, 5], [2, 4], [1], [3]], "F4"),
        ("A2", [[0], [1]], "A2"),
    ],
)
def test_folding(label, orbits, folded):
    assert type_label(fold(_cartan(label), orbits)) == folded


def test_fold_a5_matrix():
    folded = fold(_cartan("A5"), [[0, 4], [1, 3], [2]])
    assert folded.tolist() == [[2, -1, 0], [-1, 2, -2], [0, -1, 2]]


def test_folding_a4_unramified_pairs():
    C = np.zeros((8, 8), dtype=np.int64)
    C[:4, :4] = dynkin.cartan_matrix("A4")
    C[4:, 4:] = dynkin.cartan_matrix("A4")
    folded = fold(CartanMatrix(C), [[0, 4], [1, 5], [2, 6], [3, 7]])
    assert type_label(folded) == "A4"


def test_unsupported_folds():
    with pytest.raises(UnsupportedFoldingPatternError):
        fold(_cartan("A2"), [[0, 1]])
    with pytest.raises(UnsupportedFoldingPatternError):
        fold(_cartan("A4"), [[0, 2], [1], [3]])
    with pytest.raises(MalformedInputError):
        fold(_cartan("A3"), [[0, 1, 2]])


def test_invalid_cartan_matrices():
    with pytest.raises(MalformedInputError):
        CartanMatrix(np.array([[2, 1], [0, 2]]))
    with pytest.raises(NotFiniteCartanTypeError):
        type_label(CartanMatrix(np.array([[2, -2], [-2, 2]])))


def test_hilbert_poly_of_a2():
    poly = hilbert_from_roots(positive_roots(_cartan("A2")))
    assert poly.coefficients == (1, 2, 2, 2, 1)
    assert poly.at_one() == 8
    assert poly.factored() == "[2]_t^2 [2]_{t^2}"
    assert poly.prefix(6) == (1, 2, 2, 2, 1, 0, 0)


def test_hilbert_poly_products():
    a2 = hilbert_from_roots(positive_roots(_cartan("A2")))
    assert (a2 * a2).coefficients == (1, 4, 8, 12, 14, 12, 8, 4, 1)
    assert HilbertPoly.from_counts({(3, 1): 1}).coefficients == (1, 1, 1)
    e6 = hilbert_from_roots(positive_roots(_cartan("E6")))
    assert e6.prefix(3) == (1, 6, 20, 55)
    assert e6.at_one() == 2**36
