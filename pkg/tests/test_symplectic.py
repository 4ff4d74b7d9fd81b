import numpy as np
import pytest

from services import dynkin
from services.exceptions import MalformedInputError, ResourceLimitError, UnsupportedError
from services.symplectic import (
    SympSpace,
    decoration_from_vectors,
    exhaustive_nullities,
    gf2_rank,
    gf2_solve,
    minimal_root_system,
    nullspace,
    search_minimal_root_system,
    symplectic_basis,
    verify_root_system,
)


def _random_alternating(rng: np.random.Generator, n: int) -> np.ndarray:
    upper = np.triu(rng.integers(0, 2, size=(n, n)), k=1)
    return (upper + upper.T) % 2


@pytest.mark.parametrize(
    ("diagram", "nullity"),
    [("A1", 1), ("A2", 0), ("A3", 1), ("A4", 0), ("A7", 1), ("D4", 2), ("D5", 1), ("D6", 2), ("E6", 0), ("E7", 1), ("E8", 0)],
)
def test_minimal_root_system_nullity(diagram, nullity):
    decoration = minimal_root_system(diagram)
    report = verify_root_system(decoration)
    assert report.valid and report.minimal
    assert decoration.space.nullity == nullity
    assert decoration.space.dimension == decoration.nodes


def test_a3_decoration_renders_in_standard_coordinates():
    decoration = minimal_root_system("A3")
    assert decoration.coordinate_names == ("x1", "y1", "z1")
    assert len(decoration.describe()) == 3
    # the middle node pairs with both ends
    pairing = decoration.space.pairing
    v = decoration.vectors
    assert pairing(v[0], v[1]) == pairing(v[1], v[2]) == 1
    assert pairing(v[0], v[2]) == 0


@pytest.mark.parametrize(("diagram", "expected"), [("A2", {0}), ("A3", {1}), ("A4", {0}), ("D4", {2})])
def test_exhaustive_search_agrees_with_construction(diagram, expected):
    assert exhaustive_nullities(diagram) == frozenset(expected)
    assert minimal_root_system(diagram).space.nullity in expected


def test_symplectic_basis_pairing_contract():
    rng = np.random.default_rng(2024)
    for _ in range(25):
        n = int(rng.integers(1, 11))
        space = SympSpace(_random_alternating(rng, n))
        pairs, nulls = symplectic_basis(space)
        vectors = [v for pair in pairs for v in pair] + nulls
        assert len(vectors) == n
        assert gf2_rank(np.array(vectors)) == n
        assert len(nulls) == space.nullity
        for a, (u, v) in enumerate(pairs):
            assert space.pairing(u, v) == 1
            for b, (x, y) in enumerate(pairs):
                if a != b:
                    assert space.pairing(u, x) == space.pairing(u, y) == 0
                    assert space.pairing(v, x) == space.pairing(v, y) == 0
        for z in nulls:
            assert all(space.pairing(z, w) == 0 for w in vectors)


def test_gf2_solve():
    M = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    x = gf2_solve(M, np.array([1, 0]))
    assert x is not None
    assert np.array_equal((M.astype(int) @ x.astype(int)) % 2, [1, 0])
    assert gf2_solve(np.array([[1, 1], [1, 1]]), np.array([0, 1])) is None


def test_bad_decoration_reports_violations():
    adjacency = dynkin.adjacency_matrix("A2")
    decoration = decoration_from_vectors(adjacency, [[0, 1], [1, 0]], [[1, 0], [1, 0]])
    report = verify_root_system(decoration)
    assert not report
    assert report.violations == [(0, 1)]
    assert not report.spans


def test_gram_matrix_must_be_alternating():
    with pytest.raises(MalformedInputError):
        SympSpace(np.array([[1, 0], [0, 0]]))
    with pytest.raises(MalformedInputError):
        SympSpace(np.array([[0, 1], [0, 0]]))


def test_unsupported_diagrams():
    with pytest.raises(UnsupportedError):
        minimal_root_system("B3")
    with pytest.raises(ResourceLimitError):
        minimal_root_system("A17")
    with pytest.raises(MalformedInputError):
        minimal_root_system("E9")


def test_nullspace_of_the_standard_space():
    space = SympSpace.standard(1, 2)
    assert len(nullspace(space)) == 2
    assert space.nullity == 2


def test_decoration_search_over_a_given_space():
    adjacency = dynkin.adjacency_matrix("A3")
    found = search_minimal_root_system(adjacency, SympSpace.standard(1, 1), "A3")
    assert found is not None
    assert verify_root_system(found).valid
    assert search_minimal_root_system(adjacency, SympSpace.standard(0, 3), "A3") is None
    assert search_minimal_root_system(adjacency, SympSpace.standard(1, 0), "A3") is None
