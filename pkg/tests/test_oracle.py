import itertools
import math
from dataclasses import replace

import numpy as np
import pytest

from services.certificate import check_example
from services.exceptions import MalformedInputError, NumericIntegrityError, ResourceLimitError
from services.groups import AbelianGroup, Character
from services.modular import exact_rank, prime_ranks, rank_mod_p, rank_primes
from services.oracle import (
    braid_lift,
    complete_by_symmetry,
    cross_check,
    default_degree_cap,
    hilbert_prefix,
    nichols_dim,
    profile,
    reduced_word,
    skew_derivation_dim,
    symmetrizer_matrix,
    symmetrizer_report,
)
from services.profile_service import ProfileService, braiding_digest
from services.registry import EXAMPLES, worked_example
from services.yd import DiagonalYD, braiding


@pytest.fixture(scope="module")
def a2_diagonal() -> DiagonalYD:
    group = AbelianGroup.elementary(2)
    return DiagonalYD(
        group,
        ((1, 0), (0, 1)),
        (Character.from_signs(group, (-1, 1)), Character.from_signs(group, (-1, -1))),
    )


def _inversions(w: tuple[int, ...]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


def test_diagonal_a2_prefix(a2_diagonal):
    assert hilbert_prefix(a2_diagonal, 5) == [1, 2, 2, 2, 1, 0]


def test_d4_example_low_degrees(d4_example):
    c = braiding(d4_example.module)
    assert nichols_dim(c, 4, 0) == 1
    assert nichols_dim(c, 4, 1) == 4
    assert nichols_dim(c, 4, 2) == 8
    assert nichols_dim(c, 4, 3) == 12


def test_threads_do_not_change_ranks(d4_example):
    assert hilbert_prefix(d4_example.module, 4, threads=4) == [1, 4, 8, 12, 14]


@pytest.mark.slow
def test_d4_example_full_profile(d4_example):
    assert hilbert_prefix(d4_example.module, 6) == [1, 4, 8, 12, 14, 12, 8]
    assert complete_by_symmetry([1, 4, 8, 12, 14], 8) == list(d4_example.expected.coefficients)


def test_derivations_agree_with_the_symmetrizer(d4_example, a2_diagonal):
    assert cross_check(d4_example.module, 3) == 12
    assert skew_derivation_dim(d4_example.module, 2) == 8
    assert skew_derivation_dim(a2_diagonal, 4) == 1


def test_exact_audit(d4_example):
    report = symmetrizer_report(braiding(d4_example.module), 4, 3, exact=True)
    assert report.rank == report.exact_rank == 12
    assert report.ambient == 64
    assert report.blocks >= 1
    assert all(p > math.factorial(3) for p in report.primes)


def test_dense_symmetrizer_has_the_same_rank(d4_example):
    c = braiding(d4_example.module)
    assert exact_rank(symmetrizer_matrix(c, 3)) == 12


def test_reduced_words_are_reduced():
    rng = np.random.default_rng(17)
    for _ in range(20):
        w = tuple(int(x) for x in rng.permutation(5))
        for strategy in ("first", "last"):
            word = reduced_word(w, strategy)
            assert len(word) == _inversions(w)
            assert all(1 <= j < 5 for j in word)


def test_braid_lift_is_independent_of_the_reduced_word(d4_example):
    c = braiding(d4_example.module)
    rng = np.random.default_rng(23)
    for d in (3, 4, 5):
        for _ in range(5):
            w = tuple(int(x) for x in rng.permutation(d))
            first = braid_lift(c, reduced_word(w, "first"), d)
            last = braid_lift(c, reduced_word(w, "last"), d)
            assert np.array_equal(first[0], last[0])
            assert np.array_equal(first[1], last[1])


def test_degree_bounds(d4_example):
    c = braiding(d4_example.module)
    with pytest.raises(MalformedInputError):
        nichols_dim(c, 4, -1)
    with pytest.raises(ResourceLimitError):
        nichols_dim(c, 4, 8)
    with pytest.raises(MalformedInputError):
        nichols_dim(c, 3, 2)


def test_default_degree_cap():
    assert default_degree_cap(4) == 6
    assert default_degree_cap(8) == 4
    assert default_degree_cap(16) == 3


def test_complete_by_symmetry_checks_palindromes():
    assert complete_by_symmetry([1, 2, 2], 4) == [1, 2, 2, 2, 1]
    with pytest.raises(MalformedInputError):
        complete_by_symmetry([1, 4], 8)
    with pytest.raises(NumericIntegrityError):
        complete_by_symmetry([1, 4, 8, 12, 14, 12, 9], 8)


def test_modular_rank():
    assert rank_mod_p(np.array([[1, 2], [2, 4]]), 101) == 1
    assert rank_mod_p(np.eye(3, dtype=np.int64), 7) == 3
    assert exact_rank(np.array([[1, 2], [2, 4]])) == 1
    assert exact_rank(np.zeros((0, 0))) == 0


def test_rank_primes():
    primes = rank_primes(count=3)
    assert len(set(primes)) == 3
    assert all(p < 2**31 for p in primes)
    assert list(primes) == sorted(primes, reverse=True)
    with pytest.raises(ResourceLimitError):
        rank_primes(exceeding=2**31)


def test_prime_disagreement_is_reported(monkeypatch, d4_example):
    p, q = rank_primes(count=2)
    assert prime_ranks(np.array([[p]]), (p, q)) == (0, 1)

    def skewed(matrix, primes):
        return tuple(rank_mod_p(matrix, prime) - (prime == primes[-1]) for prime in primes)

    monkeypatch.setattr("services.oracle.prime_ranks", skewed)
    with pytest.raises(NumericIntegrityError):
        symmetrizer_report(braiding(d4_example.module), 4, 2)


def test_report_carries_the_rank_at_every_prime(d4_example):
    report = symmetrizer_report(braiding(d4_example.module), 4, 3)
    assert len(report.prime_ranks) == len(report.primes)
    assert set(report.prime_ranks) == {12}
    assert report.agreement
    assert not replace(report, prime_ranks=(12, 11)).agreement


def test_profile_output(a2_diagonal):
    result = profile(a2_diagonal, 3)
    assert result["degrees"] == [0, 1, 2, 3]
    assert result["coefficients"] == [1, 2, 2, 2]
    assert result["runtime_ms"] >= 0
    assert len(result["primes"]) >= 2


def test_profile_cache(db_session, d4_example):
    service = ProfileService(db_session)
    first = service.hilbert_profile(d4_example.module, 3)
    db_session.commit()
    second = service.hilbert_profile(d4_example.module, 4)
    assert first.coefficients == [1, 4, 8, 12]
    assert first.cached_degrees == []
    assert second.coefficients == [1, 4, 8, 12, 14]
    assert second.cached_degrees == [0, 1, 2, 3]


def test_braiding_digest_identifies_the_braiding(d4_example, a2_diagonal):
    c = braiding(d4_example.module)
    assert braiding_digest(c) == braiding_digest(braiding(d4_example.module))
    assert braiding_digest(c) != braiding_digest(braiding(a2_diagonal))


def test_twisted_pairs_share_their_prefix():
    for stem in ("A2-D4", "A3-D4xZ2"):
        diag = worked_example(f"{stem}-diag")
        twist = worked_example(f"{stem}-twist")
        assert hilbert_prefix(diag.module, 3) == hilbert_prefix(twist.module, 3)


def test_f4_example_prefix():
    bundle = worked_example("F4-Z2sqxD4-diag")
    assert bundle.module.dimension == 6
    assert hilbert_prefix(bundle.module, 3) == [1, 6, 20, 55]


@pytest.mark.slow
@pytest.mark.parametrize("example_id", sorted(EXAMPLES))
def test_registered_examples_check(example_id):
    check = check_example(example_id)
    assert check.observed == check.expected
    assert check.certificate.passed
    assert check.passed
