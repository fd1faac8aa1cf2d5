import itertools
import math

import numpy as np
import pytest

from quasimarket.entropy import (
    CountVector,
    DiscreteMeasureTriple,
    boltzmann_multiplicity,
    bose_multiplicity,
    bose_relative_entropy,
    entropy_symbol,
    fermi_relative_entropy,
    kl_limit,
    relative_entropy_symbol,
    version_count,
)
from quasimarket.errors import DomainError
from quasimarket.oracle import enumerate_allocations
from quasimarket.specfun import log_gamma


def stars_and_bars_by_listing(k, G):
    # every multiset of size k over G cells
    return sum(1 for _ in itertools.combinations_with_replacement(range(G), k))


def test_bose_multiplicity_examples():
    assert bose_multiplicity(2, 3) == pytest.approx(math.log(6), rel=1e-12)
    assert stars_and_bars_by_listing(2, 3) == 6
    assert bose_multiplicity(0, 5) == 0.0
    assert bose_multiplicity(9, 1) == 0.0


@pytest.mark.parametrize("k", range(0, 31))
def test_bose_multiplicity_exact(k):
    for G in range(1, 31):
        exact = math.comb(G + k - 1, k)
        assert math.exp(bose_multiplicity(k, G)) == pytest.approx(exact, rel=1e-9)


def test_bose_pascal_recurrence():
    for k in range(1, 15):
        for G in range(2, 15):
            lhs = math.exp(bose_multiplicity(k, G))
            rhs = math.exp(bose_multiplicity(k - 1, G)) + math.exp(bose_multiplicity(k, G - 1))
            assert lhs == pytest.approx(rhs, rel=1e-10)


def test_boltzmann_multiplicity_examples():
    assert boltzmann_multiplicity(0, 7, 3) == 0.0
    assert boltzmann_multiplicity(2, 3, 2) == pytest.approx(math.log(12), rel=1e-12)
    assert boltzmann_multiplicity(3, 3, 2) == pytest.approx(3 * math.log(2), rel=1e-12)


def test_boltzmann_by_labelled_enumeration():
    # choose which labelled bonds go to the strong banks, then a bank for each
    N, G = 4, 3
    for k in range(N + 1):
        count = sum(
            1
            for chosen in itertools.combinations(range(N), k)
            for _ in itertools.product(range(G), repeat=len(chosen))
        )
        assert math.exp(boltzmann_multiplicity(k, N, G)) == pytest.approx(count, rel=1e-12)


@pytest.mark.parametrize("N", range(1, 31))
def test_boltzmann_multiplicity_exact(N):
    for G in (1, 2, 3, 7, 30):
        for k in range(N + 1):
            exact = math.log(math.comb(N, k)) + k * math.log(G)
            assert boltzmann_multiplicity(k, N, G) == pytest.approx(exact, rel=1e-9, abs=1e-12)


def test_boltzmann_k_above_N():
    with pytest.raises(DomainError):
        boltzmann_multiplicity(4, 3, 2)


def test_bose_multiplicity_domain():
    with pytest.raises(DomainError):
        bose_multiplicity(-1, 2)
    with pytest.raises(DomainError):
        bose_multiplicity(1, 0)


def test_entropy_symbol_raw_examples():
    assert entropy_symbol(CountVector((1, 2), 3)) == 0.0
    assert entropy_symbol(CountVector((5, 5), 10)) == pytest.approx(2 * math.log(24) / 10, rel=1e-12)


def test_entropy_symbol_normalized_limit():
    counts = CountVector.from_probabilities((0.5, 0.5), 1e6)
    assert abs(entropy_symbol(counts, normalized=True) + math.log(2)) <= 2e-5


def test_entropy_symbol_normalized_error_shrinks():
    rng = np.random.default_rng(23)
    for _ in range(20):
        p = rng.dirichlet(np.ones(rng.integers(2, 6)))
        target = float(np.sum(p * np.log(p)))
        errors = [
            abs(entropy_symbol(CountVector.from_probabilities(p, M), normalized=True) - target)
            for M in (1e3, 1e4, 1e5, 1e6)
        ]
        assert all(b < a for a, b in zip(errors, errors[1:])), errors


def test_entropy_symbol_rejects_zero_count():
    with pytest.raises(DomainError):
        entropy_symbol(CountVector((0.0, 3.0), 3.0))


def test_count_vector_sum_checked():
    with pytest.raises(DomainError):
        CountVector((1.0, 1.0), 3.0)


def _uniform_triple(n, M, K, q=None, mu=None):
    p = tuple([1.0 / n] * n)
    q = q or tuple([M / n] * n)
    mu = mu or tuple([K / n] * n)
    return DiscreteMeasureTriple(p, q, mu, M, K)


def test_measure_triple_validation():
    with pytest.raises(DomainError):
        DiscreteMeasureTriple((0.5, 0.4), (1, 1), (1, 1), 2, 2)
    with pytest.raises(DomainError):
        DiscreteMeasureTriple((0.5, 0.5), (1, 2), (1, 1), 2, 2)
    with pytest.raises(DomainError):
        DiscreteMeasureTriple((1.0, 0.0), (1, 1), (1, 1), 2, 2)
    t = _uniform_triple(3, 6, 3)
    assert t.atom_count == 3
    assert t.dq_dp() == pytest.approx((6, 6, 6))


def test_relative_entropy_symbol_raw_trivial():
    # densities q/p equal to 1 or 2 everywhere
    t = DiscreteMeasureTriple((0.5, 0.5), (0.5, 1.0), (1.0, 1.0), 1.5, 2.0)
    assert relative_entropy_symbol(t) == 0.0


def test_relative_entropy_symbol_uniform_four_atoms():
    M = 100.0
    t = _uniform_triple(4, M, 1.0)
    # dQ/dP = (M/4)/(1/4) = 100 on every atom
    by_atoms = sum(0.25 * log_gamma(100.0) for _ in range(4)) / M
    assert relative_entropy_symbol(t) == pytest.approx(by_atoms, rel=1e-12)
    assert relative_entropy_symbol(t) == pytest.approx(log_gamma(100.0) / 100.0, rel=1e-12)


def test_relative_entropy_symbol_normalized_converges_to_kl():
    target = 0.75 * math.log(1.5) + 0.25 * math.log(0.5)
    errors = []
    for M in (1e3, 1e4, 1e5):
        t = DiscreteMeasureTriple((0.5, 0.5), (0.75 * M, 0.25 * M), (1.0, 1.0), M, 2.0)
        assert kl_limit(t) == pytest.approx(target, rel=1e-12)
        errors.append(abs(relative_entropy_symbol(t, normalized=True) - target))
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-4


def test_relative_entropy_symbol_zero_density():
    t = DiscreteMeasureTriple((0.5, 0.5), (0.0, 2.0), (1.0, 1.0), 2.0, 2.0)
    with pytest.raises(DomainError):
        relative_entropy_symbol(t)
    assert kl_limit(t) == pytest.approx(math.log(2.0))


def test_bose_relative_entropy_trivial():
    t = DiscreteMeasureTriple((1.0,), (1.0,), (1.0,), 1.0, 1.0)
    assert bose_relative_entropy(t) == 0.0


def test_bose_relative_entropy_single_atom():
    t = DiscreteMeasureTriple((1.0,), (4.0,), (2.0,), 4.0, 2.0)
    expected = math.log(120) / 6 - math.log(24) / 4
    assert bose_relative_entropy(t) == pytest.approx(expected, rel=1e-12)


def test_bose_relative_entropy_scaling():
    def direct(r, s, M, K):
        f = lambda n: math.lgamma(n)  # noqa: E731
        return f(r + s) / (M + K) - f(r + 1) / M - f(s) / K

    p = (0.25, 0.75)
    q, mu, M, K = (1.0, 5.0), (2.0, 1.0), 6.0, 3.0
    for scale in (1, 2):
        t = DiscreteMeasureTriple(p, tuple(scale * v for v in q), tuple(scale * v for v in mu), scale * M, scale * K)
        expected = sum(
            pi * direct(scale * qi / pi, scale * mi / pi, scale * M, scale * K) for pi, qi, mi in zip(p, q, mu)
        )
        assert bose_relative_entropy(t) == pytest.approx(expected, rel=1e-12)


def test_fermi_relative_entropy_values():
    t = DiscreteMeasureTriple((1.0,), (1.0,), (1.0,), 1.0, 1.0)
    assert fermi_relative_entropy(t) == 0.0
    t = DiscreteMeasureTriple((1.0,), (2.0,), (4.0,), 2.0, 4.0)
    expected = math.log(24) / 4 - math.log(2) / 2 - math.log(2) / 6
    assert fermi_relative_entropy(t) == pytest.approx(expected, rel=1e-12)


def test_fermi_relative_entropy_exclusion():
    t = DiscreteMeasureTriple((1.0,), (6.0,), (4.0,), 6.0, 4.0)
    with pytest.raises(DomainError, match="over-occupation"):
        fermi_relative_entropy(t)


def test_version_count_examples():
    assert version_count(2, 2) == pytest.approx(math.log(6), rel=1e-12)
    assert version_count(3, 1) == pytest.approx(math.log(4), rel=1e-12)
    assert version_count(2, 2, "product") == pytest.approx(math.log(6), rel=1e-12)


@pytest.mark.parametrize("K", range(1, 13))
def test_version_count_matches_enumeration(K):
    for G2 in range(1, 7):
        enumerated = enumerate_allocations(K, (1, G2))
        assert enumerated == math.comb(G2 + K, K)
        assert version_count(K, G2) == pytest.approx(math.log(enumerated), rel=1e-12)
        product = math.prod(math.comb(G2 + k2 - 1, k2) for k2 in range(1, K + 1))
        assert version_count(K, G2, "product") == pytest.approx(math.log(product), rel=1e-12, abs=1e-12)


def test_version_count_domain():
    with pytest.raises(DomainError):
        version_count(0, 2)
    with pytest.raises(ValueError):
        version_count(2, 2, "mean")
