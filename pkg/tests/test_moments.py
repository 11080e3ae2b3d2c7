import itertools
import math

import numpy as np
import pytest

from app.analytic.counting.moments import (
    large_spectrum,
    moment_exact,
    moment_grid,
    power_sum_distribution,
    restriction_ratio,
    spectrum_exponent,
    spectrum_sweep,
    vinogradov_count,
)
from app.analytic.fourier.expsum import nu_hat_grid, power_grid, shifted_prime_weights, suggest_grid_size
from app.analytic.primes.sieve import lambda_progression
from app.core.config import settings
from app.core.exceptions import DomainError, ResourceLimitError
from app.models.expsum import FrequencyGrid
from app.models.moments import MomentSpec


def _flat_grid(size: int, magnitude: float = 1.0) -> FrequencyGrid:
    return FrequencyGrid(size=size, values=np.full(size, magnitude, dtype=complex), degree=1)


class TestMomentExact:
    def test_first_moment(self):
        assert moment_exact(MomentSpec(half_order=1, degree=3, root_bound=17)) == 17

    def test_linear_fourth_moment(self):
        assert moment_exact(MomentSpec(half_order=2, degree=1, root_bound=3)) == 19

    def test_quadratic_brute_force(self):
        M = 10
        expected = sum(1 for a, b, c, d in itertools.product(range(1, M + 1), repeat=4)
                       if a * a + b * b == c * c + d * d)
        # 50, 65, 85 만 두 가지 표현을 가짐: 45·4 + 10 + 4 + 8 + 8
        assert expected == 210
        assert moment_exact(MomentSpec(half_order=2, degree=2, root_bound=M)) == expected

    def test_empty_range(self):
        assert moment_exact(MomentSpec(half_order=2, degree=2, root_bound=0)) == 0

    def test_distribution_total(self):
        spec = MomentSpec(half_order=3, degree=2, root_bound=6)
        distribution = power_sum_distribution(spec)
        assert len(distribution) == 3 * 36 + 1
        assert int(distribution.sum()) == 6 ** 3

    def test_weighted_first_moment(self, small_table):
        spec = MomentSpec(half_order=1, degree=2, root_bound=40, weighting="shifted-prime")
        weights = shifted_prime_weights(small_table, 1, 2, 40)
        assert moment_exact(spec, small_table) == pytest.approx(math.fsum(weights ** 2), rel=1e-12)

    def test_weighted_needs_table(self):
        with pytest.raises(DomainError):
            moment_exact(MomentSpec(half_order=1, degree=1, root_bound=5, weighting="shifted-prime"))

    def test_memory_ceiling(self, monkeypatch):
        monkeypatch.setattr(settings, "MEMORY_CEILING", 50)
        with pytest.raises(ResourceLimitError):
            moment_exact(MomentSpec(half_order=2, degree=2, root_bound=10))

    def test_width_overflow(self):
        with pytest.raises(ValueError):
            MomentSpec(half_order=1, degree=64, root_bound=2)


class TestMomentGrid:
    def test_parseval(self):
        weights = np.arange(1.0, 13.0)
        grid = power_grid(weights, 2, 512)
        result = moment_grid(grid, 2)
        assert result.exact
        assert result.value == pytest.approx(math.fsum(weights ** 2), rel=1e-9)

    def test_fine_grid_matches_exact(self):
        grid = power_grid(np.ones(20), 2, 2048)
        result = moment_grid(grid, 4)
        assert result.exact
        assert result.value == pytest.approx(moment_exact(MomentSpec(half_order=2, degree=2, root_bound=20)),
                                             rel=1e-9)

    def test_coarse_grid_aliases(self):
        exact = moment_exact(MomentSpec(half_order=2, degree=2, root_bound=20))
        result = moment_grid(power_grid(np.ones(20), 2, 64), 4)
        assert not result.exact
        assert result.value > exact

    def test_weighted_grid_matches_exact(self, small_table):
        spec = MomentSpec(half_order=2, degree=2, root_bound=30, weighting="shifted-prime")
        weights = shifted_prime_weights(small_table, 1, 2, 30)[1:]
        result = moment_grid(power_grid(weights, 2, 4096), 4)
        assert result.exact
        assert result.value == pytest.approx(moment_exact(spec, small_table), rel=1e-9)

    def test_odd_order(self):
        with pytest.raises(DomainError):
            moment_grid(_flat_grid(16), 3)


class TestVinogradov:
    def test_first_order(self):
        assert vinogradov_count(1, 3, 9) == 9

    def test_linear(self):
        assert vinogradov_count(2, 1, 3) == 19

    def test_brute_force(self):
        s, k, M = 3, 2, 5
        sums = {}
        for ys in itertools.product(range(1, M + 1), repeat=s):
            key = tuple(sum(y ** j for y in ys) for j in range(1, k + 1))
            sums[key] = sums.get(key, 0) + 1
        expected = sum(c * c for c in sums.values())
        # 6중 루프와 같은 값
        assert vinogradov_count(s, k, M) == expected
        assert expected <= moment_exact(MomentSpec(half_order=s, degree=k, root_bound=M))

    def test_diagonal_lower_bound(self):
        s, M = 2, 12
        assert vinogradov_count(s, 2, M) >= math.factorial(s) * math.comb(M, s)

    def test_shard_limit(self, monkeypatch):
        monkeypatch.setattr(settings, "MITM_SHARD_LIMIT", 100)
        with pytest.raises(ResourceLimitError):
            vinogradov_count(3, 2, 5)

    def test_invalid(self):
        with pytest.raises(DomainError):
            vinogradov_count(0, 2, 5)


class TestRestriction:
    def test_spike(self):
        assert restriction_ratio(_flat_grid(64), 3.0, 10) == pytest.approx(10.0 ** -2)

    def test_matches_moment(self):
        grid = power_grid(np.ones(20), 1, 128)
        scale = 20
        expected = moment_grid(grid, 4).value / scale ** 3
        assert restriction_ratio(grid, 4.0, scale) == pytest.approx(expected, rel=1e-12)

    def test_p_must_exceed_two(self):
        with pytest.raises(DomainError):
            restriction_ratio(_flat_grid(8), 2.0, 10)


class TestLargeSpectrum:
    def test_spike_everything_large(self):
        report = large_spectrum(_flat_grid(64, 2.5), 1e-9, 2.5)
        assert report.count == 64
        assert report.measure_estimate == 1.0

    def test_sweep_non_increasing(self):
        grid = power_grid(np.arange(1.0, 200.0), 1, 1024)
        peak = float(np.abs(grid.values).max())
        reports = spectrum_sweep(grid, [0.5, 0.05, 0.2, 0.9], peak)
        counts = [r.count for r in reports]
        assert [r.eta for r in reports] == [0.05, 0.2, 0.5, 0.9]
        assert counts == sorted(counts, reverse=True)
        assert counts[-1] >= 1

    def test_exponent(self):
        assert spectrum_exponent() == 2.0
        assert spectrum_exponent(2) == 8.0
        report = large_spectrum(_flat_grid(8), 0.5, 1.0, degree=1)
        assert report.normalized == pytest.approx(8 * 0.5 ** 4)

    def test_eta_range(self):
        with pytest.raises(DomainError):
            large_spectrum(_flat_grid(8), 0.0, 1.0)


@pytest.mark.parametrize("s,k,M", [(1, 3, 40), (2, 1, 40), (2, 2, 40), (3, 1, 40), (3, 2, 25), (2, 3, 30), (3, 3, 12)])
def test_grid_moment_identity(s, k, M):
    spec = MomentSpec(half_order=s, degree=k, root_bound=M)
    size = 1 << (2 * s * M ** k).bit_length()
    result = moment_grid(power_grid(np.ones(M), k, size), 2 * s)
    assert result.exact
    assert result.value == pytest.approx(moment_exact(spec), rel=1e-6)


def test_restriction_ratio_scaling(small_table):
    ratios = []
    for X in (5000, 10**4 - 1):
        grid = nu_hat_grid(lambda_progression(small_table, 1, 1, X), suggest_grid_size(2 * X))
        ratios.append(restriction_ratio(grid, 3.0, X))
    assert 0.5 < ratios[1] / ratios[0] < 2.0


def test_lambda_spectrum_scaling(medium_table):
    X = 10**5
    grid = nu_hat_grid(lambda_progression(medium_table, 1, 1, X), suggest_grid_size(2 * X))
    etas = [0.05, 0.1, 0.2, 0.4]
    reports = spectrum_sweep(grid, etas, float(X))
    counts = [r.count for r in reports]
    assert counts == sorted(counts, reverse=True)
    assert counts[-1] >= 1
    # count(η) ≤ C·η^{-3}, C = count(0.4)·0.4³
    cubic = [r.count * r.eta ** 3 for r in reports]
    assert max(cubic) <= 4 * cubic[-1]
    # 기본 지수 2에서는 네 값이 4배 안에 있음
    quadratic = [r.normalized for r in reports]
    assert max(quadratic) <= 4 * min(quadratic)
