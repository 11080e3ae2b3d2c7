import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from app.analytic.fourier.expsum import (
    nu_hat_grid,
    power_grid,
    s_d_grid,
    s_d_many,
    s_d_point,
    shifted_prime_weights,
    spot_check,
    suggest_grid_size,
)
from app.analytic.fourier.grid_io import read_grid, sidecar_path, write_grid
from app.analytic.primes.sieve import build_lambda_table, lambda_progression, psi
from app.core.config import settings
from app.core.exceptions import DomainError, ResourceLimitError
from app.models.expsum import ExpSumSpec, RationalFrequency
from app.models.sieve import WeightedSequence


class TestPointwise:
    def test_zero_frequency(self, small_table):
        spec = ExpSumSpec(ambient=10, modulus=1, degree=1)
        value = s_d_point(small_table, spec, 0.0)
        assert value.re == pytest.approx(psi(small_table, 11), rel=1e-14)
        assert value.im == 0.0

    def test_empty(self, small_table):
        spec = ExpSumSpec(ambient=0, modulus=1, degree=1)
        assert s_d_point(small_table, spec, 0.3).abs == 0.0

    def test_matches_reversed_resummation(self, small_table):
        spec = ExpSumSpec(ambient=100, modulus=2, degree=2)
        assert spec.root_bound == 10
        expected = 0j
        for y in range(spec.root_bound, 0, -1):
            weight = 0.5 * 2 * y * small_table.value(2 * y + 1)
            expected += weight * cmath.exp(2j * math.pi * y * y / 3)
        value = s_d_point(small_table, spec, Fraction(1, 3))
        assert value.to_complex() == pytest.approx(expected, abs=1e-10)

    def test_float_and_fraction_agree(self, small_table):
        spec = ExpSumSpec(ambient=5000, modulus=1, degree=1)
        exact = s_d_point(small_table, spec, Fraction(2, 7)).to_complex()
        approx = s_d_point(small_table, spec, 2 / 7).to_complex()
        assert approx == pytest.approx(exact, abs=1e-6 * 5000)

    def test_many_matches_point(self, small_table):
        spec = ExpSumSpec(ambient=3000, modulus=3, degree=2)
        alphas = np.array([0.0, 0.125, 0.3, 0.77])
        batch = s_d_many(small_table, spec, alphas)
        for alpha, value in zip(alphas, batch):
            assert value == pytest.approx(s_d_point(small_table, spec, float(alpha)).to_complex(), abs=1e-8)

    @pytest.mark.parametrize("k,d", [(1, 1), (2, 1), (3, 2)])
    def test_conjugate_symmetry_and_peak(self, small_table, k, d):
        spec = ExpSumSpec(ambient=4000, modulus=d, degree=k)
        peak = s_d_point(small_table, spec, 0.0).re
        for num, den in [(1, 3), (2, 7), (5, 12), (13, 97)]:
            value = s_d_point(small_table, spec, Fraction(num, den)).to_complex()
            mirrored = s_d_point(small_table, spec, Fraction(-num, den)).to_complex()
            assert mirrored == pytest.approx(value.conjugate(), abs=1e-9 * peak)
            assert abs(value) <= peak * (1 + 1e-12)
        for alpha in (0.123, 0.5, 0.987654):
            value = s_d_point(small_table, spec, alpha).to_complex()
            mirrored = s_d_point(small_table, spec, -alpha).to_complex()
            assert mirrored == pytest.approx(value.conjugate(), abs=1e-9 * peak)
            assert abs(value) <= peak * (1 + 1e-12)

    def test_weights_shape(self, small_table):
        weights = shifted_prime_weights(small_table, 2, 3, 20)
        assert len(weights) == 21 and weights[0] == 0.0
        assert weights[1] == pytest.approx(0.5 * 3 * math.log(3))


class TestGrid:
    def test_single_point_grid(self, small_table):
        spec = ExpSumSpec(ambient=500, modulus=1, degree=2)
        grid = s_d_grid(small_table, spec, 1)
        assert grid.values[0] == pytest.approx(s_d_point(small_table, spec, 0.0).to_complex(), rel=1e-12)

    def test_spot_check(self, small_table):
        spec = ExpSumSpec(ambient=10**4 - 1, modulus=1, degree=2)
        grid = s_d_grid(small_table, spec, 2**14)
        report = spot_check(small_table, spec, grid, count=16, seed=3)
        assert report.count == 16
        assert report.max_error < 1e-8 * 10**4

    @pytest.mark.slow
    def test_spot_check_large(self, medium_table):
        spec = ExpSumSpec(ambient=10**4, modulus=1, degree=2)
        grid = s_d_grid(medium_table, spec, 2**18)
        report = spot_check(medium_table, spec, grid, count=64, seed=1)
        assert report.max_error < 1e-8 * 10**4

    def test_zero_weights(self):
        grid = power_grid(np.zeros(5), 2, 64)
        assert np.all(grid.values == 0)

    def test_empty_sum_grid(self):
        spec = ExpSumSpec(ambient=0, modulus=1, degree=1)
        grid = s_d_grid(build_lambda_table(1), spec, 16)
        assert np.all(grid.values == 0)

    def test_grid_size_ceiling(self, small_table, monkeypatch):
        monkeypatch.setattr(settings, "GRID_BYTES_CEILING", 1024)
        spec = ExpSumSpec(ambient=100, modulus=1, degree=1)
        with pytest.raises(ResourceLimitError):
            s_d_grid(small_table, spec, 128)

    def test_suggest_grid_size(self):
        assert suggest_grid_size(0) == 1
        assert suggest_grid_size(1600) == 2048
        assert suggest_grid_size(2048) == 4096


class TestNuHat:
    def test_spike(self):
        values = np.zeros(50)
        values[16] = 2.5
        grid = nu_hat_grid(WeightedSequence(values=values, descriptor="indicator-weighted"), 64)
        np.testing.assert_allclose(np.abs(grid.values), 2.5, rtol=1e-12)

    def test_zero_frequency_is_psi(self, small_table):
        seq = lambda_progression(small_table, 1, 1, 100)
        grid = nu_hat_grid(seq, 256)
        assert grid.values[0].real == pytest.approx(psi(small_table, 101), rel=1e-12)

    def test_parseval(self, small_table):
        seq = lambda_progression(small_table, 1, 1, 2000)
        signs = np.random.default_rng(7).choice([-1.0, 1.0], size=seq.length)
        signed = WeightedSequence(values=signs * seq.values, descriptor="balanced")
        grid = nu_hat_grid(signed, 4096)
        lhs = math.fsum(np.abs(grid.values) ** 2) / grid.size
        rhs = math.fsum(signed.values ** 2)
        assert lhs == pytest.approx(rhs, rel=1e-9)

    def test_wraparound_refused(self):
        seq = WeightedSequence(values=np.ones(100), descriptor="indicator-weighted")
        with pytest.raises(DomainError):
            nu_hat_grid(seq, 64)
        assert nu_hat_grid(seq, 64, allow_wraparound=True).size == 64


class TestGridFile:
    def test_write_and_read(self, small_table, tmp_path):
        spec = ExpSumSpec(ambient=400, modulus=1, degree=2)
        grid = s_d_grid(small_table, spec, 128)
        path = write_grid(grid, tmp_path / "sd.bin", {"N": 400, "k": 2})

        raw = path.read_bytes()
        assert len(raw) == 8 + 16 * 128
        assert int(np.frombuffer(raw[:8], dtype="<u8")[0]) == 128
        assert sidecar_path(path).exists()

        loaded = read_grid(path)
        assert loaded.size == 128 and loaded.degree == grid.degree
        np.testing.assert_array_equal(loaded.values, grid.values)

    def test_truncated_file(self, tmp_path):
        path = tmp_path / "broken.bin"
        path.write_bytes(np.array([4], dtype="<u8").tobytes() + b"\x00" * 16)
        with pytest.raises(DomainError):
            read_grid(path)


class TestRationalFrequency:
    def test_reduced(self):
        with pytest.raises(ValueError):
            RationalFrequency(numerator=2, denominator=4)

    def test_offset_range(self):
        with pytest.raises(ValueError):
            RationalFrequency(numerator=1, denominator=3, offset=0.6)
