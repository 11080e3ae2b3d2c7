import math

import numpy as np
import pytest
from sympy import factorint, isprime, primerange

from app.analytic.counting.patterns import (
    count_direct,
    count_fourier,
    find_pattern_free,
    pattern_progression,
    weighted_density,
)
from app.core.exceptions import DegenerateInputError, DomainError, OutOfRangeError
from app.models.patterns import PrimeSubset
from app.models.sieve import Progression

LOG2, LOG3, LOG5, LOG7 = math.log(2), math.log(3), math.log(5), math.log(7)


def _primes(N: int, modulus: int = 1, residue: int = 0) -> PrimeSubset:
    return PrimeSubset(ambient=N, members=[p for p in primerange(2, N + 1) if p % modulus == residue % modulus])


def _is_prime_power(n: int) -> bool:
    return n > 1 and len(factorint(n)) == 1


class TestCountDirect:
    def test_small_example(self, small_table):
        prog = pattern_progression(10, 1)
        count = count_direct(small_table, PrimeSubset(ambient=10, members=[2, 3, 5, 7]), prog, 1, 1)
        assert count.unweighted == 5
        assert count.prime_pairs == 4
        assert count.witnesses == [(2, 2), (3, 3), (5, 3), (3, 5)]
        expected = (LOG2 * LOG2 * LOG3
                    + LOG3 * (LOG3 * LOG5 + LOG5 * LOG7)
                    + LOG2 * LOG2 * LOG5
                    + LOG5 * LOG3 * LOG7)
        assert count.weighted == pytest.approx(expected, rel=1e-12)

    def test_empty_set(self, small_table):
        count = count_direct(small_table, PrimeSubset(ambient=100), pattern_progression(100, 2), 2, 1)
        assert count.weighted == 0.0
        assert count.unweighted == 0
        assert count.witnesses == []

    def test_quadratic_brute_force(self, small_table):
        N = 10**4
        expected = sum(1 for p in primerange(2, N + 1)
                       for y in range(1, math.isqrt(N) + 1)
                       if p + y * y <= N and _is_prime_power(y + 1) and isprime(p + y * y))
        count = count_direct(small_table, _primes(N), pattern_progression(N, 2), 2, 1)
        assert count.unweighted == expected

    def test_witness_cap(self, small_table):
        count = count_direct(small_table, _primes(2000), pattern_progression(2000, 1), 1, 1, witness_cap=3)
        assert len(count.witnesses) == 3
        for p1, p2 in count.witnesses:
            assert isprime(p1) and isprime(p2) and isprime(p1 + p2 - 1)

    def test_modulus_progression(self, small_table):
        prog = pattern_progression(5000, 1, q=3, a=2)
        assert prog.step == 3 and prog.offset == 2
        A = PrimeSubset(ambient=5000, members=[p for p in primerange(3, 5001) if prog.contains(p)])
        count = count_direct(small_table, A, prog, 1, 3)
        assert count.unweighted > 0

    def test_step_mismatch(self, small_table):
        with pytest.raises(DomainError):
            count_direct(small_table, _primes(50), pattern_progression(50, 1), 1, 2)

    def test_not_prime_member(self, small_table):
        with pytest.raises(DomainError):
            count_direct(small_table, PrimeSubset(ambient=10, members=[3, 4]), pattern_progression(10, 1), 1, 1)

    def test_out_of_table(self, small_table):
        with pytest.raises(OutOfRangeError):
            count_direct(small_table, PrimeSubset(ambient=10**5), pattern_progression(10**5, 1), 1, 1)


class TestCountFourier:
    def test_matches_direct(self, small_table):
        N = 10**4
        A = _primes(N, 4, 1)
        prog = pattern_progression(N, 1)
        direct = count_direct(small_table, A, prog, 1, 1)
        fourier = count_fourier(small_table, A, prog, 1, 1, 32768)
        assert fourier.exact
        assert fourier.weighted == pytest.approx(direct.weighted, rel=1e-6)

    def test_quadratic_matches_direct(self, small_table):
        N = 3000
        A = _primes(N, 3, 2)
        prog = pattern_progression(N, 2)
        direct = count_direct(small_table, A, prog, 2, 1)
        fourier = count_fourier(small_table, A, prog, 2, 1, 8192)
        assert fourier.weighted == pytest.approx(direct.weighted, rel=1e-6)

    def test_small_grid_aliases(self, small_table):
        N = 10**4
        A = _primes(N, 4, 1)
        prog = pattern_progression(N, 1)
        direct = count_direct(small_table, A, prog, 1, 1)
        fourier = count_fourier(small_table, A, prog, 1, 1, 1024)
        assert fourier.exact is False
        assert fourier.weighted > direct.weighted


class TestDensity:
    def test_full_and_partial(self, small_table):
        prog = pattern_progression(1000, 1)
        assert weighted_density(small_table, _primes(1000), prog) == pytest.approx(1.0)
        assert 0.3 < weighted_density(small_table, _primes(1000, 4, 1), prog) < 0.7
        assert weighted_density(small_table, PrimeSubset(ambient=1000), prog) == 0.0

    def test_no_primes(self, small_table):
        with pytest.raises(DegenerateInputError):
            weighted_density(small_table, PrimeSubset(ambient=10), Progression(offset=2, step=2, length=3, ambient=10))


class TestPatternFree:
    def test_greedy_descending_small(self, small_table):
        result = find_pattern_free(small_table, 10, 2)
        assert result.subset.members == [2, 5, 7]
        assert result.pattern_free
        assert result.prime_total == 4

    def test_greedy_ascending(self, small_table):
        result = find_pattern_free(small_table, 1000, 1, strategy="greedy-ascending")
        assert result.pattern_free
        assert 0 < result.density < 1

    def test_shuffled_seeded(self, small_table):
        first = find_pattern_free(small_table, 2000, 2, strategy="greedy-shuffled", seed=4)
        again = find_pattern_free(small_table, 2000, 2, strategy="greedy-shuffled", seed=4)
        assert first.subset.members == again.subset.members
        assert first.pattern_free

    def test_congruence_filter_is_honest(self, small_table):
        N = 1000
        result = find_pattern_free(small_table, N, 1, strategy="congruence-filter", modulus=4, residues=[1])
        verdict = count_direct(small_table, result.subset, pattern_progression(N, 1), 1, 1)
        assert result.pattern_free == (verdict.prime_pairs == 0)
        assert result.pattern_free is False

    def test_prime_power_shift_is_not_a_pattern(self, small_table):
        # 11 - 3 = 8 = 9 - 1, 9는 소수가 아님
        result = find_pattern_free(small_table, 12, 1, strategy="congruence-filter", modulus=8, residues=[3])
        assert result.subset.members == [3, 11]
        verdict = count_direct(small_table, result.subset, pattern_progression(12, 1), 1, 1)
        assert verdict.unweighted == 1
        assert verdict.prime_pairs == 0
        assert result.pattern_free

    def test_filter_needs_modulus(self, small_table):
        with pytest.raises(DomainError):
            find_pattern_free(small_table, 100, 1, strategy="congruence-filter")

    def test_out_of_table(self, small_table):
        with pytest.raises(OutOfRangeError):
            find_pattern_free(small_table, 10**5, 1)


@pytest.mark.parametrize("seed", range(50))
def test_fourier_identity_random_sets(small_table, seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(500, 10**4 + 1))
    k = int(rng.integers(1, 4))
    q = int(rng.integers(1, 6))
    a = q + 1 if q > 1 else 1
    prog = pattern_progression(N, k, q, a)
    candidates = [int(n) for n in prog.members() if isprime(int(n))]
    A = PrimeSubset(ambient=N, members=[p for p in candidates if rng.random() < 0.6])
    direct = count_direct(small_table, A, prog, k, q)
    M = int(round(prog.length ** (1 / k)))
    fourier = count_fourier(small_table, A, prog, k, q, 1 << (prog.length + (M + 1) ** k).bit_length())
    assert fourier.exact
    assert fourier.weighted == pytest.approx(direct.weighted, rel=1e-6, abs=1e-9)


@pytest.mark.parametrize("k,q", [(1, 1), (2, 1), (1, 2), (2, 3)])
def test_counts_monotone_in_subset(small_table, k, q):
    rng = np.random.default_rng(7 * k + q)
    N = 5000
    prog = pattern_progression(N, k, q, 1)
    primes = [int(n) for n in prog.members() if isprime(int(n))]
    larger = [p for p in primes if rng.random() < 0.7]
    smaller = [p for p in larger if rng.random() < 0.6]
    big = count_direct(small_table, PrimeSubset(ambient=N, members=larger), prog, k, q)
    small = count_direct(small_table, PrimeSubset(ambient=N, members=smaller), prog, k, q)
    assert small.weighted <= big.weighted + 1e-9
    assert small.unweighted <= big.unweighted
    assert small.prime_pairs <= big.prime_pairs
