# app/analytic/counting/patterns.py
# 패턴 개수 - p₁, p₁+(p₂-1)^k 직접 계산, 푸리에 항등식 계산, 패턴 없는 집합 생성

import logging
import math
from math import gcd
from typing import Iterable, Literal, Optional

import numpy as np

from app.analytic.arithmetic import complex_fsum, integer_root, totient_ratio
from app.analytic.fourier.expsum import nu_hat_grid, power_grid, shifted_prime_weights
from app.core.config import settings
from app.core.exceptions import DegenerateInputError, DomainError, OutOfRangeError
from app.models.patterns import PatternCount, PatternFreeResult, PrimeSubset
from app.models.sieve import LambdaTable, Progression, WeightedSequence

logger = logging.getLogger(__name__)

Strategy = Literal["greedy-descending", "greedy-ascending", "greedy-shuffled", "congruence-filter"]


def pattern_progression(N: int, k: int, q: int = 1, a: int = 1) -> Progression:
    """a + q^k·[N′] ⊆ [N], N′ = ⌊(N-a)/q^k⌋"""
    step = q ** k
    length = max(0, (N - a) // step)
    return Progression.reduced_progression(a, step, length, N)


def _check_setting(table: LambdaTable, prog: Progression, k: int, q: int) -> None:
    if prog.step != q ** k:
        raise DomainError(f"등차수열 공차 {prog.step}이(가) q^k = {q ** k}와 다릅니다")
    if gcd(prog.offset, q) != 1:
        raise DomainError(f"gcd(a, q) ≠ 1: a={prog.offset}, q={q}")
    if prog.last > table.limit:
        raise OutOfRangeError(f"등차수열 끝 {prog.last}이(가) 테이블 범위 {table.limit}를 벗어납니다")


def local_indicator(table: LambdaTable, A: PrimeSubset, prog: Progression, q: int) -> np.ndarray:
    """
    h(x) = (φ(q)/q)·Λ(a+q^k x)·1_𝒜(a+q^k x), x = 0..N′ (h[0] = 0)

    𝒜 중 등차수열 밖의 원소는 무시한다.
    """
    members = A.as_array()
    if len(members) and np.any(members > table.limit):
        raise OutOfRangeError(f"원소 {int(members.max())}이(가) 테이블 범위 {table.limit}를 벗어납니다")
    if len(members) and np.any(table.smallest_prime_factor[members] != members):
        raise DomainError("소수가 아닌 원소가 포함되어 있습니다")

    h = np.zeros(prog.length + 1, dtype=float)
    diff = members - prog.offset
    inside = (diff % prog.step == 0) & (diff // prog.step >= 1) & (diff // prog.step <= prog.length)
    idx = diff[inside] // prog.step
    h[idx] = totient_ratio(q) * table.values[members[inside]]
    return h


def prime_weights(table: LambdaTable, prog: Progression) -> np.ndarray:
    """등차수열 원소 위의 log p (소수가 아닌 원소는 0), x = 1..N′"""
    if prog.last > table.limit:
        raise OutOfRangeError(f"등차수열 끝 {prog.last}이(가) 테이블 범위 {table.limit}를 벗어납니다")
    members = prog.members()
    weights = np.array(table.values[members])
    weights[table.smallest_prime_factor[members] != members] = 0.0
    return weights


def weighted_density(table: LambdaTable, A: PrimeSubset, prog: Progression) -> float:
    """δ = Σ_{p∈𝒜∩P} log p / Σ_{p∈P} log p"""
    total = math.fsum(prime_weights(table, prog))
    if total <= 0:
        raise DegenerateInputError(f"소수 질량이 0인 등차수열입니다: {prog}")
    selected = [m for m in A.members if prog.contains(m)]
    if not selected:
        return 0.0
    return math.fsum(table.values[np.asarray(selected, dtype=np.int64)]) / total


def count_direct(table: LambdaTable, A: PrimeSubset, prog: Progression, k: int, q: int,
                 witness_cap: Optional[int] = None) -> PatternCount:
    """
    Σ_x Σ_y h(x)·w(y)·h(x + y^k) 와 쌍 (p₁, p₂) 개수

    Args:
        table: Λ 테이블
        A: 소수 부분집합
        prog: a + q^k·[N′]
        k: 차수
        q: 법

    Returns:
        weighted, unweighted(p₂가 소수 거듭제곱), prime_pairs(p₂가 소수), witnesses
    """
    _check_setting(table, prog, k, q)
    witness_cap = settings.WITNESS_CAP if witness_cap is None else witness_cap
    length = prog.length
    M = integer_root(length, k)
    h = local_indicator(table, A, prog, q)
    weights = shifted_prime_weights(table, q, k, M)

    in_set = h > 0
    positions = np.flatnonzero(in_set)
    terms, unweighted, prime_pairs, witnesses = [], 0, 0, []
    for y in np.flatnonzero(weights):
        shift = int(y) ** k
        if shift >= length or len(positions) == 0:
            break
        base = positions[positions + shift <= length]
        hits = base[in_set[base + shift]]
        if len(hits) == 0:
            continue
        terms.append(weights[y] * math.fsum(h[hits] * h[hits + shift]))
        unweighted += len(hits)
        p2 = q * int(y) + 1
        if table.is_prime(p2):
            prime_pairs += len(hits)
            for x in hits[:max(0, witness_cap - len(witnesses))]:
                witnesses.append((prog.offset + prog.step * int(x), p2))

    return PatternCount(
        weighted=math.fsum(terms),
        unweighted=unweighted,
        prime_pairs=prime_pairs,
        witnesses=witnesses,
    )


def count_fourier(table: LambdaTable, A: PrimeSubset, prog: Progression, k: int, q: int,
                  grid_size: int) -> PatternCount:
    """
    (1/N̄)·Σ_j ĥ(-j)·ĥ(j)·S(j) 로 가중 개수 계산

    N̄ > N′ + M^k 이면 직교성에 의해 정확하다.
    """
    _check_setting(table, prog, k, q)
    length = prog.length
    M = integer_root(length, k)
    exact = grid_size > length + M ** k
    if not exact:
        logger.warning(f"격자 {grid_size}점이 N′+M^k = {length + M ** k} 이하라 순환 겹침이 생깁니다")

    h = local_indicator(table, A, prog, q)
    sequence = WeightedSequence(values=h[1:], descriptor="indicator-weighted", progression=prog)
    h_hat = nu_hat_grid(sequence, grid_size, allow_wraparound=True).values
    s_hat = power_grid(shifted_prime_weights(table, q, k, M)[1:], k, grid_size).values
    total = complex_fsum(np.conj(h_hat) * h_hat * s_hat) / grid_size
    return PatternCount(weighted=total.real, exact=exact)


def _difference_set(table: LambdaTable, length: int, k: int, q: int) -> np.ndarray:
    """Λ(qy+1) > 0 인 y에 대한 y^k 값"""
    M = integer_root(length, k)
    weights = shifted_prime_weights(table, q, k, M)
    return np.flatnonzero(weights).astype(np.int64) ** k


def _greedy(primes: Iterable[int], differences: np.ndarray, length: int) -> list:
    """충돌(두 원소 차가 y^k)이 없도록 소수를 차례로 추가"""
    chosen = np.zeros(length + 2, dtype=bool)
    members = []
    for p in primes:
        below = p - differences
        above = p + differences
        if chosen[below[below >= 0]].any() or chosen[above[above <= length + 1]].any():
            continue
        chosen[p] = True
        members.append(p)
    return members


def find_pattern_free(table: LambdaTable, N: int, k: int, strategy: Strategy = "greedy-descending",
                      modulus: Optional[int] = None, residues: Optional[Iterable[int]] = None,
                      seed: Optional[int] = None) -> PatternFreeResult:
    """
    [N] 안의 소수 부분집합 생성 후 count_direct로 검증

    Args:
        table: Λ 테이블 (N ≤ limit)
        N: 구간 상한
        k: 차수
        strategy: greedy-descending | greedy-ascending | greedy-shuffled | congruence-filter
        modulus, residues: congruence-filter 매개변수
        seed: greedy-shuffled 시드

    Returns:
        부분집합과 정직한 검증 결과
    """
    if N > table.limit:
        raise OutOfRangeError(f"N={N}이(가) 테이블 범위 {table.limit}를 벗어납니다")
    prog = pattern_progression(N, k)
    spf = table.smallest_prime_factor[:N + 1]
    primes = [int(p) for p in np.flatnonzero(spf == np.arange(N + 1)) if p >= 2]

    if strategy == "congruence-filter":
        if not modulus or residues is None:
            raise DomainError("congruence-filter에는 modulus와 residues가 필요합니다")
        allowed = {r % modulus for r in residues}
        members = [p for p in primes if p % modulus in allowed]
    else:
        differences = _difference_set(table, prog.length, k, 1)
        if strategy == "greedy-descending":
            order = primes[::-1]
        elif strategy == "greedy-ascending":
            order = primes
        elif strategy == "greedy-shuffled":
            rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
            order = [primes[i] for i in rng.permutation(len(primes))]
        else:
            raise DomainError(f"알 수 없는 전략입니다: {strategy}")
        members = _greedy(order, differences, N)

    subset = PrimeSubset(ambient=N, members=members)
    verdict = count_direct(table, subset, prog, k, 1)
    logger.info(f"부분집합 생성 ({strategy}): {len(members)}/{len(primes)}개, 패턴 {verdict.prime_pairs}개")
    return PatternFreeResult(
        subset=subset,
        strategy=strategy,
        pattern_free=verdict.prime_pairs == 0,
        density=len(members) / len(primes) if primes else 0.0,
        prime_total=len(primes),
    )
