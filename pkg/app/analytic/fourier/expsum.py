# app/analytic/fourier/expsum.py
# 지수합 계산 - S_d(α) 점별 계산, FFT 격자 계산, 가중 수열의 푸리에 변환

import logging
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from app.analytic.arithmetic import complex_fsum, e, powers_mod, totient_ratio
from app.core.config import settings
from app.core.exceptions import DomainError, OutOfRangeError, ResourceLimitError
from app.models.expsum import ExpSumSpec, FrequencyGrid, SpotCheckReport
from app.models.gauss import ComplexValue
from app.models.sieve import LambdaTable, WeightedSequence

logger = logging.getLogger(__name__)

Frequency = Union[float, Fraction]


def shifted_prime_weights(table: LambdaTable, d: int, k: int, M: int) -> np.ndarray:
    """
    w(y) = (φ(d)/d)·k·y^{k-1}·Λ(dy+1), y = 0..M (w[0] = 0)

    Args:
        table: Λ 테이블 (dM+1 ≤ limit)
        d: 법
        k: 차수
        M: y 상한

    Returns:
        길이 M+1 실수 배열
    """
    weights = np.zeros(max(M, 0) + 1, dtype=float)
    if M < 1:
        return weights
    top = d * M + 1
    if top > table.limit:
        raise OutOfRangeError(f"dM+1={top}이(가) 테이블 범위 {table.limit}를 벗어납니다")
    y = np.arange(1, M + 1, dtype=float)
    weights[1:] = totient_ratio(d) * k * y ** (k - 1) * table.values[d + 1:top + 1:d]
    return weights


def _phases(exponents: np.ndarray, alpha: Frequency) -> np.ndarray:
    """(n·α) mod 1, 유리수 α는 정수 나머지로 정확하게 계산"""
    if isinstance(alpha, Fraction):
        num, den = alpha.numerator, alpha.denominator
        residues = (exponents % den) * (num % den) % den
        return residues / den
    frac = float(alpha) % 1.0
    return np.mod(exponents.astype(float) * frac, 1.0)


def s_d_point(table: LambdaTable, spec: ExpSumSpec, alpha: Frequency) -> ComplexValue:
    """S_d(α) = Σ_{y≤M} w(y)·e(y^k α)"""
    M = spec.root_bound
    if M < 1:
        return ComplexValue(re=0.0, im=0.0)
    weights = shifted_prime_weights(table, spec.modulus, spec.degree, M)
    y = np.arange(1, M + 1, dtype=np.int64)
    support = weights[1:] > 0
    exponents = y[support] ** spec.degree
    terms = weights[1:][support] * e(_phases(exponents, alpha))
    return ComplexValue.from_complex(complex_fsum(terms))


def s_d_many(table: LambdaTable, spec: ExpSumSpec, alphas: np.ndarray,
             chunk_terms: int = 1 << 22) -> np.ndarray:
    """여러 실수 주파수에서 S_d를 행렬 곱으로 계산 (표본 조사용, 보정 합산 없음)"""
    alphas = np.mod(np.asarray(alphas, dtype=float), 1.0)
    M = spec.root_bound
    if M < 1 or len(alphas) == 0:
        return np.zeros(len(alphas), dtype=complex)
    weights = shifted_prime_weights(table, spec.modulus, spec.degree, M)[1:]
    support = np.flatnonzero(weights > 0)
    exponents = ((support + 1).astype(np.int64) ** spec.degree).astype(float)
    weights = weights[support]

    out = np.empty(len(alphas), dtype=complex)
    rows = max(1, chunk_terms // max(1, len(support)))
    for start in range(0, len(alphas), rows):
        block = alphas[start:start + rows]
        phases = np.mod(np.outer(block, exponents), 1.0)
        out[start:start + rows] = e(phases) @ weights
    return out


def _check_grid_size(grid_size: int) -> None:
    if grid_size < 1:
        raise DomainError(f"격자 크기는 1 이상이어야 합니다: {grid_size}")
    if 16 * grid_size > settings.GRID_BYTES_CEILING:
        raise ResourceLimitError(
            f"격자 {grid_size}점({16 * grid_size} bytes)이 상한 {settings.GRID_BYTES_CEILING}을 초과합니다"
        )


def s_d_grid(table: LambdaTable, spec: ExpSumSpec, grid_size: int) -> FrequencyGrid:
    """
    S_d(j/N̄), j = 0..N̄-1 를 FFT 한 번으로 계산

    가중치 w(y)를 y^k mod N̄ 위치에 더한 뒤 역방향 변환한다.
    """
    _check_grid_size(grid_size)
    logger.info(f"S_d 격자 계산: N′={spec.ambient}, d={spec.modulus}, k={spec.degree}, N̄={grid_size}")
    weights = shifted_prime_weights(table, spec.modulus, spec.degree, spec.root_bound)
    return power_grid(weights[1:], spec.degree, grid_size)


def power_grid(weights: np.ndarray, degree: int, grid_size: int) -> FrequencyGrid:
    """Σ_{y=1}^{M} weights[y-1]·e(y^k j/N̄) 를 모든 j에 대해 계산"""
    _check_grid_size(grid_size)
    M = len(weights)
    if M < 1:
        return FrequencyGrid(size=grid_size, values=np.zeros(grid_size, dtype=complex), degree=0)
    y = np.arange(1, M + 1, dtype=np.int64)
    slots = powers_mod(y, degree, grid_size)
    accumulated = np.bincount(slots, weights=np.asarray(weights, dtype=float), minlength=grid_size)
    values = grid_size * np.fft.ifft(accumulated)
    return FrequencyGrid(size=grid_size, values=values, degree=M ** degree)


def nu_hat_grid(seq: WeightedSequence, grid_size: int, allow_wraparound: bool = False) -> FrequencyGrid:
    """ν̂(j/N̄) = Σ_x ν(x)·e(xj/N̄), x는 수열의 로컬 인덱스 1..X"""
    _check_grid_size(grid_size)
    length = seq.length
    if length > grid_size and not allow_wraparound:
        raise DomainError(f"수열 길이 {length}이(가) 격자 크기 {grid_size}보다 큽니다 (wraparound 미허용)")
    slots = np.arange(1, length + 1, dtype=np.int64) % grid_size
    accumulated = np.bincount(slots, weights=seq.values, minlength=grid_size)
    values = grid_size * np.fft.ifft(accumulated)
    return FrequencyGrid(size=grid_size, values=values, degree=length)


def suggest_grid_size(resolution: float) -> int:
    """resolution보다 큰 가장 작은 2의 거듭제곱"""
    if resolution < 0:
        return 1
    return 1 << int(resolution).bit_length()


def spot_check(table: LambdaTable, spec: ExpSumSpec, grid: FrequencyGrid,
               count: Optional[int] = None, seed: Optional[int] = None) -> SpotCheckReport:
    """무작위 격자점에서 격자 값과 점별 값의 최대 차이"""
    count = count or settings.SPOT_CHECK_COUNT
    rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    indices = sorted(int(j) for j in rng.integers(0, grid.size, size=count))
    worst = 0.0
    for j in indices:
        point = s_d_point(table, spec, Fraction(j, grid.size)).to_complex()
        worst = max(worst, abs(point - grid.values[j]))
    logger.debug(f"격자 점검: {count}점, 최대 오차 {worst:.3e}")
    return SpotCheckReport(count=count, max_error=worst, indices=indices)
