# app/analytic/counting/moments.py
# 모멘트 계산 - 정확한 해 개수(중간 만남), 격자 모멘트, Vinogradov 연립계, 제한 비율, 큰 스펙트럼

import logging
import math
from typing import Iterable, List, Optional

import numpy as np

from app.analytic.fourier.expsum import shifted_prime_weights
from app.core.config import settings
from app.core.exceptions import DomainError, ResourceLimitError
from app.models.expsum import FrequencyGrid
from app.models.moments import MomentGridResult, MomentSpec, SpectrumReport
from app.models.sieve import LambdaTable

logger = logging.getLogger(__name__)


def _spec_weights(spec: MomentSpec, table: Optional[LambdaTable]) -> np.ndarray:
    """y = 1..M 의 가중치"""
    if spec.weighting == "unweighted":
        return np.ones(spec.root_bound, dtype=np.int64)
    if table is None:
        raise DomainError("shifted-prime 가중 모멘트에는 Λ 테이블이 필요합니다")
    return shifted_prime_weights(table, spec.modulus, spec.degree, spec.root_bound)[1:]


def power_sum_distribution(spec: MomentSpec, table: Optional[LambdaTable] = None) -> np.ndarray:
    """
    f(v) = Σ_{Σy_i^k = v} Π w(y_i) (길이 s인 튜플) 을 정수 인덱스 배열로 계산

    Args:
        spec: 모멘트 매개변수
        table: shifted-prime 가중일 때 필요한 Λ 테이블

    Returns:
        인덱스 v = 0..s·M^k 의 배열
    """
    size = spec.key_range + 1
    if size > settings.MEMORY_CEILING:
        raise ResourceLimitError(f"멱합 범위 {size}이(가) 메모리 상한 {settings.MEMORY_CEILING}을 초과합니다")

    weights = _spec_weights(spec, table)
    powers = np.arange(1, spec.root_bound + 1, dtype=np.int64) ** spec.degree
    nonzero = np.flatnonzero(weights)

    current = np.zeros(size, dtype=weights.dtype)
    current[0] = 1
    for step in range(spec.half_order):
        logger.debug(f"멱합 분포 합성 {step + 1}/{spec.half_order}")
        following = np.zeros_like(current)
        for i in nonzero:
            shift = int(powers[i])
            following[shift:] += weights[i] * current[:size - shift]
        current = following
    return current


def moment_exact(spec: MomentSpec, table: Optional[LambdaTable] = None) -> float:
    """∫|Σ w(y)e(y^kα)|^{2s} dα = Σ_v f(v)²"""
    logger.info(f"정확한 모멘트 계산: s={spec.half_order}, k={spec.degree}, M={spec.root_bound}, "
                f"weighting={spec.weighting}")
    distribution = power_sum_distribution(spec, table)
    if distribution.dtype.kind == "i":
        return float(int(np.dot(distribution, distribution)))
    return math.fsum(distribution * distribution)


def moment_grid(grid: FrequencyGrid, order: int) -> MomentGridResult:
    """(1/N̄)·Σ_j |values[j]|^order, N̄ > order·degree 이면 정확"""
    if order < 2 or order % 2:
        raise DomainError(f"order는 2 이상의 짝수여야 합니다: {order}")
    value = math.fsum(np.abs(grid.values) ** order) / grid.size
    exact = grid.size > order * grid.degree
    if not exact:
        logger.warning(f"격자 {grid.size}점이 정확성 기준 {order}·{grid.degree}보다 작습니다")
    return MomentGridResult(value=value, order=order, exact=exact)


def vinogradov_count(s: int, k: int, M: int) -> int:
    """
    j = 1..k 모든 차수의 멱합이 같은 2s-튜플 개수

    길이 s 튜플의 멱합 벡터를 정확한 정수로 모은 뒤 Σ (도수)² 로 센다.
    """
    if s < 1 or k < 1 or M < 0:
        raise DomainError(f"s ≥ 1, k ≥ 1, M ≥ 0 이어야 합니다: s={s}, k={k}, M={M}")
    if M == 0:
        return 0
    tuples = M ** s
    if tuples > settings.MITM_SHARD_LIMIT:
        raise ResourceLimitError(f"튜플 {tuples}개가 샤드 상한 {settings.MITM_SHARD_LIMIT}을 초과합니다")

    grids = np.meshgrid(*[np.arange(1, M + 1, dtype=np.int64)] * s, indexing="ij")
    ys = np.stack([g.ravel() for g in grids], axis=1)
    keys = np.stack([np.sum(ys ** j, axis=1) for j in range(1, k + 1)], axis=1)
    _, counts = np.unique(keys, axis=0, return_counts=True)
    return int(sum(int(c) * int(c) for c in counts))


def restriction_ratio(grid: FrequencyGrid, p: float, scale: int) -> float:
    """((1/N̄)·Σ|values|^p) / scale^{p-1}"""
    if p <= 2:
        raise DomainError(f"p는 2보다 커야 합니다: {p}")
    if scale < 1:
        raise DomainError(f"scale은 양의 정수여야 합니다: {scale}")
    mean = math.fsum(np.abs(grid.values) ** p) / grid.size
    return mean / float(scale) ** (p - 1)


def spectrum_exponent(degree: Optional[int] = None) -> float:
    """정규화 지수: S_d는 k(k+1)+2, Λ로 눌린 수열은 2"""
    return float(degree * (degree + 1) + 2) if degree else 2.0


def large_spectrum(grid: FrequencyGrid, eta: float, peak: float,
                   exponent: Optional[float] = None, degree: Optional[int] = None) -> SpectrumReport:
    """
    |values[j]| ≥ η·peak 인 격자점 개수

    Args:
        grid: 주파수 격자
        eta: 0 < η ≤ 1
        peak: 정규화 값 (N 또는 X)
        exponent: 정규화 지수 (None이면 degree로 결정)
        degree: S_d의 차수 k

    Returns:
        개수와 count·η^exponent
    """
    if not 0 < eta <= 1:
        raise DomainError(f"eta는 (0, 1] 안에 있어야 합니다: {eta}")
    if peak <= 0:
        raise DomainError(f"peak는 양수여야 합니다: {peak}")
    exponent = spectrum_exponent(degree) if exponent is None else exponent
    count = int(np.count_nonzero(np.abs(grid.values) >= eta * peak))
    return SpectrumReport(
        eta=eta,
        count=count,
        measure_estimate=count / grid.size,
        normalized=count * eta ** exponent,
        exponent=exponent,
        grid_size=grid.size,
    )


def spectrum_sweep(grid: FrequencyGrid, etas: Iterable[float], peak: float,
                   exponent: Optional[float] = None, degree: Optional[int] = None) -> List[SpectrumReport]:
    return [large_spectrum(grid, eta, peak, exponent, degree) for eta in sorted(etas)]
