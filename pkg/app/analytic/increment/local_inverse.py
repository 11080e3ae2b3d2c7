# app/analytic/increment/local_inverse.py
# 국소 역정리 단계 - 균형 함수, 주호 질량 집중, 평행이동 탐색, 역상관 측정

import logging
import math
from typing import Optional

import numpy as np

from app.analytic.arithmetic import exact_root, integer_root, totient_ratio
from app.analytic.counting.patterns import local_indicator, prime_weights
from app.analytic.fourier.arcs import default_cutoff
from app.analytic.fourier.expsum import nu_hat_grid, power_grid, shifted_prime_weights, suggest_grid_size
from app.core.exceptions import DegenerateInputError, DomainError
from app.models.arcs import ArcParameters
from app.models.increment import (
    BalancedFunction,
    InverseCorrelationReport,
    MassConcentrationReport,
    TranslateReport,
)
from app.models.patterns import PrimeSubset
from app.models.sieve import LambdaTable, Progression, WeightedSequence

logger = logging.getLogger(__name__)


def default_arc_parameters(length: int, cutoff: Optional[int] = None,
                           width_constant: float = 1.0) -> ArcParameters:
    """N′ = length 위의 주호 매개변수 (cutoff 기본값 ⌈(log N′)²⌉)"""
    ambient = max(length, 1)
    chosen = default_cutoff(ambient) if cutoff is None else cutoff
    return ArcParameters(ambient=ambient, cutoff=max(1, min(chosen, ambient)), width_constant=width_constant)


def balanced_function(table: LambdaTable, A: PrimeSubset, prog: Progression, k: int = 1) -> BalancedFunction:
    """
    f = Λ_{a,q^k}·1_𝒜 - δ·Λ_{a,q^k}, δ는 정확한 가중 비율

    Args:
        table: Λ 테이블
        A: prog 안의 소수 부분집합
        prog: a + q^k·[N′] (gcd(a, q) = 1)
        k: 차수

    Returns:
        평균이 0인 균형 함수
    """
    if not prog.reduced:
        raise DomainError(f"서로소가 아닌 등차수열입니다: gcd({prog.offset}, {prog.step}) ≠ 1")
    exact_root(prog.step, k)

    weights = totient_ratio(prog.step) * prime_weights(table, prog)
    mass = math.fsum(weights)
    if mass <= 0:
        raise DegenerateInputError(f"Λ 질량이 0인 등차수열입니다: {prog}")

    members = A.as_array()
    diff = members - prog.offset
    idx = diff // prog.step
    if len(members) and (np.any(diff % prog.step) or np.any(idx < 1) or np.any(idx > prog.length)):
        raise DomainError("등차수열에 속하지 않는 원소가 있습니다")
    if len(members) and np.any(table.smallest_prime_factor[members] != members):
        raise DomainError("소수가 아닌 원소가 포함되어 있습니다")

    selected = np.zeros_like(weights)
    selected[idx - 1] = weights[idx - 1]
    density = math.fsum(selected) / mass
    values = selected - density * weights

    sequence = WeightedSequence(values=values, descriptor="balanced", progression=prog)
    logger.debug(f"균형 함수: N′={prog.length}, δ={density:.6f}")
    return BalancedFunction(sequence=sequence, density=density, base=prog, degree=k, mass=mass)


def mass_concentration(f: BalancedFunction, grid_size: Optional[int] = None, q_max: int = 1,
                       arc_params: Optional[ArcParameters] = None) -> MassConcentrationReport:
    """
    q ≤ q_max 마다 𝔐(q)에 속한 격자점 위의 (1/N̄)Σ|f̂|²

    Returns:
        질량이 가장 큰 q (동률이면 작은 q), q별 질량표
    """
    if q_max < 1:
        raise DomainError(f"q_max는 1 이상이어야 합니다: {q_max}")
    length = f.length
    grid_size = grid_size or suggest_grid_size(2 * length)
    arc_params = arc_params or default_arc_parameters(length)

    f_hat = nu_hat_grid(f.sequence, grid_size).values
    energy = np.abs(f_hat) ** 2 / grid_size
    alphas = np.arange(grid_size) / grid_size

    masses = {}
    for q in range(1, q_max + 1):
        scaled = q * alphas
        nearest = np.rint(scaled)
        near = np.abs(scaled - nearest) <= arc_params.radius
        coprime = np.gcd(nearest.astype(np.int64) % q, q) == 1
        masses[q] = math.fsum(energy[near & coprime])

    ordered = list(masses)
    best_q = ordered[int(np.argmax([masses[q] for q in ordered]))]
    return MassConcentrationReport(
        best_q=best_q,
        mass=masses[best_q],
        normalized_mass=masses[best_q] / length if length else 0.0,
        masses=masses,
        total_mass=math.fsum(energy),
    )


def find_translate(f: BalancedFunction, q: int, arc_params: Optional[ArcParameters] = None) -> TranslateReport:
    """
    f∗1_{-P}(x) = Σ_{m≤X} f(x+qm) 최대화 후 x+P를 공차 q^k 부분 수열로 분할

    Args:
        f: 균형 함수
        q: 새 법 q′
        arc_params: X = ⌈N′/(2πQ)⌉ 계산에 쓰는 cutoff Q

    Returns:
        평행이동 x, 합, Σf가 가장 큰 부분 수열 (동률이면 작은 offset)
    """
    length, k = f.length, f.degree
    arc_params = arc_params or default_arc_parameters(length)
    X = math.ceil(length / (2 * math.pi * arc_params.cutoff))
    if X < 1:
        raise DegenerateInputError(f"P의 길이 X={X}가 1보다 작습니다")

    step = q ** k
    block = q ** (k - 1)
    # x + P = {x+q, ..., x+qX} ⊆ [N′]
    low, high = 1 - q, length - q * X
    if high < low:
        raise DegenerateInputError(f"평행이동 범위가 비어 있습니다: [{low}, {high}] (N′={length}, q={q}, X={X})")

    # 원래 좌표에서 서로소인 부분 수열이 하나라도 나오는 x만 후보
    base = f.base
    base_q = exact_root(base.step, k)
    xs = np.arange(low, high + 1, dtype=np.int64)
    valid = np.zeros(len(xs), dtype=bool)
    for j in range(1, min(block, X) + 1):
        offsets = base.offset + base.step * (xs + q * j - step)
        valid |= np.gcd(offsets, base_q * q) == 1
    if not valid.any():
        raise DegenerateInputError(f"q={q}에 대해 서로소인 부분 수열이 없습니다")

    size = suggest_grid_size(length + q)
    padded = np.zeros(size)
    padded[1:length + 1] = f.values
    indicator = np.zeros(size)
    indicator[q * np.arange(1, X + 1)] = 1.0
    correlation = np.fft.irfft(np.fft.rfft(padded) * np.conj(np.fft.rfft(indicator)), n=size)

    scores = np.where(valid, correlation[xs % size], -np.inf)
    tolerance = 1e-9 * max(1.0, float(np.max(np.abs(f.values))) * X)
    x = int(xs[np.flatnonzero(scores >= scores.max() - tolerance)[0]])
    value = math.fsum(f.values[x + q * np.arange(1, X + 1) - 1])

    best = None
    for j in range(1, min(block, X) + 1):
        local = Progression(offset=x + q * j - step, step=step, length=(X - j) // block + 1, ambient=length)
        subprog = base.compose(local)
        if not subprog.reduced:
            continue
        total = math.fsum(f.values[local.members() - 1])
        if best is None or total > best[0] + tolerance:
            best = (total, local, subprog)

    total, local, subprog = best
    logger.info(f"평행이동 선택: x={x}, q={q}, X={X}, Σf={value:.4f}, 부분 수열 합={total:.4f}")
    return TranslateReport(x=x, value=value, modulus=q, length=X, local=local, subprog=subprog, subprog_sum=total)


def inverse_correlation(table: LambdaTable, f: BalancedFunction, A: PrimeSubset,
                        grid_size: Optional[int] = None) -> InverseCorrelationReport:
    """∫|f̂·S_q·ν̂| (ν = Λ·1_𝒜) 와 δ²N′² 비교"""
    length, k = f.length, f.degree
    q = exact_root(f.base.step, k)
    M = integer_root(length, k)
    grid_size = grid_size or suggest_grid_size(2 * length + M ** k)

    f_hat = nu_hat_grid(f.sequence, grid_size).values
    h = local_indicator(table, A, f.base, q)
    nu_hat = nu_hat_grid(WeightedSequence(values=h[1:], descriptor="indicator-weighted"), grid_size).values
    s_hat = power_grid(shifted_prime_weights(table, q, k, M)[1:], k, grid_size).values

    integral = math.fsum(np.abs(f_hat * s_hat * nu_hat)) / grid_size
    baseline = f.density ** 2 * length ** 2
    return InverseCorrelationReport(
        integral=integral,
        baseline=baseline,
        ratio=integral / baseline if baseline > 0 else 0.0,
    )
