# app/analytic/fourier/gauss.py
# 완전 지수합 - Σ_{r mod q, (tr+b,q)=1} e(ar^k/q) 직접 계산, CRT 분해 계산, 상한 비율 측정

import logging
from math import gcd
from typing import Iterable, Optional

import numpy as np
from sympy import factorint

from app.analytic.arithmetic import complex_fsum, powers_mod, unit_roots
from app.core.config import settings
from app.core.exceptions import DomainError, ResourceLimitError
from app.models.gauss import BoundSweepReport, BoundSweepRow, CompleteSumSpec, ComplexValue

logger = logging.getLogger(__name__)


def _admissible(q: int, t: int, b: int) -> np.ndarray:
    """gcd(tr+b, q) = 1 인 r (0 ≤ r < q) 마스크"""
    r = np.arange(q, dtype=np.int64)
    return np.gcd((t % q) * r + b % q, q) == 1


def _residue_counts(q: int, k: int, t: int, b: int, constrained: bool = True) -> np.ndarray:
    """허용된 r에 대해 r^k mod q 값의 도수"""
    r = np.arange(q, dtype=np.int64)
    powers = powers_mod(r, k, q)
    if constrained:
        powers = powers[_admissible(q, t, b)]
    return np.bincount(powers, minlength=q)


def _check_direct_size(q: int) -> None:
    if q > settings.DIRECT_SUM_LIMIT:
        raise ResourceLimitError(f"q={q}이(가) 직접 계산 상한 {settings.DIRECT_SUM_LIMIT}을 초과합니다")


def _complete_sum(q: int, a: int, k: int, t: int, b: int) -> complex:
    """검증 없이 제약 합을 계산 (CRT 인자용, t와 b가 서로소가 아닐 수 있음)"""
    _check_direct_size(q)
    counts = _residue_counts(q, k, t, b)
    # e(a·j/q) 는 j ↦ a·j mod q 의 단위근
    positions = (np.flatnonzero(counts) * (a % q)) % q
    roots = unit_roots(q)
    return complex_fsum(counts[counts > 0] * roots[positions])


def complete_sum_direct(spec: CompleteSumSpec) -> ComplexValue:
    """
    r을 법 q 전체에 걸쳐 직접 합산

    Args:
        spec: 완전 지수합 매개변수 (q ≤ DIRECT_SUM_LIMIT)

    Returns:
        Σ_{r mod q, (tr+b,q)=1} e(ar^k/q)
    """
    value = _complete_sum(spec.modulus, spec.numerator, spec.degree,
                          spec.linear_coeff, spec.linear_shift)
    return ComplexValue.from_complex(value)


def crt_factors(spec: CompleteSumSpec) -> list:
    """각 소수 거듭제곱 인자 q_i에 대한 (q_i, 조정된 분자, 조정된 선형 계수)"""
    q, k = spec.modulus, spec.degree
    factors = []
    for p, e in sorted(factorint(q).items()):
        q_i = int(p) ** int(e)
        rest = q // q_i
        numerator = (spec.numerator * pow(rest, k - 1, q_i)) % q_i
        factors.append((q_i, numerator, spec.linear_coeff * rest))
    return factors


def complete_sum_factored(spec: CompleteSumSpec) -> ComplexValue:
    """소수 거듭제곱 인자별 합의 곱으로 계산"""
    value = complex(1.0, 0.0)
    for q_i, numerator, coeff in crt_factors(spec):
        value *= _complete_sum(q_i, numerator, spec.degree, coeff, spec.linear_shift)
    return ComplexValue.from_complex(value)


def weyl_sum(q: int, a: int, k: int) -> ComplexValue:
    """제약 없는 Σ_{r mod q} e(ar^k/q)"""
    if q < 1 or gcd(a, q) != 1:
        raise DomainError(f"q ≥ 1, gcd(a, q) = 1 이어야 합니다: q={q}, a={a}")
    _check_direct_size(q)
    r = np.arange(q, dtype=np.int64)
    phases = (powers_mod(r, k, q) * (a % q)) % q
    return ComplexValue.from_complex(complex_fsum(unit_roots(q)[phases]))


def bound_ratio(spec: CompleteSumSpec, epsilon: float) -> float:
    """|C| / q^{1-1/k+ε}"""
    if epsilon < 0:
        raise DomainError(f"epsilon은 음수일 수 없습니다: {epsilon}")
    value = complete_sum_factored(spec)
    exponent = 1.0 - 1.0 / spec.degree + epsilon
    return value.abs / spec.modulus ** exponent


def bound_sweep(q_max: int, k: int, epsilon: float,
                numerators: Optional[Iterable[int]] = None,
                t: int = 1, b: int = 1) -> BoundSweepReport:
    """
    q = 1..q_max 에 대해 최악의 상한 비율 측정

    분자 a를 모두 보려면 도수 벡터의 역 FFT 한 번으로 모든 a의 합을 얻는다.

    Args:
        q_max: 법 상한
        k: 차수
        epsilon: 지수 여유
        numerators: 검사할 분자 목록 (None이면 q와 서로소인 모든 a)
        t, b: 선형 제약 (tr+b, q) = 1

    Returns:
        최악 비율과 q별 행
    """
    if epsilon < 0:
        raise DomainError(f"epsilon은 음수일 수 없습니다: {epsilon}")
    if gcd(b, t) != 1:
        raise DomainError(f"gcd(b, t) ≠ 1: b={b}, t={t}")
    chosen = None if numerators is None else sorted(set(numerators))
    logger.info(f"상한 비율 조사 시작: q ≤ {q_max}, k={k}, ε={epsilon}")

    rows = []
    exponent = 1.0 - 1.0 / k + epsilon
    for q in range(1, q_max + 1):
        counts = _residue_counts(q, k, t, b).astype(float)
        sums = q * np.fft.ifft(counts)
        candidates = np.arange(q) if chosen is None else np.array([a % q for a in chosen], dtype=np.int64)
        candidates = candidates[np.gcd(candidates, q) == 1]
        if len(candidates) == 0:
            continue
        magnitudes = np.abs(sums[candidates])
        best = int(np.argmax(magnitudes))
        rows.append(BoundSweepRow(
            q=q,
            worst_numerator=int(candidates[best]),
            abs=float(magnitudes[best]),
            ratio=float(magnitudes[best] / q ** exponent),
        ))

    worst = max(rows, key=lambda row: row.ratio)
    logger.info(f"상한 비율 조사 완료: 최악 비율 {worst.ratio:.4f} (q={worst.q})")
    return BoundSweepReport(
        degree=k, epsilon=epsilon,
        worst_ratio=worst.ratio,
        worst_q=worst.q,
        worst_numerator=worst.worst_numerator,
        rows=rows,
    )
