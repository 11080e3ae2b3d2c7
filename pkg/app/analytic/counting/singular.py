# app/analytic/counting/singular.py
# 특이급수 - 국소 해 개수 M(p), 국소 인자 A(p), 부분곱과 꼬리 추정

import logging
import math
from math import gcd
from typing import List, Optional, Tuple

import numpy as np
from sympy import isprime, primerange

from app.analytic.arithmetic import powers_mod
from app.analytic.fourier.gauss import _residue_counts
from app.core.config import settings
from app.core.exceptions import DomainError, LabError
from app.models.singular import LocalFactorReport, SingularSeriesReport

logger = logging.getLogger(__name__)


def _check_local(p: int, q: int, a: int, k: int) -> None:
    if k < 1:
        raise DomainError(f"차수 k는 1 이상이어야 합니다: {k}")
    if q < 1 or gcd(a, q) != 1:
        raise DomainError(f"gcd(a, q) ≠ 1: a={a}, q={q}")
    if p > settings.LOCAL_PRIME_LIMIT:
        raise DomainError(f"p={p}이(가) 국소 계산 상한 {settings.LOCAL_PRIME_LIMIT}을 초과합니다")
    if not isprime(p):
        raise DomainError(f"{p}은(는) 소수가 아닙니다")
    if q % p == 0:
        raise DomainError(f"p={p}이(가) q={q}를 나눕니다 (국소 인자는 정의하지 않음)")


def local_count_M(p: int, q: int, a: int, k: int) -> int:
    """
    x₁ + x₂ + x₃^k ≡ 0 (mod p), p ∤ (qx₁+a)(qx₂+a)(qx₃+1) 인 해의 개수

    x₃를 고정하면 c = -x₃^k 에 대해 허용되는 (x₁, x₂) 쌍은 p - 2 + [c ≡ 2x*] 개이다.
    x*는 qx + a ≡ 0 의 유일한 해.

    Args:
        p: 소수 (p ∤ q)
        q, a: gcd(a, q) = 1
        k: 차수

    Returns:
        정확한 해 개수
    """
    _check_local(p, q, a, k)
    q_inv = pow(q, -1, p)
    excluded = (-a * q_inv) % p

    x3 = np.arange(p, dtype=np.int64)
    admissible = (q % p * x3 + 1) % p != 0
    targets = (-powers_mod(x3[admissible], k, p)) % p
    hits = int(np.count_nonzero(targets == (2 * excluded) % p))
    return int(np.count_nonzero(admissible)) * (p - 2) + hits


def local_factor_A(p: int, q: int, a: int, k: int) -> float:
    """A(p) = p·M(p)/φ(p)³ - 1"""
    phi = p - 1
    return p * local_count_M(p, q, a, k) / phi ** 3 - 1.0


def _character_free_sum(p: int, q: int, a: int, k: int) -> complex:
    """Σ_{b=1}^{p-1} T₁(b)²·T₂(b), 각 항은 완전 지수합"""
    # T₁(b) = Σ_{(sq+a,p)=1} e(sb/p), T₂(b) = Σ_{(sq+1,p)=1} e(s^k b/p)
    first = p * np.fft.ifft(_residue_counts(p, 1, q, a).astype(float))
    second = p * np.fft.ifft(_residue_counts(p, k, q, 1).astype(float))
    terms = first[1:] ** 2 * second[1:]
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def local_factor_A_from_sums(p: int, q: int, a: int, k: int) -> float:
    """지수합 경로로 계산한 A(p) (교차 검증용)"""
    _check_local(p, q, a, k)
    phi = p - 1
    total = _character_free_sum(p, q, a, k) / phi ** 3
    if abs(total.imag) > 1e-10:
        raise LabError(f"A({p})의 허수부가 너무 큽니다: {total.imag:.3e}")
    return total.real


def local_factor_report(p: int, q: int, a: int, k: int) -> LocalFactorReport:
    """두 경로의 A(p)와 항등식 잔차 p·M(p) - φ(p)³(A(p)+1)"""
    m_count = local_count_M(p, q, a, k)
    phi = p - 1
    total = _character_free_sum(p, q, a, k)
    if abs(total.imag) / phi ** 3 > 1e-10:
        raise LabError(f"A({p})의 허수부가 너무 큽니다: {total.imag / phi ** 3:.3e}")
    return LocalFactorReport(
        prime=p,
        a_value=p * m_count / phi ** 3 - 1.0,
        a_from_sums=total.real / phi ** 3,
        m_count=m_count,
        identity_residual=abs(p * m_count - phi ** 3 - total.real),
    )


def local_factors(q: int, a: int, k: int, prime_limit: int) -> List[Tuple[int, float]]:
    """p ≤ prime_limit, p ∤ q 에 대한 (p, A(p)), 오름차순"""
    if gcd(a, q) != 1:
        raise DomainError(f"gcd(a, q) ≠ 1: a={a}, q={q}")
    return [(int(p), local_factor_A(int(p), q, a, k))
            for p in primerange(2, prime_limit + 1) if q % p]


def tail_estimate(factors: List[Tuple[int, float]]) -> Tuple[Optional[float], Optional[float]]:
    """
    마지막 10배 구간에서 log|A(p)| ~ log p 최소제곱 적합 후 Σ_{p>P}|A(p)| 외삽

    Returns:
        (꼬리 추정값, 적합 기울기), 적합이 불가능하면 None
    """
    if not factors:
        return None, None
    top = factors[-1][0]
    window = [(p, abs(value)) for p, value in factors if p > top / 10 and value != 0]
    if len(window) < 2:
        return None, None
    logs_p = np.log([p for p, _ in window])
    logs_a = np.log([value for _, value in window])
    slope, intercept = np.polyfit(logs_p, logs_a, 1)
    if slope >= -1:
        return None, float(slope)
    # Σ_{p>P} c·p^m ≈ ∫_P^∞ c·t^m / log t dt ≈ c·P^{m+1} / ((-m-1)·log P)
    tail = math.exp(intercept) * top ** (slope + 1) / ((-slope - 1) * math.log(top))
    return float(tail), float(slope)


def singular_series(q: int, a: int, k: int, prime_limit: int) -> SingularSeriesReport:
    """
    부분곱 Π_{p ≤ P, p ∤ q} (1 + A(p))

    p^t (t ≥ 2) 인자는 0이므로 소수만 곱한다. 곱은 소수 오름차순으로 계산한다.
    """
    logger.info(f"특이급수 계산: q={q}, a={a}, k={k}, P={prime_limit}")
    factors = local_factors(q, a, k, prime_limit)
    product = 1.0
    for _, value in factors:
        product *= 1.0 + value
    tail, slope = tail_estimate(factors)
    return SingularSeriesReport(
        q=q, a=a, k=k,
        prime_limit=prime_limit,
        partial_product=product,
        factor_count=len(factors),
        tail_bound_estimate=tail,
        fit_slope=slope,
    )


def decay_constant(q: int, a: int, k: int, prime_limit: int, epsilon: float = 0.1) -> float:
    """max_p |A(p)|·p^{3/2-ε}"""
    factors = local_factors(q, a, k, prime_limit)
    return max((abs(value) * p ** (1.5 - epsilon) for p, value in factors), default=0.0)
