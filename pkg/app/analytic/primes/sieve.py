# app/analytic/primes/sieve.py
# 체 계산 - 최소 소인수 체, 폰 망골트 테이블, ψ(x;q,a), Λ_{b,d} 추출과 소수 분포 검사

import logging
import math
from math import gcd

import numpy as np

from app.analytic.arithmetic import totient, totient_ratio
from app.core.config import settings
from app.core.exceptions import DomainError, OutOfRangeError, ResourceLimitError
from app.models.sieve import (
    LambdaTable,
    Progression,
    ShortAPReport,
    SiegelWalfiszReport,
    WeightedSequence,
)

logger = logging.getLogger(__name__)


def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[n] = n의 최소 소인수 (spf[0] = spf[1] = 0)"""
    dtype = np.int32 if limit < 2**31 else np.int64
    spf = np.zeros(limit + 1, dtype=dtype)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            spf[p] = p
            block = spf[p * p::p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def build_lambda_table(limit: int) -> LambdaTable:
    """
    1..limit 범위의 정확한 Λ(n) 테이블 생성

    Args:
        limit: 테이블 상한 (1 ≤ limit ≤ MEMORY_CEILING)

    Returns:
        읽기 전용 LambdaTable
    """
    if limit < 1:
        raise DomainError(f"limit은 1 이상이어야 합니다: {limit}")
    if limit > settings.MEMORY_CEILING:
        raise ResourceLimitError(
            f"limit {limit}이(가) 메모리 상한 {settings.MEMORY_CEILING}을 초과합니다"
        )

    logger.info(f"Λ 테이블 생성 시작: limit={limit}")
    spf = smallest_prime_factors(limit)

    values = np.zeros(limit + 1, dtype=float)
    candidates = np.arange(limit + 1)
    primes = np.flatnonzero((spf == candidates) & (candidates >= 2))
    values[primes] = np.log(primes)

    # 소수의 거듭제곱 p^m (m ≥ 2)
    for p in primes[primes <= math.isqrt(limit)]:
        p = int(p)
        power = p * p
        while power <= limit:
            values[power] = values[p]
            power *= p

    values.setflags(write=False)
    spf.setflags(write=False)
    logger.info(f"Λ 테이블 생성 완료: 소수 {len(primes)}개")
    return LambdaTable(limit=limit, values=values, smallest_prime_factor=spf)


def _class_slice(table: LambdaTable, low: int, high: int, q: int, a: int) -> np.ndarray:
    """low < n ≤ high, n ≡ a (mod q) 인 Λ(n) 값 배열"""
    if q < 1:
        raise DomainError(f"법 q는 1 이상이어야 합니다: {q}")
    low = max(low, 0)
    if high <= low:
        return table.values[:0]
    start = low + 1 + (a - low - 1) % q
    return table.values[start:high + 1:q]


def psi(table: LambdaTable, x: float, q: int = 1, a: int = 1) -> float:
    """
    ψ(x;q,a) = Σ_{n≤x, n≡a (q)} Λ(n)

    Args:
        table: Λ 테이블
        x: 상한 (x ≤ table.limit)
        q: 법
        a: 잉여류

    Returns:
        보정 합산 결과
    """
    if x > table.limit:
        raise OutOfRangeError(f"x={x}이(가) 테이블 범위 {table.limit}를 벗어납니다")
    if x < 1:
        return 0.0
    return math.fsum(_class_slice(table, 0, math.floor(x), q, a))


def prime_power_mass(table: LambdaTable, x: float, p: int) -> float:
    """Σ_{p^m ≤ x} log p"""
    if x > table.limit:
        raise OutOfRangeError(f"x={x}이(가) 테이블 범위 {table.limit}를 벗어납니다")
    count = 0
    power = p
    while power <= x:
        count += 1
        power *= p
    return count * math.log(p)


def lambda_progression(table: LambdaTable, b: int, d: int, X: int) -> WeightedSequence:
    """
    Λ_{b,d}(x) = (φ(d)/d)·Λ(b+dx), 1 ≤ x ≤ X

    Args:
        table: Λ 테이블
        b: 시작 오프셋 (gcd(b,d) = 1)
        d: 공차
        X: 길이

    Returns:
        majorant 태그가 붙은 가중 수열
    """
    if d < 1 or X < 1:
        raise DomainError(f"d와 X는 양수여야 합니다: d={d}, X={X}")
    if gcd(b, d) != 1:
        raise DomainError(f"gcd(b, d) ≠ 1: b={b}, d={d}")
    if b + d < 1:
        raise DomainError(f"첫 항 b+d={b + d}이(가) 1보다 작습니다")
    top = b + d * X
    if top > table.limit:
        raise OutOfRangeError(f"b+dX={top}이(가) 테이블 범위 {table.limit}를 벗어납니다")

    values = totient_ratio(d) * table.values[b + d:top + 1:d]
    progression = Progression(offset=b, step=d, length=X, ambient=top)
    return WeightedSequence(values=values, descriptor="majorant", progression=progression)


def check_siegel_walfisz(table: LambdaTable, x: float, q: int, a: int) -> SiegelWalfiszReport:
    """ψ(x;q,a)와 x/φ(q) 비교 (보고만 하고 판정하지 않음)"""
    if gcd(a, q) != 1:
        raise DomainError(f"gcd(a, q) ≠ 1: a={a}, q={q}")
    if x <= 0:
        raise DomainError(f"x는 양수여야 합니다: {x}")
    measured = psi(table, x, q, a)
    main_term = x / totient(q)
    return SiegelWalfiszReport(
        x=x, q=q, a=a,
        measured=measured,
        main_term=main_term,
        relative_error=abs(measured - main_term) / main_term,
    )


def check_short_ap(table: LambdaTable, x: float, h: float, q: int, a: int) -> ShortAPReport:
    """Σ_{x<n≤x+h, n≡a(q)} Λ(n) 이 (0.99h/φ(q), 1.01h/φ(q)) 안에 있는지 검사"""
    if gcd(a, q) != 1:
        raise DomainError(f"gcd(a, q) ≠ 1: a={a}, q={q}")
    if h < 0:
        raise DomainError(f"h는 음수일 수 없습니다: {h}")
    if x + h > table.limit:
        raise OutOfRangeError(f"x+h={x + h}이(가) 테이블 범위 {table.limit}를 벗어납니다")

    total = math.fsum(_class_slice(table, math.floor(x), math.floor(x + h), q, a))
    phi = totient(q)
    lower, upper = 0.99 * h / phi, 1.01 * h / phi
    in_range = x > 0 and h >= x ** 0.6
    if not in_range:
        logger.warning(f"h={h}이(가) x^0.6 범위 밖입니다 (x={x}); 결과는 참고용입니다")
    return ShortAPReport(
        x=x, h=h, q=q, a=a,
        sum=total,
        lower=lower,
        upper=upper,
        within=lower < total < upper,
        in_asserted_range=in_range,
    )
