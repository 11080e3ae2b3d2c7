# app/analytic/arithmetic.py
# 산술 보조 함수 - 오일러 함수, 정수 거듭제곱근, 단위근, 보정 합산

import math
from typing import Iterable

import numpy as np
from sympy import integer_nthroot, totient as _totient

from app.core.config import settings
from app.core.exceptions import DomainError

TWO_PI = 2.0 * math.pi


def totient(n: int) -> int:
    """오일러 함수 φ(n)"""
    if n < 1:
        raise DomainError(f"φ(n)은 n ≥ 1에서만 정의됩니다: n={n}")
    return int(_totient(n))


def totient_ratio(d: int) -> float:
    """φ(d)/d"""
    return totient(d) / d


def integer_root(n: int, k: int) -> int:
    """
    ⌊n^{1/k}⌋ 정수 계산 (부동소수점 거듭제곱을 쓰지 않음)

    Args:
        n: 음이 아닌 정수 (n < 1이면 0)
        k: 차수 (k ≥ 1)

    Returns:
        M^k ≤ n < (M+1)^k 를 만족하는 M
    """
    if k < 1:
        raise DomainError(f"차수 k는 1 이상이어야 합니다: k={k}")
    if n < 1:
        return 0
    return int(integer_nthroot(int(n), int(k))[0])


def exact_root(n: int, k: int) -> int:
    """n이 정확히 어떤 정수의 k제곱일 때 그 정수를 반환"""
    root, exact = integer_nthroot(int(n), int(k))
    if not exact:
        raise DomainError(f"{n}은(는) {k}제곱수가 아닙니다")
    return int(root)


def e(x):
    """e(x) = exp(2πix)"""
    return np.exp(1j * TWO_PI * np.asarray(x, dtype=float))


def unit_roots(q: int, interval: int = None) -> np.ndarray:
    """
    e(j/q), j = 0..q-1 단위근 테이블

    interval 개마다 앵커 e(start/q)를 새로 계산해서 누적 오차를 끊는다.
    """
    interval = interval or settings.ROOT_RENORMALIZE_INTERVAL
    block = np.exp(1j * TWO_PI * np.arange(min(q, interval)) / q)
    roots = np.empty(q, dtype=complex)
    for start in range(0, q, interval):
        count = min(interval, q - start)
        anchor = np.exp(1j * TWO_PI * start / q)
        roots[start:start + count] = anchor * block[:count]
    return roots


def powers_mod(values: np.ndarray, k: int, q: int) -> np.ndarray:
    """values^k mod q (int64, q ≤ 3·10⁹ 범위에서 곱셈 오버플로 없음)"""
    base = np.asarray(values, dtype=np.int64) % q
    result = np.ones_like(base) % q
    for _ in range(k):
        result = (result * base) % q
    return result


def complex_fsum(values: Iterable[complex]) -> complex:
    """실수부/허수부를 각각 math.fsum으로 보정 합산"""
    arr = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(arr.real), math.fsum(arr.imag))

