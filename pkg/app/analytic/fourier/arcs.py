# app/analytic/fourier/arcs.py
# 주호/소호 분해 - 주파수 분류, 주호 모형(S_d, Λ̂_{b,d}), 소호 최댓값 표본 조사

import logging
import math
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional, Tuple

import numpy as np

from app.analytic.arithmetic import e, totient
from app.analytic.fourier.expsum import s_d_many, s_d_point
from app.analytic.fourier.gauss import _complete_sum
from app.core.config import settings
from app.core.exceptions import DomainError, EmptyMinorArcsError
from app.models.arcs import ArcClassification, ArcParameters, MinorScanReport, ModelReport
from app.models.expsum import ExpSumSpec, RationalFrequency
from app.models.gauss import ComplexValue
from app.models.sieve import LambdaTable

logger = logging.getLogger(__name__)

GOLDEN_STEP = (math.sqrt(5.0) - 1.0) / 2.0


def default_cutoff(ambient: int) -> int:
    """Q = min(N′, max(1, ⌈(log N′)²⌉))"""
    return min(ambient, max(1, math.ceil(math.log(ambient) ** 2)))


def convergents(x: Fraction) -> Iterator[Tuple[int, int]]:
    """x의 연분수 근사 p_n/q_n"""
    p_prev, q_prev = 1, 0
    head = math.floor(x)
    p, q = head, 1
    yield p, q
    rest = x - head
    while rest:
        x = 1 / rest
        head = math.floor(x)
        rest = x - head
        p_prev, p = p, head * p + p_prev
        q_prev, q = q, head * q + q_prev
        yield p, q


def classify(params: ArcParameters, alpha: float) -> ArcClassification:
    """
    α가 속한 주호 박스 𝔐(q) 찾기

    ‖qα‖ ≤ w·Q/N′ 을 만족하는 가장 작은 q ≤ Q를 연분수 근사에서 찾는다.
    최소 q는 항상 근사 분모이고 a/q는 자동으로 기약분수이다.

    Args:
        params: 분해 매개변수
        alpha: [0, 1) 안의 주파수

    Returns:
        major(a/q + β, 박스 q) 또는 minor
    """
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"alpha는 [0, 1) 안에 있어야 합니다: {alpha}")
    exact = Fraction(alpha)
    for p, q in convergents(exact):
        if q > params.cutoff:
            break
        beta = float(exact - Fraction(p, q))
        if abs(beta) <= params.box_width(q):
            freq = RationalFrequency(numerator=p, denominator=q, offset=beta)
            return ArcClassification(kind="major", freq=freq, box=q)
    return ArcClassification(kind="minor")


def is_major_batch(params: ArcParameters, alphas: np.ndarray) -> np.ndarray:
    """여러 주파수의 주호 포함 여부 (classify와 같은 기준)"""
    alphas = np.asarray(alphas, dtype=float)
    major = np.zeros(alphas.shape, dtype=bool)
    for q in range(1, params.cutoff + 1):
        scaled = q * alphas
        major |= np.abs(scaled - np.rint(scaled)) <= params.radius
    return major


def oscillatory_integral(beta: float, upper: float) -> complex:
    """∫_1^{upper} e(βt) dt = e(β(U+1)/2)·(U-1)·sinc(β(U-1))"""
    span = upper - 1.0
    return complex(e(beta * (upper + 1.0) / 2.0) * span * np.sinc(beta * span))


def major_model_sd(spec: ExpSumSpec, freq: RationalFrequency) -> ComplexValue:
    """S_d(a/q + β) ≈ (φ(d)/φ(dq))·C(q; a, d)·∫_1^{M^k} e(βt) dt"""
    d, q = spec.modulus, freq.denominator
    complete = _complete_sum(q, freq.numerator, spec.degree, d, 1)
    density = totient(d) / totient(d * q)
    integral = oscillatory_integral(freq.offset, spec.root_bound ** spec.degree)
    return ComplexValue.from_complex(density * complete * integral)


def major_model_lambda(b: int, d: int, X: int, freq: RationalFrequency) -> ComplexValue:
    """Λ̂_{b,d}(a/q + β) ≈ (φ(d)/φ(dq))·Σ_{r(q),(b+rd,q)=1} e(ar/q)·∫_1^X e(βt) dt"""
    if gcd(b, d) != 1:
        raise DomainError(f"gcd(b, d) ≠ 1: b={b}, d={d}")
    q = freq.denominator
    complete = _complete_sum(q, freq.numerator, 1, d, b)
    density = totient(d) / totient(d * q)
    return ComplexValue.from_complex(density * complete * oscillatory_integral(freq.offset, X))


def compare_model(model: ComplexValue, measured: ComplexValue, scale: float) -> ModelReport:
    """
    모형 오차 보고서

    모형 값이 0이면(예: μ(q) = 0 인 라마누잔 합) 상대 오차는 None이다.
    """
    diff = abs(model.to_complex() - measured.to_complex())
    relative = diff / model.abs if model.abs > 1e-9 * max(scale, 1.0) else None
    return ModelReport(
        model=model,
        measured=measured,
        relative_error=relative,
        scaled_error=diff / scale if scale > 0 else None,
    )


def minor_sup_scan(table: LambdaTable, spec: ExpSumSpec, params: ArcParameters,
                   sample_count: int, seed: Optional[int] = None) -> MinorScanReport:
    """
    시드 고정 Weyl 수열(황금비 회전)로 소호 위 |S_d| 최댓값 측정

    Args:
        table: Λ 테이블
        spec: S_d 매개변수
        params: 주호/소호 분해
        sample_count: 표본 수
        seed: 시작점 시드

    Returns:
        최댓값, 위치, S_d(0) 대비 비율
    """
    if sample_count < 1:
        raise DomainError(f"sample_count는 1 이상이어야 합니다: {sample_count}")
    seed = settings.DEFAULT_SEED if seed is None else seed
    if params.radius >= 0.5:
        raise EmptyMinorArcsError(f"w·Q/N′ = {params.radius} ≥ 1/2 이므로 소호가 비어 있습니다")

    start = np.random.default_rng(seed).random()
    samples = np.mod(start + GOLDEN_STEP * np.arange(1, sample_count + 1), 1.0)
    minor = samples[~is_major_batch(params, samples)]
    if len(minor) == 0:
        raise EmptyMinorArcsError(f"{sample_count}개 표본 중 소호에 속한 점이 없습니다")

    logger.info(f"소호 조사: 표본 {sample_count}개 중 소호 {len(minor)}개, Q={params.cutoff}, seed={seed}")
    magnitudes = np.abs(s_d_many(table, spec, minor))
    best = int(np.argmax(magnitudes))
    peak = s_d_point(table, spec, 0.0).re
    sup_abs = float(magnitudes[best])
    return MinorScanReport(
        sup_abs=sup_abs,
        arg_max=float(minor[best]),
        ratio_to_peak=sup_abs / peak if peak > 0 else 0.0,
        sample_count=sample_count,
        minor_count=len(minor),
        seed=seed,
    )
