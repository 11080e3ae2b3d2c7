import logging
from typing import Optional

from fastapi import APIRouter, Query

from app.analytic.fourier.arcs import classify, compare_model, major_model_sd, minor_sup_scan
from app.analytic.fourier.expsum import s_d_point
from app.analytic.fourier.gauss import bound_ratio, complete_sum_factored
from app.core.exceptions import LabError, to_http_exception
from app.models.arcs import ArcClassification, ArcParameters, MinorScanReport, ModelReport
from app.models.expsum import ExpSumSpec, RationalFrequency
from app.models.gauss import CompleteSumResult, CompleteSumSpec, ComplexValue
from app.services.table_service import get_lambda_table

# 로거 설정
logger = logging.getLogger(__name__)

router = APIRouter(tags=["fourier"])


def _table_for(spec: ExpSumSpec):
    return get_lambda_table(max(2, spec.modulus * spec.root_bound + 1))


@router.get("/gauss", response_model=CompleteSumResult)
def get_complete_sum(q: int = Query(..., ge=1), a: int = 1, k: int = Query(1, ge=1),
                     t: int = Query(1, ge=1), b: int = 1, epsilon: float = Query(0.0, ge=0)):
    """완전 지수합 C(q; a, k, t, b)와 상한 비율"""
    try:
        spec = CompleteSumSpec(modulus=q, numerator=a, degree=k, linear_coeff=t, linear_shift=b)
        value = complete_sum_factored(spec)
        return CompleteSumResult(re=value.re, im=value.im, abs=value.abs, ratio=bound_ratio(spec, epsilon))
    except (LabError, ValueError) as e:
        logger.error(f"완전 지수합 계산 중 오류 발생 - q={q}, a={a}, k={k}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/expsum/point", response_model=ComplexValue)
def get_expsum_point(n: int = Query(..., ge=0), d: int = Query(1, ge=1), k: int = Query(1, ge=1),
                     alpha: float = 0.0):
    """S_d(α) 점별 계산"""
    try:
        spec = ExpSumSpec(ambient=n, modulus=d, degree=k)
        return s_d_point(_table_for(spec), spec, alpha)
    except (LabError, ValueError) as e:
        logger.error(f"S_d 계산 중 오류 발생 - N′={n}, d={d}, k={k}, α={alpha}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/arcs/classify", response_model=ArcClassification)
def get_classification(n: int = Query(..., ge=1), cutoff: int = Query(..., ge=1),
                       alpha: float = Query(..., ge=0, lt=1), width: float = Query(1.0, gt=0)):
    """주호/소호 분류"""
    try:
        return classify(ArcParameters(ambient=n, cutoff=cutoff, width_constant=width), alpha)
    except (LabError, ValueError) as e:
        logger.error(f"주파수 분류 중 오류 발생 - α={alpha}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/arcs/model", response_model=ModelReport)
def get_major_model(n: int = Query(..., ge=1), d: int = Query(1, ge=1), k: int = Query(1, ge=1),
                    a: int = 0, q: int = Query(1, ge=1), beta: float = 0.0):
    """주호 모형과 S_d(a/q + β) 실측값 비교"""
    try:
        spec = ExpSumSpec(ambient=n, modulus=d, degree=k)
        freq = RationalFrequency(numerator=a, denominator=q, offset=beta)
        table = _table_for(spec)
        measured = s_d_point(table, spec, freq.value)
        peak = s_d_point(table, spec, 0.0).re
        return compare_model(major_model_sd(spec, freq), measured, peak)
    except (LabError, ValueError) as e:
        logger.error(f"주호 모형 계산 중 오류 발생 - a/q={a}/{q}, β={beta}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/arcs/minor-scan", response_model=MinorScanReport)
def get_minor_scan(n: int = Query(..., ge=1), d: int = Query(1, ge=1), k: int = Query(1, ge=1),
                   cutoff: int = Query(..., ge=1), count: int = Query(1000, ge=1), seed: Optional[int] = None):
    """소호 위 |S_d| 최댓값 표본 조사"""
    try:
        spec = ExpSumSpec(ambient=n, modulus=d, degree=k)
        params = ArcParameters(ambient=n, cutoff=cutoff)
        return minor_sup_scan(_table_for(spec), spec, params, count, seed)
    except (LabError, ValueError) as e:
        logger.error(f"소호 조사 중 오류 발생 - N′={n}, Q={cutoff}, 에러: {str(e)}")
        raise to_http_exception(e)
