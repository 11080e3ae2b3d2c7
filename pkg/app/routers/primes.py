import logging
import math

from fastapi import APIRouter, HTTPException, Query

from app.analytic.primes.sieve import check_short_ap, check_siegel_walfisz, lambda_progression, psi
from app.core.exceptions import LabError, to_http_exception
from app.models.api import SequenceResponse, ValueResponse
from app.models.sieve import ShortAPReport, SiegelWalfiszReport
from app.services.table_service import get_lambda_table

# 로거 설정
logger = logging.getLogger(__name__)

router = APIRouter(prefix="/sieve", tags=["sieve"])


@router.get("/psi", response_model=ValueResponse)
def get_psi(x: float = Query(..., ge=0), q: int = Query(1, ge=1), a: int = 1):
    """ψ(x;q,a) 계산"""
    try:
        table = get_lambda_table(max(1, math.floor(x)))
        return ValueResponse(value=psi(table, x, q, a))
    except (LabError, ValueError) as e:
        logger.error(f"ψ 계산 중 오류 발생 - x={x}, q={q}, a={a}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/progression", response_model=SequenceResponse)
def get_progression(b: int, d: int = Query(..., ge=1), X: int = Query(..., ge=1)):
    """Λ_{b,d}(x), x = 1..X"""
    try:
        table = get_lambda_table(max(1, b + d * X))
        return SequenceResponse(values=lambda_progression(table, b, d, X).values.tolist())
    except (LabError, ValueError) as e:
        logger.error(f"Λ_(b,d) 추출 중 오류 발생 - b={b}, d={d}, X={X}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/siegel-walfisz", response_model=SiegelWalfiszReport)
def get_siegel_walfisz(x: float = Query(..., gt=0), q: int = Query(..., ge=1), a: int = 1):
    """ψ(x;q,a)와 x/φ(q) 비교"""
    try:
        return check_siegel_walfisz(get_lambda_table(max(1, math.floor(x))), x, q, a)
    except (LabError, ValueError) as e:
        logger.error(f"Siegel-Walfisz 검사 중 오류 발생 - x={x}, q={q}, a={a}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/short-ap", response_model=ShortAPReport)
def get_short_ap(x: float = Query(..., ge=0), h: float = Query(..., ge=0), q: int = Query(1, ge=1), a: int = 1):
    """짧은 구간 등차수열 소수 합 검사"""
    if x + h < 1:
        raise HTTPException(status_code=400, detail="x + h는 1 이상이어야 합니다")
    try:
        return check_short_ap(get_lambda_table(math.floor(x + h)), x, h, q, a)
    except (LabError, ValueError) as e:
        logger.error(f"짧은 구간 검사 중 오류 발생 - x={x}, h={h}, 에러: {str(e)}")
        raise to_http_exception(e)
