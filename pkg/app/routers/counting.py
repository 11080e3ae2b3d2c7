import logging
from typing import Literal, Optional

from fastapi import APIRouter, Query

from app.analytic.counting.moments import moment_exact, vinogradov_count
from app.analytic.counting.patterns import count_direct, count_fourier, find_pattern_free, pattern_progression
from app.analytic.counting.singular import local_factor_report, singular_series
from app.core.exceptions import LabError, to_http_exception
from app.models.api import PatternCountRequest, ValueResponse
from app.models.moments import MomentSpec
from app.models.patterns import PatternCount, PatternFreeResult, PrimeSubset
from app.models.singular import LocalFactorReport, SingularSeriesReport
from app.services.table_service import get_lambda_table

# 로거 설정
logger = logging.getLogger(__name__)

router = APIRouter(tags=["counting"])


@router.get("/moments/exact", response_model=ValueResponse)
def get_moment_exact(s: int = Query(..., ge=1), k: int = Query(..., ge=1), m: int = Query(..., ge=0),
                     weighting: Literal["unweighted", "shifted-prime"] = "unweighted",
                     d: int = Query(1, ge=1)):
    """2s차 모멘트의 정확한 값 (해 개수)"""
    try:
        spec = MomentSpec(half_order=s, degree=k, root_bound=m, weighting=weighting, modulus=d)
        table = get_lambda_table(max(2, d * m + 1)) if weighting == "shifted-prime" else None
        return ValueResponse(value=moment_exact(spec, table))
    except (LabError, ValueError) as e:
        logger.error(f"모멘트 계산 중 오류 발생 - s={s}, k={k}, M={m}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/moments/vinogradov", response_model=ValueResponse)
def get_vinogradov(s: int = Query(..., ge=1), k: int = Query(..., ge=1), m: int = Query(..., ge=0)):
    """Vinogradov 연립계 해 개수"""
    try:
        return ValueResponse(value=vinogradov_count(s, k, m))
    except (LabError, ValueError) as e:
        logger.error(f"Vinogradov 해 개수 계산 중 오류 발생 - s={s}, k={k}, M={m}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/singular", response_model=SingularSeriesReport)
def get_singular_series(q: int = Query(..., ge=1), a: int = 1, k: int = Query(1, ge=1),
                        prime_limit: int = Query(1000, ge=2)):
    """특이급수 부분곱"""
    try:
        return singular_series(q, a, k, prime_limit)
    except (LabError, ValueError) as e:
        logger.error(f"특이급수 계산 중 오류 발생 - q={q}, a={a}, k={k}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/singular/local", response_model=LocalFactorReport)
def get_local_factor(p: int = Query(..., ge=2), q: int = Query(..., ge=1), a: int = 1, k: int = Query(1, ge=1)):
    """국소 인자 A(p)와 M(p)"""
    try:
        return local_factor_report(p, q, a, k)
    except (LabError, ValueError) as e:
        logger.error(f"국소 인자 계산 중 오류 발생 - p={p}, q={q}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.post("/patterns/count", response_model=PatternCount)
def post_pattern_count(request: PatternCountRequest):
    """
    패턴 개수 계산

    members가 없으면 등차수열 안의 모든 소수를 사용한다.
    """
    try:
        prog = pattern_progression(request.n, request.k, request.q, request.a)
        table = get_lambda_table(max(2, request.n, request.q * prog.length + 1))
        if request.members is None:
            members = [int(x) for x in prog.members() if table.is_prime(int(x))]
        else:
            members = request.members
        subset = PrimeSubset(ambient=request.n, members=members)

        if request.mode == "fourier":
            grid_size = request.grid_size or 2 * (prog.length + 1)
            return count_fourier(table, subset, prog, request.k, request.q, grid_size)
        return count_direct(table, subset, prog, request.k, request.q)
    except (LabError, ValueError) as e:
        logger.error(f"패턴 개수 계산 중 오류 발생 - N={request.n}, k={request.k}, q={request.q}, 에러: {str(e)}")
        raise to_http_exception(e)


@router.get("/patterns/pattern-free", response_model=PatternFreeResult)
def get_pattern_free(n: int = Query(..., ge=2), k: int = Query(1, ge=1),
                     strategy: Literal["greedy-descending", "greedy-ascending", "greedy-shuffled",
                                       "congruence-filter"] = "greedy-descending",
                     modulus: Optional[int] = Query(None, ge=1), residue: Optional[int] = None,
                     seed: Optional[int] = None):
    """패턴 없는 소수 부분집합 생성 (congruence-filter는 잉여류 하나만 받음)"""
    try:
        residues = None if residue is None else [residue]
        return find_pattern_free(get_lambda_table(max(2, n)), n, k, strategy, modulus, residues, seed)
    except (LabError, ValueError) as e:
        logger.error(f"패턴 없는 집합 생성 중 오류 발생 - N={n}, k={k}, 전략={strategy}, 에러: {str(e)}")
        raise to_http_exception(e)
