import logging

from fastapi import APIRouter

from app.analytic.counting.patterns import find_pattern_free
from app.analytic.increment.driver import increment_iterate
from app.core.exceptions import LabError, to_http_exception
from app.models.api import IncrementRequest
from app.models.increment import IncrementLimits, IncrementTrace
from app.models.patterns import PrimeSubset
from app.services.table_service import get_lambda_table

# 로거 설정
logger = logging.getLogger(__name__)

router = APIRouter(prefix="/increment", tags=["increment"])


@router.post("", response_model=IncrementTrace)
def post_increment(request: IncrementRequest):
    """
    밀도 증가 반복 실행

    members가 없으면 strategy로 패턴 없는 부분집합을 만든 뒤 반복한다.
    """
    try:
        table = get_lambda_table(request.n)
        if request.members is None:
            generated = find_pattern_free(table, request.n, request.k, request.strategy, seed=request.seed)
            subset = generated.subset
        else:
            subset = PrimeSubset(ambient=request.n, members=request.members)

        overrides = {}
        if request.q_max is not None:
            overrides["q_max"] = request.q_max
        if request.steps is not None:
            overrides["max_steps"] = request.steps
        return increment_iterate(table, subset, request.n, request.k, IncrementLimits(**overrides))
    except (LabError, ValueError) as e:
        logger.error(f"밀도 증가 반복 중 오류 발생 - N={request.n}, k={request.k}, 에러: {str(e)}")
        raise to_http_exception(e)
