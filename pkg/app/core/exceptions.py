# app/core/exceptions.py
# 예외 정의 - 계산 엔진 전반에서 사용하는 오류 분류

from fastapi import HTTPException


class LabError(Exception):
    """계산 엔진 오류의 최상위 클래스"""


class DomainError(LabError, ValueError):
    """서로소 조건, 소수 조건 등 정의역 위반"""


class OutOfRangeError(LabError, ValueError):
    """테이블 범위를 벗어난 요청"""


class ResourceLimitError(LabError, MemoryError):
    """설정된 메모리 상한 초과"""


class DegenerateInputError(LabError, ValueError):
    """질량이 0인 등차수열, 길이가 1 미만인 수열 등 퇴화 입력"""


class EmptyMinorArcsError(LabError):
    """소호(minor arc)가 비어 있어 표본을 뽑을 수 없음"""


def to_http_exception(e: Exception) -> HTTPException:
    """계산 엔진 오류와 입력 검증 오류를 HTTP 오류로 변환 (메모리 상한은 413, 나머지는 400)"""
    status_code = 413 if isinstance(e, ResourceLimitError) else 400
    return HTTPException(
        status_code=status_code,
        detail={"message": str(e), "error": type(e).__name__},
    )
