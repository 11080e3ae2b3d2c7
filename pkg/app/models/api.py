from typing import List, Literal, Optional

from pydantic import BaseModel, Field


# 패턴 개수 요청 스키마
class PatternCountRequest(BaseModel):
    n: int = Field(..., ge=2)
    k: int = Field(1, ge=1)
    q: int = Field(1, ge=1)
    a: int = 1
    members: Optional[List[int]] = None  # None이면 등차수열 안의 모든 소수
    mode: Literal["direct", "fourier"] = "direct"
    grid_size: Optional[int] = None


# 밀도 증가 반복 요청 스키마
class IncrementRequest(BaseModel):
    n: int = Field(..., ge=3)
    k: int = Field(1, ge=1)
    members: Optional[List[int]] = None  # None이면 strategy로 생성
    strategy: Literal["greedy-descending", "greedy-ascending", "greedy-shuffled"] = "greedy-descending"
    seed: Optional[int] = None
    q_max: Optional[int] = None
    steps: Optional[int] = None


# 단일 값 응답 스키마
class ValueResponse(BaseModel):
    value: float


class SequenceResponse(BaseModel):
    values: List[float]
