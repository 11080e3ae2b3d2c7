# app/models/patterns.py
# 패턴 개수 스키마 - 소수 부분집합, 패턴 개수, 패턴 없는 집합 생성 결과

from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from app.models.sieve import Progression


# 𝒜 ⊂ 𝒫_N
class PrimeSubset(BaseModel):
    ambient: int = Field(..., ge=1)
    members: List[int] = []
    progression: Optional[Progression] = None

    @field_validator("members")
    @classmethod
    def _sorted_unique(cls, v: List[int]) -> List[int]:
        return sorted(set(int(m) for m in v))

    @model_validator(mode="after")
    def _check_members(self):
        if self.members and (self.members[0] < 1 or self.members[-1] > self.ambient):
            raise ValueError(f"원소가 구간 [1, {self.ambient}]을 벗어납니다")
        if self.progression is not None:
            outside = [m for m in self.members if not self.progression.contains(m)]
            if outside:
                raise ValueError(f"등차수열에 속하지 않는 원소가 있습니다: {outside[:5]}")
        return self

    def as_array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.members)


# p₁, p₁ + (p₂-1)^k 패턴 개수
class PatternCount(BaseModel):
    weighted: float
    unweighted: Optional[int] = None
    prime_pairs: Optional[int] = None
    witnesses: Optional[List[Tuple[int, int]]] = None
    # Fourier 계산에서 격자가 충분히 큰지 여부
    exact: Optional[bool] = None


class PatternFreeResult(BaseModel):
    subset: PrimeSubset
    strategy: Literal["greedy-descending", "greedy-ascending", "greedy-shuffled", "congruence-filter"]
    pattern_free: bool
    density: float
    prime_total: int
