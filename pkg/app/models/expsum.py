# app/models/expsum.py
# 지수합 스키마 - S_d 매개변수, 주파수 격자, 유리 주파수

from math import gcd
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from app.analytic.arithmetic import integer_root


# S_d(α) 매개변수 (M = ⌊N′^{1/k}⌋ 은 정수 거듭제곱근으로 유도)
class ExpSumSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    ambient: int = Field(..., ge=0)
    modulus: int = Field(1, ge=1)
    degree: int = Field(1, ge=1)

    @computed_field
    @property
    def root_bound(self) -> int:
        return integer_root(self.ambient, self.degree)


# 주파수 격자 j/size 위의 변환 값
class FrequencyGrid(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    size: int = Field(..., ge=1)
    values: np.ndarray
    # 원천 다항식의 최고 정수 주파수
    degree: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_size(self):
        if len(self.values) != self.size:
            raise ValueError(f"격자 값 개수 {len(self.values)}와 size {self.size}가 다릅니다")
        return self

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)

    def frequencies(self) -> np.ndarray:
        return np.arange(self.size) / self.size


# α = a/q + β (기약분수, |β| ≤ 1/2)
class RationalFrequency(BaseModel):
    model_config = ConfigDict(frozen=True)

    numerator: int
    denominator: int = Field(..., ge=1)
    offset: float = 0.0

    @model_validator(mode="after")
    def _check_reduced(self):
        if gcd(self.numerator, self.denominator) != 1:
            raise ValueError(f"기약분수가 아닙니다: {self.numerator}/{self.denominator}")
        if abs(self.offset) > 0.5:
            raise ValueError(f"|β| ≤ 1/2 이어야 합니다: β={self.offset}")
        return self

    @property
    def value(self) -> float:
        return self.numerator / self.denominator + self.offset


class SpotCheckReport(BaseModel):
    count: int
    max_error: float
    indices: List[int]


# 격자 파일 JSON 사이드카
class GridSidecar(BaseModel):
    size: int
    degree: int
    parameters: Dict[str, Any] = {}
    source: Optional[str] = None
