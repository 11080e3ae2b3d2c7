# app/models/moments.py
# 모멘트/큰 스펙트럼 스키마

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

INT64_MAX = 2**63 - 1


# 2s차 모멘트 매개변수
class MomentSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    half_order: int = Field(..., ge=1)
    degree: int = Field(..., ge=1)
    root_bound: int = Field(..., ge=0)
    weighting: Literal["unweighted", "shifted-prime"] = "unweighted"
    modulus: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _check_width(self):
        if 2 * self.half_order * self.root_bound ** self.degree > INT64_MAX:
            raise ValueError("2s·M^k 가 64비트 정수 범위를 넘습니다")
        return self

    @property
    def order(self) -> int:
        return 2 * self.half_order

    @property
    def key_range(self) -> int:
        """s·M^k (멱합의 최댓값)"""
        return self.half_order * self.root_bound ** self.degree


class MomentGridResult(BaseModel):
    value: float
    order: int
    exact: bool


# 큰 스펙트럼 ℛ_η 측정 보고서
class SpectrumReport(BaseModel):
    eta: float = Field(..., gt=0)
    count: int = Field(..., ge=0)
    measure_estimate: float
    normalized: float
    exponent: float
    grid_size: int

    @model_validator(mode="after")
    def _check_count(self):
        if self.count > self.grid_size:
            raise ValueError(f"count {self.count}이(가) 격자 크기 {self.grid_size}를 넘습니다")
        return self
