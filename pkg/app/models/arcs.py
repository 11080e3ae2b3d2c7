# app/models/arcs.py
# 주호/소호 분해 스키마

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.expsum import RationalFrequency
from app.models.gauss import ComplexValue


# 𝔐 = ∪_{q≤Q} {α: ‖qα‖ ≤ w·Q/N′} 매개변수
class ArcParameters(BaseModel):
    model_config = ConfigDict(frozen=True)

    ambient: int = Field(..., ge=1)
    cutoff: int = Field(..., ge=1)
    width_constant: float = Field(1.0, gt=0)

    @model_validator(mode="after")
    def _check_cutoff(self):
        if self.cutoff > self.ambient:
            raise ValueError(f"cutoff {self.cutoff}이(가) ambient {self.ambient}보다 큽니다")
        return self

    @property
    def radius(self) -> float:
        """‖qα‖ 허용 폭 w·Q/N′"""
        return self.width_constant * self.cutoff / self.ambient

    def box_width(self, q: int) -> float:
        """𝔐(q) 안에서 허용되는 |β|"""
        return self.radius / q


# 주파수 분류 결과
class ArcClassification(BaseModel):
    kind: Literal["major", "minor"]
    freq: Optional[RationalFrequency] = None
    box: Optional[int] = None

    @model_validator(mode="after")
    def _check_major(self):
        if self.kind == "major" and (self.freq is None or self.box is None):
            raise ValueError("major 분류에는 유리 주파수와 박스가 필요합니다")
        return self

    @property
    def is_major(self) -> bool:
        return self.kind == "major"


# 주호 모형과 실측값 비교
class ModelReport(BaseModel):
    model: ComplexValue
    measured: Optional[ComplexValue] = None
    relative_error: Optional[float] = None
    scaled_error: Optional[float] = None
    exceptional_correction: Literal["omitted"] = "omitted"


# 소호 표본 최댓값 보고서
class MinorScanReport(BaseModel):
    sup_abs: float
    arg_max: float
    ratio_to_peak: float
    sample_count: int
    minor_count: int
    seed: int
