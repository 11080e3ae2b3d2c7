# app/models/gauss.py
# 완전 지수합 스키마

import math
from math import gcd
from typing import List

from pydantic import BaseModel, Field, field_validator, model_validator


# 복소수 값 (JSON 직렬화용)
class ComplexValue(BaseModel):
    re: float
    im: float

    @field_validator("re", "im")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(f"유한하지 않은 값입니다: {v}")
        return v

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexValue":
        return cls(re=float(z.real), im=float(z.imag))

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    @property
    def abs(self) -> float:
        return math.hypot(self.re, self.im)


# C(q; a, d) 형태의 완전 지수합 매개변수
class CompleteSumSpec(BaseModel):
    modulus: int = Field(..., ge=1)
    numerator: int
    degree: int = Field(..., ge=1)
    linear_coeff: int = Field(1, ge=1)
    linear_shift: int = 1

    @model_validator(mode="after")
    def _check_coprime(self):
        if gcd(self.numerator, self.modulus) != 1:
            raise ValueError(f"gcd(a, q) ≠ 1: a={self.numerator}, q={self.modulus}")
        if gcd(self.linear_shift, self.linear_coeff) != 1:
            raise ValueError(f"gcd(b, t) ≠ 1: b={self.linear_shift}, t={self.linear_coeff}")
        return self


class CompleteSumResult(BaseModel):
    re: float
    im: float
    abs: float
    ratio: float


class BoundSweepRow(BaseModel):
    q: int
    worst_numerator: int
    abs: float
    ratio: float


# 상한 비율 전수 조사 보고서
class BoundSweepReport(BaseModel):
    degree: int
    epsilon: float
    worst_ratio: float
    worst_q: int
    worst_numerator: int
    rows: List[BoundSweepRow]
