# app/models/singular.py
# 특이급수 스키마

from typing import Optional

from pydantic import BaseModel, Field


# 소수 p에서의 국소 인자 A(p)와 해 개수 M(p)
class LocalFactorReport(BaseModel):
    prime: int
    a_value: float
    a_from_sums: float
    m_count: int = Field(..., ge=0)
    identity_residual: float


# 부분곱 Π_{p≤P, p∤q} (1 + A(p)) 보고서
class SingularSeriesReport(BaseModel):
    q: int
    a: int
    k: int
    prime_limit: int
    partial_product: float
    factor_count: int
    tail_bound_estimate: Optional[float] = None
    fit_slope: Optional[float] = None
