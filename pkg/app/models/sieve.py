# app/models/sieve.py
# 소수/폰 망골트 데이터 스키마 - Λ 테이블, 등차수열, 가중 수열, 검사 보고서

from math import gcd
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


# 폰 망골트 함수 테이블 (values[n] = Λ(n), 인덱스 0은 사용하지 않음)
class LambdaTable(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    limit: int = Field(..., ge=1)
    values: np.ndarray
    smallest_prime_factor: np.ndarray

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.values) != self.limit + 1 or len(self.smallest_prime_factor) != self.limit + 1:
            raise ValueError("테이블 배열 길이는 limit + 1 이어야 합니다")
        return self

    def value(self, n: int) -> float:
        """Λ(n), 범위 밖(n < 1 또는 n > limit)이면 0"""
        if n < 1 or n > self.limit:
            return 0.0
        return float(self.values[n])

    def is_prime(self, n: int) -> bool:
        return 2 <= n <= self.limit and int(self.smallest_prime_factor[n]) == n

    def as_list(self) -> List[float]:
        """n = 1..limit 값 목록"""
        return self.values[1:].tolist()


# 등차수열 offset + step·x (x = 1..length), ambient 구간 [ambient] 안에 위치
class Progression(BaseModel):
    model_config = ConfigDict(frozen=True)

    offset: int
    step: int = Field(..., ge=1)
    length: int = Field(..., ge=0)
    ambient: int

    @model_validator(mode="after")
    def _check_bounds(self):
        if self.length > 0 and self.offset + self.step < 1:
            raise ValueError(f"첫 원소가 1보다 작습니다: offset={self.offset}, step={self.step}")
        if self.offset + self.step * self.length > self.ambient:
            raise ValueError(
                f"등차수열이 구간을 벗어납니다: {self.offset} + {self.step}·{self.length} > {self.ambient}"
            )
        return self

    @classmethod
    def reduced_progression(cls, offset: int, step: int, length: int, ambient: int) -> "Progression":
        """gcd(offset, step) = 1 을 강제하는 생성자"""
        if gcd(offset, step) != 1:
            raise ValueError(f"서로소가 아닌 등차수열입니다: gcd({offset}, {step}) ≠ 1")
        return cls(offset=offset, step=step, length=length, ambient=ambient)

    @property
    def reduced(self) -> bool:
        return gcd(self.offset, self.step) == 1

    @property
    def first(self) -> int:
        return self.offset + self.step

    @property
    def last(self) -> int:
        return self.offset + self.step * self.length

    def members(self) -> np.ndarray:
        return self.offset + self.step * np.arange(1, self.length + 1, dtype=np.int64)

    def index_of(self, n: int) -> Optional[int]:
        """n = offset + step·x 인 x (1 ≤ x ≤ length), 없으면 None"""
        diff = n - self.offset
        if diff % self.step:
            return None
        x = diff // self.step
        return x if 1 <= x <= self.length else None

    def contains(self, n: int) -> bool:
        return self.index_of(n) is not None

    def is_subprogression_of(self, parent: "Progression") -> bool:
        """모든 원소가 parent에 속하는지 정수 연산으로 확인"""
        if self.length == 0:
            return True
        if not parent.contains(self.first) or not parent.contains(self.last):
            return False
        return self.length == 1 or self.step % parent.step == 0

    def compose(self, local: "Progression") -> "Progression":
        """
        로컬 인덱스 좌표의 부분 수열을 이 수열의 원래 정수 좌표로 변환

        Args:
            local: 인덱스 x ∈ [length] 위의 등차수열 a′ + q′·[X′]

        Returns:
            (offset + step·a′) + (step·q′)·[X′]
        """
        if local.length and (local.first < 1 or local.last > self.length):
            raise ValueError("로컬 수열이 인덱스 범위 [length]를 벗어납니다")
        return Progression(
            offset=self.offset + self.step * local.offset,
            step=self.step * local.step,
            length=local.length,
            ambient=self.ambient,
        )


# 등차수열 위의 실수값 가중 수열 (values[x-1] = x번째 값)
class WeightedSequence(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray
    descriptor: Literal["majorant", "balanced", "indicator-weighted"]
    progression: Optional[Progression] = None

    @model_validator(mode="after")
    def _check_values(self):
        if self.progression is not None and len(self.values) != self.progression.length:
            raise ValueError(
                f"수열 길이 {len(self.values)}와 등차수열 길이 {self.progression.length}가 다릅니다"
            )
        if self.descriptor == "majorant" and np.any(self.values < 0):
            raise ValueError("majorant 수열은 음수 값을 가질 수 없습니다")
        return self

    @property
    def length(self) -> int:
        return len(self.values)

    def at(self, x: int) -> float:
        """x번째 값 (지지 집합 [length] 밖이면 0)"""
        if 1 <= x <= self.length:
            return float(self.values[x - 1])
        return 0.0


# Siegel-Walfisz 검사 보고서
class SiegelWalfiszReport(BaseModel):
    x: float
    q: int
    a: int
    measured: float
    main_term: float
    relative_error: float


# 짧은 구간 등차수열 소수 합 검사 보고서
class ShortAPReport(BaseModel):
    x: float
    h: float
    q: int
    a: int
    sum: float
    lower: float
    upper: float
    within: bool
    in_asserted_range: bool
