# app/models/increment.py
# 밀도 증가 엔진 스키마

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings
from app.models.patterns import PatternCount
from app.models.sieve import Progression, WeightedSequence

OutcomeKind = Literal[
    "patterns-found",
    "common-difference-too-large",
    "length-too-small",
    "subprogression-found",
    "no-gain",
]

StopReason = Literal[
    "patterns-found",
    "common-difference-too-large",
    "length-too-small",
    "no-gain",
    "degenerate-input",
    "max-steps",
]


# f = Λ_{a,q^k}·1_𝒜 - δ·Λ_{a,q^k}
class BalancedFunction(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    sequence: WeightedSequence
    density: float
    base: Progression
    degree: int = Field(1, ge=1)
    # Σ Λ_{a,q^k} (소수 위 질량)
    mass: float

    @property
    def values(self):
        return self.sequence.values

    @property
    def length(self) -> int:
        return self.sequence.length


class IncrementLimits(BaseModel):
    A_exp: float = Field(default_factory=lambda: settings.INCREMENT_A_EXP, gt=0)
    min_length: int = Field(default_factory=lambda: settings.INCREMENT_MIN_LENGTH, ge=1)
    q_max: int = Field(default_factory=lambda: settings.INCREMENT_Q_MAX, ge=1)
    max_steps: int = Field(default_factory=lambda: settings.INCREMENT_MAX_STEPS, ge=1)
    width_constant: float = Field(1.0, gt=0)
    # None이면 ⌈(log N′)²⌉
    cutoff: Optional[int] = None
    grid_size: Optional[int] = None


class MassConcentrationReport(BaseModel):
    best_q: int
    mass: float
    normalized_mass: float
    masses: Dict[int, float]
    total_mass: float


class TranslateReport(BaseModel):
    x: int
    value: float
    modulus: int
    length: int
    # 부모 수열의 인덱스 좌표
    local: Progression
    # 원래 정수 좌표
    subprog: Progression
    subprog_sum: float
    length_rule: str = "X = ceil(N'/(2*pi*Q))"


class InverseCorrelationReport(BaseModel):
    integral: float
    baseline: float
    ratio: float


class IncrementOutcome(BaseModel):
    kind: OutcomeKind
    density: float
    count: Optional[PatternCount] = None
    prog: Optional[Progression] = None
    new_density: Optional[float] = None
    gain: Optional[float] = None
    chosen_modulus: Optional[int] = None


class TraceStep(BaseModel):
    index: int
    kind: str
    density: float
    modulus: int
    length: int
    progression: Progression
    gain: Optional[float] = None


class IncrementTrace(BaseModel):
    N: int
    k: int
    steps: List[TraceStep]
    stop_reason: StopReason

    @property
    def final_density(self) -> float:
        return self.steps[-1].density if self.steps else 0.0
