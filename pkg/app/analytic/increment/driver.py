# app/analytic/increment/driver.py
# 밀도 증가 반복 - 단계 판정(패턴/공차/길이/증가)과 반복 실행

import logging
import math
from typing import Optional

from tqdm import tqdm

from app.analytic.arithmetic import exact_root
from app.analytic.counting.patterns import count_direct, weighted_density
from app.analytic.increment.local_inverse import (
    balanced_function,
    default_arc_parameters,
    find_translate,
    mass_concentration,
)
from app.core.exceptions import DegenerateInputError
from app.models.increment import IncrementLimits, IncrementOutcome, IncrementTrace, TraceStep
from app.models.patterns import PrimeSubset
from app.models.sieve import LambdaTable, Progression

logger = logging.getLogger(__name__)


def restrict(A: PrimeSubset, prog: Progression) -> PrimeSubset:
    """𝒜 ∩ P (원래 정수 좌표 유지)"""
    return PrimeSubset(ambient=A.ambient, members=[m for m in A.members if prog.contains(m)], progression=prog)


def _density_or_zero(table: LambdaTable, A: PrimeSubset, prog: Progression) -> float:
    try:
        return weighted_density(table, A, prog)
    except DegenerateInputError:
        return 0.0


def increment_step(table: LambdaTable, A: PrimeSubset, prog: Progression, k: int,
                   limits: Optional[IncrementLimits] = None) -> IncrementOutcome:
    """
    한 단계: 패턴 발견 / 공차 초과 / 길이 부족 / 밀도 증가 / 증가 없음 중 하나

    Args:
        table: Λ 테이블
        A: 소수 부분집합 (prog 밖 원소는 무시)
        prog: a + q^k·[N′]
        k: 차수
        limits: A_exp, min_length, q_max 등

    Returns:
        단계 결과 (새 밀도는 같은 가중 비율 규칙으로 직접 측정)
    """
    limits = limits or IncrementLimits()
    q = exact_root(prog.step, k)
    inside = restrict(A, prog)
    density = _density_or_zero(table, inside, prog)

    if prog.length < limits.min_length:
        return IncrementOutcome(kind="length-too-small", density=density)

    count = count_direct(table, inside, prog, k, q)
    if count.prime_pairs > 0:
        return IncrementOutcome(kind="patterns-found", density=density, count=count)

    f = balanced_function(table, inside, prog, k)
    if f.density <= 0:
        raise DegenerateInputError(f"밀도가 0입니다 (|𝒜 ∩ P| = {len(inside)})")

    arcs = default_arc_parameters(prog.length, limits.cutoff, limits.width_constant)
    concentration = mass_concentration(f, limits.grid_size, limits.q_max, arcs)
    q_new = concentration.best_q
    if (q * q_new) ** k > math.log(prog.ambient) ** limits.A_exp:
        return IncrementOutcome(kind="common-difference-too-large", density=f.density, chosen_modulus=q_new)

    translate = find_translate(f, q_new, arcs)
    sub = translate.subprog
    if sub.length < limits.min_length:
        return IncrementOutcome(kind="length-too-small", density=f.density, chosen_modulus=q_new, prog=sub)
    if not sub.is_subprogression_of(prog):
        raise DegenerateInputError(f"부분 수열 {sub}이(가) 부모 {prog}에 포함되지 않습니다")

    new_density = _density_or_zero(table, inside, sub)
    gain = new_density - f.density
    kind = "subprogression-found" if gain > 0 else "no-gain"
    logger.info(f"증가 단계: δ={f.density:.5f} → {new_density:.5f}, q′={q_new}, 길이 {sub.length}, 결과 {kind}")
    return IncrementOutcome(
        kind=kind,
        density=f.density,
        prog=sub,
        new_density=new_density,
        gain=gain,
        chosen_modulus=q_new,
    )


def increment_iterate(table: LambdaTable, A: PrimeSubset, N: int, k: int,
                      limits: Optional[IncrementLimits] = None, progress: bool = False) -> IncrementTrace:
    """
    {2, ..., N} = 1 + 1·[N-1] 에서 시작해 증가 단계를 반복

    Returns:
        단계 기록과 종료 사유
    """
    limits = limits or IncrementLimits()
    current = Progression(offset=1, step=1, length=N - 1, ambient=N)
    steps = []
    stop_reason = "max-steps"

    for index in tqdm(range(1, limits.max_steps + 1), disable=not progress, desc="increment"):
        q = exact_root(current.step, k)
        try:
            outcome = increment_step(table, A, current, k, limits)
        except DegenerateInputError as e:
            logger.warning(f"{index}단계 퇴화 입력: {str(e)}")
            steps.append(TraceStep(
                index=index, kind="degenerate-input",
                density=_density_or_zero(table, restrict(A, current), current),
                modulus=q, length=current.length, progression=current,
            ))
            stop_reason = "degenerate-input"
            break

        steps.append(TraceStep(
            index=index, kind=outcome.kind, density=outcome.density,
            modulus=q, length=current.length, progression=current, gain=outcome.gain,
        ))
        if outcome.kind != "subprogression-found":
            stop_reason = outcome.kind
            break
        current = outcome.prog

    logger.info(f"증가 반복 종료: {len(steps)}단계, 사유 {stop_reason}")
    return IncrementTrace(N=N, k=k, steps=steps, stop_reason=stop_reason)
