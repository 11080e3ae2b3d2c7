# app/services/experiment_service.py
# 실험 표 서비스 - 조사 결과를 pandas DataFrame으로 만들고 CSV로 저장

import logging
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, List, Optional, Union

import pandas as pd
from sympy import primerange
from tqdm import tqdm

from app.analytic.counting.singular import local_factor_report
from app.analytic.fourier.arcs import compare_model, major_model_sd
from app.analytic.fourier.expsum import s_d_point
from app.analytic.primes.sieve import check_siegel_walfisz
from app.core.config import settings
from app.models.expsum import ExpSumSpec, RationalFrequency
from app.models.gauss import BoundSweepReport
from app.models.increment import IncrementTrace
from app.models.moments import SpectrumReport
from app.services.table_service import get_lambda_table

logger = logging.getLogger(__name__)


class ExperimentService:
    """실험 표 생성기"""

    def __init__(self, output_dir: Optional[str] = None):
        """
        초기화

        Args:
            output_dir: CSV 저장 디렉토리 (None이면 DATA_DIR)
        """
        self.output_dir = Path(output_dir or settings.DATA_DIR)

    def write_csv(self, frame: pd.DataFrame, name: Union[str, Path]) -> Path:
        """DataFrame을 CSV로 저장 (상대 경로는 output_dir 기준)"""
        path = Path(name)
        if not path.is_absolute():
            path = self.output_dir / path
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False)
        logger.info(f"CSV 저장 완료: {path} ({len(frame)}행)")
        return path

    def bound_sweep_frame(self, report: BoundSweepReport) -> pd.DataFrame:
        return pd.DataFrame([row.model_dump() for row in report.rows])

    def spectrum_frame(self, reports: List[SpectrumReport]) -> pd.DataFrame:
        return pd.DataFrame(
            [{"eta": r.eta, "count": r.count, "normalized": r.normalized} for r in reports]
        )

    def increment_frame(self, trace: IncrementTrace) -> pd.DataFrame:
        return pd.DataFrame([
            {"i": s.index, "density": s.density, "q": s.modulus, "X": s.length, "outcome": s.kind}
            for s in trace.steps
        ])

    def singular_table(self, q: int, a: int, k: int, prime_limit: int, progress: bool = False) -> pd.DataFrame:
        """
        소수별 (p, A(p), M(p), 잔차) 표

        Args:
            q, a, k: 매개변수
            prime_limit: 소수 상한
            progress: tqdm 진행 표시 여부

        Returns:
            DataFrame
        """
        primes = [int(p) for p in primerange(2, prime_limit + 1) if q % p]
        rows = []
        for p in tqdm(primes, disable=not progress, desc="local factors"):
            report = local_factor_report(p, q, a, k)
            rows.append({
                "p": p,
                "A": report.a_value,
                "A_sums": report.a_from_sums,
                "M": report.m_count,
                "residual": report.identity_residual,
            })
        return pd.DataFrame(rows, columns=["p", "A", "A_sums", "M", "residual"])

    def major_arc_errors(self, ambients: Iterable[int], moduli: Iterable[int], k: int = 1, d: int = 1,
                         progress: bool = False) -> pd.DataFrame:
        """β = 0 에서 S_d(a/q)와 주호 모형의 오차 표 (N′마다)"""
        ambients = sorted(ambients)
        table = get_lambda_table(d * max(ambients) + 1)
        rows = []
        for ambient in tqdm(ambients, disable=not progress, desc="major arcs"):
            spec = ExpSumSpec(ambient=ambient, modulus=d, degree=k)
            peak = s_d_point(table, spec, 0.0).re
            for q in moduli:
                for a in range(q):
                    if gcd(a, q) != 1:
                        continue
                    model = major_model_sd(spec, RationalFrequency(numerator=a, denominator=q))
                    measured = s_d_point(table, spec, Fraction(a, q))
                    report = compare_model(model, measured, peak)
                    rows.append({
                        "ambient": ambient, "q": q, "a": a,
                        "model_abs": model.abs,
                        "measured_abs": measured.abs,
                        "relative_error": report.relative_error,
                        "scaled_error": report.scaled_error,
                    })
        return pd.DataFrame(rows)

    def siegel_walfisz_frame(self, x: int, moduli: Iterable[int]) -> pd.DataFrame:
        """주어진 법들의 모든 서로소 잉여류에 대한 Siegel-Walfisz 상대 오차 표"""
        table = get_lambda_table(x)
        rows = []
        for q in moduli:
            for a in range(1, q + 1):
                if gcd(a, q) == 1:
                    rows.append(check_siegel_walfisz(table, x, q, a).model_dump())
        return pd.DataFrame(rows)


def get_experiment_service(output_dir: Optional[str] = None) -> ExperimentService:
    """
    ExperimentService 인스턴스 가져오기 헬퍼 함수

    Returns:
        ExperimentService 인스턴스
    """
    return ExperimentService(output_dir)
