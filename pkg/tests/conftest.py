# tests/conftest.py
# 공용 픽스처 - 세션 범위 Λ 테이블, 고정 기준값(golden) 저장소

import json
from pathlib import Path

import pytest

from app.analytic.primes.sieve import build_lambda_table

GOLDEN_PATH = Path(__file__).with_name("goldens.json")


class GoldenValues:
    """
    실행 결과를 고정 기준값과 비교

    기준값이 아직 없으면 관측값을 기록하고 해당 테스트는 skip 처리한다.
    """

    def __init__(self, path: Path):
        self.path = path
        self.values = json.loads(path.read_text(encoding="utf-8")) if path.exists() else {}
        self.recorded = {}

    def check(self, name: str, value: float, rel: float = 1e-9):
        self.check_all({name: value}, rel)

    def check_all(self, observed: dict, rel: float = 1e-9):
        missing = {name: value for name, value in observed.items() if name not in self.values}
        for name, value in observed.items():
            if name not in missing:
                assert value == pytest.approx(self.values[name], rel=rel, abs=1e-12), name
        if missing:
            self.recorded.update(missing)
            pytest.skip(f"기준값 기록: {sorted(missing)}")

    def save(self):
        if not self.recorded:
            return
        merged = {**self.values, **self.recorded}
        self.path.write_text(json.dumps(merged, indent=2, sort_keys=True) + "\n", encoding="utf-8")


@pytest.fixture(scope="session")
def goldens():
    store = GoldenValues(GOLDEN_PATH)
    yield store
    store.save()


@pytest.fixture(scope="session")
def small_table():
    """n ≤ 10⁴"""
    return build_lambda_table(10**4)


@pytest.fixture(scope="session")
def medium_table():
    """n ≤ 2·10⁵"""
    return build_lambda_table(2 * 10**5)


@pytest.fixture(scope="session")
def large_table():
    """n ≤ 1.1·10⁶ (짧은 구간 검사와 주호 모형 비교용)"""
    return build_lambda_table(1_100_001)
