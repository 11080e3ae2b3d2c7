# app/services/table_service.py
# Λ 테이블 공유 서비스 - 한 번 만든 테이블을 요청 사이에서 재사용

import logging
import threading
from functools import lru_cache
from typing import Dict, List

from app.analytic.primes.sieve import build_lambda_table
from app.models.sieve import LambdaTable

logger = logging.getLogger(__name__)


class TableService:
    """읽기 전용 Λ 테이블 캐시"""

    def __init__(self):
        """초기화"""
        self._tables: Dict[int, LambdaTable] = {}
        self._lock = threading.Lock()

    def get(self, limit: int) -> LambdaTable:
        """
        limit 이상을 덮는 테이블 반환 (없으면 새로 생성)

        Args:
            limit: 필요한 상한

        Returns:
            LambdaTable (limit 이상)
        """
        with self._lock:
            covering = [size for size in self._tables if size >= limit]
            if covering:
                return self._tables[min(covering)]
            table = build_lambda_table(limit)
            # 새 테이블이 덮는 작은 테이블은 버림
            covered = [size for size in self._tables if size < limit]
            for size in covered:
                del self._tables[size]
            self._tables[limit] = table
            logger.info(f"Λ 테이블 캐시 교체: limit={limit}, 제거 {covered}")
            return table

    def cached_limits(self) -> List[int]:
        with self._lock:
            return sorted(self._tables)

    def clear(self):
        with self._lock:
            self._tables.clear()


@lru_cache(maxsize=1)
def get_table_service() -> TableService:
    """
    TableService 인스턴스 가져오기 헬퍼 함수

    Returns:
        TableService 인스턴스
    """
    return TableService()


def get_lambda_table(limit: int) -> LambdaTable:
    return get_table_service().get(limit)
