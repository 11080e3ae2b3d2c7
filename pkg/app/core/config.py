import os
from pathlib import Path
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

load_dotenv()

# 기본 경로 설정
BASE_DIR = Path(__file__).resolve().parent.parent

class Settings(BaseSettings):
    API_V1_STR: str = "/api"
    PROJECT_NAME: str = "Shifted Prime Lab API"

    # API 서버 설정
    API_PORT: int = int(os.getenv("API_PORT", "8000"))
    API_HOST: str = os.getenv("API_HOST", "0.0.0.0")

    # 출력 파일 경로 설정 (격자 바이너리, CSV 표)
    DATA_DIR: str = os.getenv("DATA_DIR", str(BASE_DIR.parent / "data"))

    # 메모리 상한 (테이블 원소 개수 기준)
    MEMORY_CEILING: int = int(os.getenv("MEMORY_CEILING", str(10**8)))
    # 주파수 격자 메모리 상한 (바이트, 격자점 하나당 16바이트)
    GRID_BYTES_CEILING: int = int(os.getenv("GRID_BYTES_CEILING", str(2**31)))

    # 완전 지수합 직접 루프 상한
    DIRECT_SUM_LIMIT: int = int(os.getenv("DIRECT_SUM_LIMIT", str(10**7)))
    # 단위근 재정규화 주기
    ROOT_RENORMALIZE_INTERVAL: int = int(os.getenv("ROOT_RENORMALIZE_INTERVAL", str(2**16)))

    # 특이급수 국소 인자 계산 소수 상한
    LOCAL_PRIME_LIMIT: int = int(os.getenv("LOCAL_PRIME_LIMIT", str(10**5)))
    # meet-in-the-middle 해시 샤드 상한
    MITM_SHARD_LIMIT: int = int(os.getenv("MITM_SHARD_LIMIT", str(10**7)))

    # 격자/점별 일치 검사 표본 수
    SPOT_CHECK_COUNT: int = int(os.getenv("SPOT_CHECK_COUNT", "64"))
    # 패턴 목격 쌍 최대 개수
    WITNESS_CAP: int = int(os.getenv("WITNESS_CAP", "64"))

    # 밀도 증가 반복 설정
    INCREMENT_MAX_STEPS: int = int(os.getenv("INCREMENT_MAX_STEPS", "50"))
    INCREMENT_Q_MAX: int = int(os.getenv("INCREMENT_Q_MAX", "12"))
    INCREMENT_A_EXP: float = float(os.getenv("INCREMENT_A_EXP", "3.0"))
    INCREMENT_MIN_LENGTH: int = int(os.getenv("INCREMENT_MIN_LENGTH", "16"))

    # 난수 시드 기본값 (소호 표본, 섞인 탐욕 생성기)
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "1"))

    # 경로 생성 함수
    def ensure_directories(self):
        """필요한 디렉토리가 존재하는지 확인하고, 없으면 생성"""
        Path(self.DATA_DIR).mkdir(parents=True, exist_ok=True)

    # 설정 유효성 검사
    def validate_settings(self):
        """상한 값들이 양수인지 확인"""
        for name in ("MEMORY_CEILING", "GRID_BYTES_CEILING", "DIRECT_SUM_LIMIT",
                     "LOCAL_PRIME_LIMIT", "MITM_SHARD_LIMIT", "ROOT_RENORMALIZE_INTERVAL"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} 설정은 양수여야 합니다. .env 파일을 확인하세요.")

    class Config:
        case_sensitive = True

 # 초기화
settings = Settings()
