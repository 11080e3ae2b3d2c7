# app/analytic/fourier/grid_io.py
# 격자 파일 입출력 - 8바이트 헤더 + (re, im) 리틀엔디언 double 배열, JSON 사이드카

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from app.core.exceptions import DomainError
from app.models.expsum import FrequencyGrid, GridSidecar

logger = logging.getLogger(__name__)

HEADER_DTYPE = np.dtype("<u8")
VALUE_DTYPE = np.dtype("<f8")


def sidecar_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def write_grid(grid: FrequencyGrid, path: Union[str, Path],
               parameters: Optional[Dict[str, Any]] = None) -> Path:
    """
    격자를 바이너리 파일과 사이드카로 저장

    Args:
        grid: 저장할 격자
        path: 바이너리 파일 경로
        parameters: 사이드카에 기록할 계산 매개변수

    Returns:
        바이너리 파일 경로
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    interleaved = np.empty(2 * grid.size, dtype=VALUE_DTYPE)
    interleaved[0::2] = grid.values.real
    interleaved[1::2] = grid.values.imag
    with open(path, "wb") as fh:
        fh.write(np.array([grid.size], dtype=HEADER_DTYPE).tobytes())
        fh.write(interleaved.tobytes())

    sidecar = GridSidecar(size=grid.size, degree=grid.degree, parameters=parameters or {}, source=path.name)
    sidecar_path(path).write_text(sidecar.model_dump_json(indent=2), encoding="utf-8")
    logger.info(f"격자 저장 완료: {path} ({grid.size}점)")
    return path


def read_grid(path: Union[str, Path]) -> FrequencyGrid:
    """바이너리 격자 파일 읽기 (사이드카가 있으면 degree를 복원)"""
    path = Path(path)
    raw = path.read_bytes()
    if len(raw) < HEADER_DTYPE.itemsize:
        raise DomainError(f"격자 파일 헤더가 없습니다: {path}")
    size = int(np.frombuffer(raw[:8], dtype=HEADER_DTYPE)[0])
    data = np.frombuffer(raw[8:], dtype=VALUE_DTYPE)
    if len(data) != 2 * size:
        raise DomainError(f"격자 파일 길이가 헤더({size}점)와 맞지 않습니다: {path}")

    degree = 0
    meta = sidecar_path(path)
    if meta.exists():
        degree = GridSidecar.model_validate_json(meta.read_text(encoding="utf-8")).degree
    return FrequencyGrid(size=size, values=data[0::2] + 1j * data[1::2], degree=degree)
