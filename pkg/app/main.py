import uvicorn
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.core.config import settings
from app.core.logger import setup_logger
from app.routers import counting, fourier, increment, primes

# 루트 로거 설정
setup_logger()

app = FastAPI(
    title=settings.PROJECT_NAME,
    openapi_url=f"{settings.API_V1_STR}/openapi.json"
)

# CORS 설정 (개발 환경에서만 전체 허용)
origins = [
    "http://127.0.0.1:5173",
    "*",
]

app.add_middleware(
    CORSMiddleware,
    allow_origins=origins,
    allow_credentials=True,
    allow_methods=["GET", "POST", "OPTIONS"],
    allow_headers=["*"],
    max_age=86400,
)

# API 라우터 설정
app.include_router(primes.router, prefix=settings.API_V1_STR)
app.include_router(fourier.router, prefix=settings.API_V1_STR)
app.include_router(counting.router, prefix=settings.API_V1_STR)
app.include_router(increment.router, prefix=settings.API_V1_STR)


@app.get("/")
def read_root():
    return {"message": settings.PROJECT_NAME}


def main():
    uvicorn.run(app, host=settings.API_HOST, port=settings.API_PORT)
