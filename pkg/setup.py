# setup.py
# 설치 스크립트 - 프로젝트 설치를 위한 설정

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="shifted_prime_lab",
    version="0.1.0",
    description="소수 부분집합의 p₁, p₁+(p₂-1)^k 패턴 수치 실험 도구",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
    install_requires=[
        "python-dotenv>=1.0.0",
        "numpy>=1.26.0",
        "pandas>=2.1.0",
        "sympy>=1.12",
        "tqdm>=4.66.0",
        "colorlog>=6.7.0",
        "pydantic>=2.5.0",
        "pydantic-settings>=2.0.0",
        "fastapi>=0.105.0",
        "uvicorn>=0.24.0",
    ],
    entry_points={
        "console_scripts": [
            "spl=app.cli:main",
            "spl-server=app.main:main",
            "sieve=app.cli:sieve_main",
            "gauss=app.cli:gauss_main",
            "expsum=app.cli:expsum_main",
            "arcs=app.cli:arcs_main",
            "moments=app.cli:moments_main",
            "singular=app.cli:singular_main",
            "patterns=app.cli:patterns_main",
            "increment=app.cli:increment_main",
        ],
    },
)
