# app/cli.py
# 명령줄 인터페이스 - 모듈별 하위 명령, 결과는 표준 출력에 JSON(또는 CSV)으로 기록

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel

from app.analytic.arithmetic import integer_root
from app.analytic.counting.moments import (
    moment_exact,
    moment_grid,
    restriction_ratio,
    spectrum_sweep,
    vinogradov_count,
)
from app.analytic.counting.patterns import count_direct, count_fourier, find_pattern_free, pattern_progression
from app.analytic.counting.singular import decay_constant, singular_series
from app.analytic.fourier.arcs import classify, compare_model, default_cutoff, major_model_sd, minor_sup_scan
from app.analytic.fourier.expsum import (
    nu_hat_grid,
    power_grid,
    s_d_grid,
    s_d_point,
    shifted_prime_weights,
    spot_check,
    suggest_grid_size,
)
from app.analytic.fourier.gauss import bound_ratio, bound_sweep, complete_sum_factored
from app.analytic.fourier.grid_io import write_grid
from app.analytic.increment.driver import increment_iterate
from app.analytic.primes.sieve import check_short_ap, check_siegel_walfisz, lambda_progression, psi
from app.core.config import settings
from app.core.exceptions import DomainError, LabError
from app.core.logger import setup_logger
from app.models.arcs import ArcParameters
from app.models.expsum import ExpSumSpec, RationalFrequency
from app.models.gauss import CompleteSumResult, CompleteSumSpec
from app.models.increment import IncrementLimits
from app.models.moments import MomentSpec
from app.models.patterns import PrimeSubset
from app.services.experiment_service import get_experiment_service
from app.services.table_service import get_lambda_table

logger = logging.getLogger(__name__)


def _emit(payload) -> None:
    """pydantic 모델 또는 dict를 한 줄 JSON으로 출력"""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    print(json.dumps(payload, ensure_ascii=False))


def _ints(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _floats(text: str) -> List[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def read_set_file(path: str) -> List[int]:
    """한 줄에 십진 정수 하나인 집합 파일 읽기 (빈 줄 무시)"""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [int(line.strip()) for line in lines if line.strip()]


def _subset_from_args(table, args, N: int, k: int) -> PrimeSubset:
    """--set all | file PATH | greedy | filter m:r1,r2"""
    kind, *rest = args.set
    if kind == "all":
        members = [n for n in range(2, N + 1) if table.is_prime(n)]
    elif kind == "file":
        if not rest:
            raise DomainError("--set file 에는 경로가 필요합니다")
        members = read_set_file(rest[0])
    elif kind in ("greedy", "greedy-descending", "greedy-ascending", "greedy-shuffled"):
        strategy = "greedy-descending" if kind == "greedy" else kind
        members = find_pattern_free(table, N, k, strategy, seed=args.seed).subset.members
    elif kind == "filter":
        if not rest or ":" not in rest[0]:
            raise DomainError("--set filter 에는 m:r1,r2 형식이 필요합니다")
        modulus, residues = rest[0].split(":", 1)
        result = find_pattern_free(table, N, k, "congruence-filter", int(modulus), _ints(residues))
        members = result.subset.members
    else:
        raise DomainError(f"알 수 없는 집합 종류입니다: {kind}")
    return PrimeSubset(ambient=N, members=members)


def cmd_sieve(args) -> None:
    table = get_lambda_table(args.limit)
    if args.sw_table:
        frame = get_experiment_service().siegel_walfisz_frame(args.limit, range(1, args.sw_table + 1))
        frame.to_csv(sys.stdout, index=False)
        return
    if not (args.psi or args.check_sw or args.check_short):
        _emit({"limit": args.limit, "psi": psi(table, args.limit)})
    for x, q, a in (_floats(item) for item in args.psi or []):
        _emit({"x": x, "q": int(q), "a": int(a), "psi": psi(table, x, int(q), int(a))})
    for x, q, a in (_floats(item) for item in args.check_sw or []):
        _emit(check_siegel_walfisz(table, x, int(q), int(a)))
    for x, h, q, a in (_floats(item) for item in args.check_short or []):
        _emit(check_short_ap(table, x, h, int(q), int(a)))


def cmd_gauss(args) -> None:
    if args.sweep:
        numerators = None if args.a is None else [args.a]
        report = bound_sweep(args.sweep, args.k, args.epsilon, numerators, args.t, args.b)
        if args.csv:
            service = get_experiment_service()
            service.write_csv(service.bound_sweep_frame(report), args.csv)
        _emit(report)
        return
    spec = CompleteSumSpec(modulus=args.q, numerator=1 if args.a is None else args.a, degree=args.k,
                           linear_coeff=args.t, linear_shift=args.b)
    value = complete_sum_factored(spec)
    _emit(CompleteSumResult(re=value.re, im=value.im, abs=value.abs, ratio=bound_ratio(spec, args.epsilon)))


def _expsum_table(spec: ExpSumSpec):
    return get_lambda_table(max(2, spec.modulus * spec.root_bound + 1))


def cmd_expsum(args) -> None:
    spec = ExpSumSpec(ambient=args.n, modulus=args.d, degree=args.k)
    table = _expsum_table(spec)
    if args.alpha is not None:
        _emit(s_d_point(table, spec, args.alpha))
        return
    grid = s_d_grid(table, spec, args.grid)
    out = args.out or Path(settings.DATA_DIR) / f"sd_N{args.n}_d{args.d}_k{args.k}_L{grid.size}.bin"
    path = write_grid(grid, out, {"N": args.n, "d": args.d, "k": args.k})
    payload = {"out": str(path), "size": grid.size, "degree": grid.degree}
    if args.spot_check:
        payload["spot_check"] = spot_check(table, spec, grid, args.spot_check).model_dump()
    _emit(payload)


def cmd_arcs(args) -> None:
    spec = ExpSumSpec(ambient=args.n, modulus=args.d, degree=args.k)
    cutoff = args.cutoff or default_cutoff(args.n)
    params = ArcParameters(ambient=args.n, cutoff=cutoff, width_constant=args.width)
    if args.classify is not None:
        _emit(classify(params, args.classify))
        return
    if args.errors:
        moduli = [int(q) for q in args.errors.split(",")]
        frame = get_experiment_service().major_arc_errors([args.n], moduli, args.k, args.d)
        frame.to_csv(sys.stdout, index=False)
        return
    table = _expsum_table(spec)
    if args.model:
        a, q, beta = args.model.split(",")
        freq = RationalFrequency(numerator=int(a), denominator=int(q), offset=float(beta))
        measured = s_d_point(table, spec, freq.value)
        _emit(compare_model(major_model_sd(spec, freq), measured, s_d_point(table, spec, 0.0).re))
        return
    _emit(minor_sup_scan(table, spec, params, args.minor_scan, args.seed))


def _moment_weights(args):
    """y = 1..M 의 가중치 (unweighted는 모두 1)"""
    if args.weighting == "shifted-prime":
        table = get_lambda_table(max(2, args.d * args.m + 1))
        return shifted_prime_weights(table, args.d, args.k, args.m)[1:]
    return [1.0] * args.m


def _transform_grid(args):
    """restriction/spectrum 대상: Λ_{b,d} (scale X) 또는 S_d (scale N′)"""
    if args.source == "lambda":
        table = get_lambda_table(max(2, args.b + args.d * args.x))
        seq = lambda_progression(table, args.b, args.d, args.x)
        size = args.grid_size or suggest_grid_size(2 * args.x)
        return nu_hat_grid(seq, size), args.x, None
    spec = ExpSumSpec(ambient=args.n, modulus=args.d, degree=args.k)
    size = args.grid_size or suggest_grid_size(2 * args.n)
    return s_d_grid(_expsum_table(spec), spec, size), args.n, args.k


def cmd_moments(args) -> None:
    if args.mode == "exact":
        spec = MomentSpec(half_order=args.s, degree=args.k, root_bound=args.m,
                          weighting=args.weighting, modulus=args.d)
        table = get_lambda_table(max(2, args.d * args.m + 1)) if args.weighting == "shifted-prime" else None
        _emit({"s": args.s, "k": args.k, "M": args.m, "value": moment_exact(spec, table)})
    elif args.mode == "grid":
        weights = _moment_weights(args)
        order = 2 * args.s
        size = args.grid_size or suggest_grid_size(order * args.m ** args.k)
        _emit(moment_grid(power_grid(weights, args.k, size), order))
    elif args.mode == "vinogradov":
        _emit({"s": args.s, "k": args.k, "M": args.m, "count": vinogradov_count(args.s, args.k, args.m)})
    elif args.mode == "restriction":
        grid, scale, _ = _transform_grid(args)
        _emit({"p": args.p, "scale": scale, "ratio": restriction_ratio(grid, args.p, scale)})
    else:
        grid, peak, degree = _transform_grid(args)
        reports = spectrum_sweep(grid, _floats(args.eta), float(peak), args.exponent, degree)
        frame = get_experiment_service().spectrum_frame(reports)
        if args.csv:
            get_experiment_service().write_csv(frame, args.csv)
        else:
            frame.to_csv(sys.stdout, index=False)


def cmd_singular(args) -> None:
    if args.table:
        frame = get_experiment_service().singular_table(args.q, args.a, args.k, args.plimit, progress=args.progress)
        frame.to_csv(sys.stdout, index=False)
        return
    payload = singular_series(args.q, args.a, args.k, args.plimit).model_dump()
    payload["decay_constant"] = decay_constant(args.q, args.a, args.k, args.plimit)
    _emit(payload)


def cmd_patterns(args) -> None:
    prog = pattern_progression(args.n, args.k, args.q, args.a)
    table = get_lambda_table(max(2, args.n, args.q * prog.length + 1))
    subset = _subset_from_args(table, args, args.n, args.k)
    if args.mode == "fourier":
        size = args.grid_size or suggest_grid_size(prog.length + integer_root(prog.length, args.k) ** args.k)
        _emit(count_fourier(table, subset, prog, args.k, args.q, size))
    else:
        _emit(count_direct(table, subset, prog, args.k, args.q))


def cmd_increment(args) -> None:
    table = get_lambda_table(args.n)
    subset = _subset_from_args(table, args, args.n, args.k)
    overrides = {"q_max": args.qmax, "max_steps": args.steps}
    limits = IncrementLimits(**{key: value for key, value in overrides.items() if value is not None})
    trace = increment_iterate(table, subset, args.n, args.k, limits, progress=args.progress)
    if args.csv:
        get_experiment_service().increment_frame(trace).to_csv(sys.stdout, index=False)
    else:
        _emit(trace)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spl", description="shifted-prime-power pattern lab")
    parser.add_argument("--log-level", default=None, help="DEBUG | INFO | WARNING | ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="Λ 테이블, ψ, 등차수열 분포 검사")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--psi", action="append", metavar="x,q,a")
    p.add_argument("--check-sw", action="append", metavar="x,q,a")
    p.add_argument("--check-short", action="append", metavar="x,h,q,a")
    p.add_argument("--sw-table", type=int, metavar="QMAX", help="q <= QMAX 의 모든 잉여류 오차를 CSV로 출력")
    p.set_defaults(handler=cmd_sieve)

    p = sub.add_parser("gauss", help="완전 지수합과 상한 비율")
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--sweep", type=int, metavar="QMAX")
    p.add_argument("--csv", help="sweep 행을 저장할 CSV 경로")
    p.set_defaults(handler=cmd_gauss)

    p = sub.add_parser("expsum", help="S_d(α) 점별 계산 또는 격자 파일 생성")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--alpha", type=float)
    group.add_argument("--grid", type=int, metavar="SIZE")
    p.add_argument("--out", help="격자 바이너리 경로 (없으면 DATA_DIR 아래 자동 이름)")
    p.add_argument("--spot-check", type=int, metavar="COUNT")
    p.set_defaults(handler=cmd_expsum)

    p = sub.add_parser("arcs", help="주호/소호 분류, 주호 모형, 소호 조사")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--width", type=float, default=1.0)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--classify", type=float, metavar="ALPHA")
    group.add_argument("--model", metavar="a,q,beta")
    group.add_argument("--minor-scan", type=int, metavar="COUNT")
    group.add_argument("--errors", metavar="q1,q2,...", help="a/q 에서 모형 오차 표 (CSV)")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(handler=cmd_arcs)

    p = sub.add_parser("moments", help="모멘트, Vinogradov 해 개수, 제한 비율, 큰 스펙트럼")
    p.add_argument("--mode", choices=["exact", "grid", "vinogradov", "restriction", "spectrum"], required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--weighting", choices=["unweighted", "shifted-prime"], default="unweighted")
    p.add_argument("--grid-size", type=int, default=None)
    p.add_argument("--source", choices=["lambda", "sd"], default="lambda")
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--x", type=int, default=10**4)
    p.add_argument("--n", type=int, default=10**4)
    p.add_argument("--p", type=float, default=3.0)
    p.add_argument("--eta", default="0.05,0.1,0.2,0.4,0.8")
    p.add_argument("--exponent", type=float, default=None)
    p.add_argument("--csv", help="spectrum 행을 저장할 CSV 경로 (없으면 표준 출력)")
    p.set_defaults(handler=cmd_moments)

    p = sub.add_parser("singular", help="특이급수 부분곱과 국소 인자 표")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--plimit", type=int, default=1000)
    p.add_argument("--table", action="store_true", help="소수별 CSV 출력")
    p.add_argument("--progress", action="store_true")
    p.set_defaults(handler=cmd_singular)

    p = sub.add_parser("patterns", help="p₁, p₁+(p₂-1)^k 패턴 개수")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--set", nargs="+", default=["all"], metavar="KIND", help="all | file PATH | greedy | filter m:r1,r2")
    p.add_argument("--mode", choices=["direct", "fourier"], default="direct")
    p.add_argument("--grid-size", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(handler=cmd_patterns)

    p = sub.add_parser("increment", help="밀도 증가 반복")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--set", nargs="+", default=["greedy"], metavar="KIND", help="file PATH | greedy | filter m:r1,r2")
    p.add_argument("--qmax", type=int, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--csv", action="store_true", help="단계별 CSV 출력")
    p.add_argument("--progress", action="store_true")
    p.set_defaults(handler=cmd_increment)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    명령 실행

    Args:
        argv: 인자 목록 (None이면 sys.argv)

    Returns:
        종료 코드 (계산 오류는 2)
    """
    args = build_parser().parse_args(argv)
    if args.log_level:
        setup_logger(level=args.log_level)
    try:
        args.handler(args)
    except (LabError, ValueError) as e:
        logger.error(f"{args.command} 실행 중 오류 발생: {str(e)}")
        print(json.dumps({"error": type(e).__name__, "message": str(e)}, ensure_ascii=False), file=sys.stderr)
        return 2
    return 0


def _command(name: str):
    def entry() -> int:
        return main([name, *sys.argv[1:]])
    entry.__name__ = f"{name}_main"
    return entry


sieve_main = _command("sieve")
gauss_main = _command("gauss")
expsum_main = _command("expsum")
arcs_main = _command("arcs")
moments_main = _command("moments")
singular_main = _command("singular")
patterns_main = _command("patterns")
increment_main = _command("increment")


if __name__ == "__main__":
    sys.exit(main())
