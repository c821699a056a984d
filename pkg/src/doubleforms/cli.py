"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .chern_weil import (
    Density,
    PiMultiple,
    euler_density_norm,
    euler_density_pfaffian,
    pontryagin_density_norm,
    pontryagin_density_sym,
    thorpe_report,
)
from .curvature import constant_curvature, power, random_curvature, thorpe_counterexample
from .identities import IdentityVerdict, verify_corollary_star_bianchi, verify_forward_failure
from .suites import FAIL, PASS, SKIP, SUITES, run_suite
from .tensorfile import (
    TensorFileError,
    exact,
    load_tensor_file,
    save_tensor_file,
    thorpe_report_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.dim < 1:
        raise UsageError(f"--dim must be positive, got {args.dim}")
    if args.dim > args.max_dim:
        raise UsageError(f"--dim {args.dim} exceeds --max-dim {args.max_dim}")
    if args.count < 1:
        raise UsageError("--count must be positive")
    results = run_suite(args.suite, args.dim, args.seed, args.count)
    summary = {status: sum(r.status == status for r in results) for status in (PASS, FAIL, SKIP)}
    ok = summary[FAIL] == 0
    _emit(
        {
            "suite": args.suite,
            "dim": args.dim,
            "seed": args.seed,
            "count": args.count,
            "ok": ok,
            "summary": summary,
            "checks": [r.to_json() for r in results],
        },
        args.out,
    )
    for r in results:
        if r.status == FAIL:
            print(f"FAIL {r.name}: {r.detail}", file=sys.stderr)
    print(
        f"verify {args.suite} n={args.dim}: {summary[PASS]} passed, "
        f"{summary[FAIL]} failed, {summary[SKIP]} skipped",
        file=sys.stderr,
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_thorpe(args: argparse.Namespace) -> int:
    tf = load_tensor_file(args.input)
    if tf.kind != "curvature":
        raise UsageError(f"{args.input} holds a {tf.kind!r}, expected a curvature file")
    R = tf.curvature(args.k)
    if R.fiber_rank != 4 * R.k:
        raise UsageError(f"fiber rank {R.fiber_rank} must equal 4k = {4 * R.k}")
    volume = PiMultiple.parse(args.volume) if args.volume else None
    report = thorpe_report(R, cross_check=args.cross_check)
    payload = thorpe_report_json(report, volume)
    payload["input"] = str(args.input)
    payload["cross_checked"] = bool(args.cross_check)
    _emit(payload, args.out)
    consistent = report.plus_consistent and report.minus_consistent and report.abs_consistent
    return EXIT_OK if consistent else EXIT_FAIL


def cmd_counterexample(args: argparse.Namespace) -> int:
    if args.dim < 8:
        raise UsageError(f"the counterexample needs --dim >= 8, got {args.dim}")
    T = thorpe_counterexample(args.dim)
    try:
        save_tensor_file(T, args.out, kind="biform")
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    loaded = load_tensor_file(args.out).form
    if loaded != T:
        print("round trip through the file changed the tensor", file=sys.stderr)
        return EXIT_FAIL
    verdict = verify_forward_failure(args.dim, loaded)
    print(verdict.detail, file=sys.stderr)
    return EXIT_OK if verdict.holds else EXIT_FAIL


def cmd_model(args: argparse.Namespace) -> int:
    if args.model == "constant":
        R = constant_curvature(args.dim, Fraction(args.kappa))
    else:
        if args.dim % 4:
            raise UsageError(f"--dim must be a multiple of 4, got {args.dim}")
        rank = args.rank or args.dim
        R = random_curvature(
            args.seed,
            args.dim,
            rank,
            args.dim // 4,
            want_pair_symmetry=args.pair_symmetric,
            want_bianchi=args.bianchi,
        )
    save_tensor_file(R.form, args.out, kind="curvature")
    return EXIT_OK


def _timed(fn, trials: int):
    start = time.perf_counter()
    for _ in range(trials):
        value = fn()
    return (time.perf_counter() - start) / trials, value


def cmd_bench(args: argparse.Namespace) -> int:
    k = args.k
    if k not in (1, 2):
        raise UsageError(f"--k must be 1 or 2, got {k}")
    n = 4 * k
    R = random_curvature(args.seed, n, n, k, want_bianchi=True)
    rows = {}
    for label, fn in (
        ("power", lambda: power(R, k)),
        ("euler_pfaffian", lambda: euler_density_pfaffian(R)),
        ("euler_norm", lambda: euler_density_norm(R)),
        ("pontryagin_sym", lambda: pontryagin_density_sym(R)),
        ("pontryagin_norm", lambda: pontryagin_density_norm(R)),
        ("corollary_bianchi_star", lambda: verify_corollary_star_bianchi(R, k)),
    ):
        seconds, value = _timed(fn, args.trials)
        if isinstance(value, Density):
            result = exact(value.coefficient)
        elif isinstance(value, IdentityVerdict):
            result = value.holds
        else:
            result = f"{len(value)} nonzero coefficients"
        rows[label] = {"mean_seconds": round(seconds, 6), "result": result}
    _emit({"k": k, "dim": n, "seed": args.seed, "trials": args.trials, "timings": rows}, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doubleforms", description="Exact double-form algebra and Chern-Weil densities."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run identity suites")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=25)
    p.add_argument("--max-dim", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("thorpe", help="Thorpe report for a curvature file")
    p.add_argument("input")
    p.add_argument("--k", type=int)
    p.add_argument("--volume", help='constant-density volume, e.g. "8/3*pi^2"')
    p.add_argument("--cross-check", action="store_true", help="also run the polynomial routes")
    p.add_argument("--out")
    p.set_defaults(func=cmd_thorpe)

    p = sub.add_parser("counterexample", help="write the symmetric (4,4) counterexample")
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("model", help="write a model or random curvature file")
    p.add_argument("model", choices=["constant", "random"])
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--kappa", default="1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rank", type=int)
    p.add_argument("--pair-symmetric", action="store_true")
    p.add_argument("--bianchi", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("bench", help="time the main routines")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TensorFileError, ValueError) as exc:
        print(f"doubleforms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
