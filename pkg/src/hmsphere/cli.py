"""Command-line interface: ``hmsphere {analyze,sweep,solve,profile,verify}``.

Exit codes: 0 success, 1 verification failure, 2 argument or domain error,
3 target period unreachable, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass

from . import kernels
from .curvature import Params, h2_from_scalar
from .errors import BracketError, DomainError, IntegrationError
from .existence import ExistenceQuery, exists_embedded, solve_for_period
from .io import (
    PROFILE_HEADER,
    SWEEP_HEADER,
    certificate_to_dict,
    closure_to_dict,
    disk_svg,
    profile_rows,
    sweep_rows,
    write_csv,
)
from .period import limit_at_c0, limit_at_c0_printed, limit_at_infinity, period_sample
from .potential import critical_point, critical_point_closed_form
from .profile import closure_check, disk_projection, integrate_profile

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_ARGS = 2
EXIT_UNREACHABLE = 3
EXIT_NUMERIC = 4


class UsageError(Exception):
    """Bad option combination detected after parsing."""


@dataclass(frozen=True)
class RunConfig:
    params: Params
    tol_root: float = 1e-12
    tol_quad: float = 1e-10
    tol_ode: float = 1e-10

    def __post_init__(self):
        for name in ("tol_root", "tol_quad", "tol_ode"):
            if not getattr(self, name) > 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")


def _positive_float(text):
    x = float(text)
    if not x > 0 or not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return x


def _config(args) -> RunConfig:
    if args.H is not None and args.R is not None:
        raise UsageError("give either --H or --R, not both")
    if args.R is not None:
        if args.m != 2:
            raise UsageError("--R (scalar curvature) is only meaningful with --m 2")
        H = h2_from_scalar(args.R, args.n)
    elif args.H is not None:
        H = args.H
    else:
        raise UsageError("one of --H or --R is required")
    return RunConfig(Params(args.n, args.m, H), args.tol_root, args.tol_quad, args.tol_ode)


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _json_dump(obj, stream):
    json.dump(obj, stream, indent=2, allow_nan=False)
    stream.write("\n")


def _rel(a, b):
    return abs(a - b) / abs(b)


def cmd_analyze(args) -> int:
    cfg = _config(args)
    p = cfg.params
    crit = critical_point(p)
    report = {
        "n": p.n,
        "m": p.m,
        "H": p.H,
        "v0": crit.v0,
        "c0": crit.c0,
        "a": crit.a,
        "A": limit_at_infinity(p) if p.H > 0 else None,
        "B": limit_at_c0(p),
        "backend": kernels.BACKEND,
    }
    closed = critical_point_closed_form(p)
    if closed is not None:
        report["closed_form"] = {
            "v0": closed.v0,
            "c0": closed.c0,
            "a": closed.a,
            "max_rel_diff": max(_rel(crit.v0, closed.v0), _rel(crit.c0, closed.c0), _rel(crit.a, closed.a)),
        }
    printed_b = limit_at_c0_printed(p)
    if printed_b is not None:
        report["B_closed_form"] = printed_b
        report["B_rel_diff"] = _rel(report["B"], printed_b)
    with _open_out(args.out) as fh:
        if args.json:
            _json_dump(report, fh)
        else:
            for key, val in report.items():
                if isinstance(val, dict):
                    for sub, v in val.items():
                        print(f"{key + '.' + sub:<24} {v!r}", file=fh)
                else:
                    print(f"{key:<24} {val if isinstance(val, str) else repr(val)}", file=fh)
    return EXIT_OK


def sweep_grid(c0: float, c_min: float, c_max: float, samples: int) -> list[float]:
    """C values with geometric spacing in C - c0 from c_min to c_max."""
    if samples == 1:
        return [c_min]
    lo, hi = c_min - c0, c_max - c0
    ratio = hi / lo
    grid = [c0 + lo * ratio ** (i / (samples - 1)) for i in range(samples)]
    grid[0], grid[-1] = c_min, c_max
    return grid


def cmd_sweep(args) -> int:
    cfg = _config(args)
    p = cfg.params
    c0 = critical_point(p).c0
    c_min = args.c_min if args.c_min is not None else c0 * (1 + 1e-4)
    c_max = args.c_max if args.c_max is not None else 100.0 * c0
    if not c_min > c0:
        raise DomainError(f"--c-min {c_min!r} must exceed c0 = {c0!r}")
    if not c_max > c_min:
        raise UsageError(f"empty range: --c-max {c_max!r} must exceed --c-min {c_min!r}")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    grid = sweep_grid(c0, c_min, c_max, args.samples)
    # rows are independent; the compiled kernel releases the GIL
    with ThreadPoolExecutor(max_workers=min(8, os.cpu_count() or 1)) as pool:
        rows = list(pool.map(lambda C: period_sample(p, C, cfg.tol_quad, cfg.tol_root), grid))
    with _open_out(args.out) as fh:
        write_csv(fh, SWEEP_HEADER, sweep_rows(rows))
    return EXIT_OK


def cmd_solve(args) -> int:
    cfg = _config(args)
    if args.k is None:
        raise UsageError("--k is required")
    query = ExistenceQuery(cfg.params, args.k)
    result = exists_embedded(query, C_max=args.c_max, tol_quad=cfg.tol_quad)
    with _open_out(args.out) as fh:
        _json_dump(certificate_to_dict(result, k=args.k), fh)
    if result.status != "certified":
        print(f"no certificate ({result.status}): {result.reason}", file=sys.stderr)
        return EXIT_UNREACHABLE
    return EXIT_OK


def cmd_profile(args) -> int:
    cfg = _config(args)
    p = cfg.params
    if args.C is not None:
        C = args.C
        k = args.k if args.k is not None else 1
    elif args.k is not None:
        k = args.k
        result = solve_for_period(p, 2 * math.pi / k, C_max=args.c_max, tol_quad=cfg.tol_quad)
        if result.status != "certified":
            print(f"no certificate ({result.status}): {result.reason}", file=sys.stderr)
            return EXIT_UNREACHABLE
        C = result.C_star
    else:
        raise UsageError("give --C, or --k to solve for C first")
    periods = args.periods if args.periods is not None else k
    code = EXIT_OK
    try:
        prof = integrate_profile(p, C, periods, args.samples, cfg.tol_ode, cfg.tol_quad)
        samples = prof.samples
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        prof, samples, code = None, exc.partial, EXIT_NUMERIC
    with _open_out(args.out) as fh:
        write_csv(fh, PROFILE_HEADER, profile_rows(samples))
    if len(samples) >= 2:
        report = closure_to_dict(closure_check(samples, periods), prof)
        report["complete"] = code == EXIT_OK
        if args.out in (None, "-"):
            _json_dump(report, sys.stderr)
        else:
            with open(args.out + ".closure.json", "w", encoding="utf-8") as fh:
                _json_dump(report, fh)
    if args.svg and samples:
        pts = [disk_projection(s.vartheta, s.theta) for s in samples]
        title = f"n={p.n} m={p.m} H={p.H!r} C={C!r}"
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(disk_svg(pts, title=title))
    return code


def cmd_verify(args) -> int:
    from . import verify

    results = verify.run(args.suite, args.seed, stream=sys.stdout)
    failed = [r.ident for r in results if not r.passed]
    total = sum(r.seconds for r in results)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed in {total:.2f}s (backend: {kernels.BACKEND})")
    if failed:
        print("failed: " + ", ".join(failed))
        return EXIT_VERIFY
    return EXIT_OK


def _add_problem(sp):
    sp.add_argument("--n", type=int, required=True, help="hypersurface dimension")
    sp.add_argument("--m", type=int, required=True, help="order of the mean curvature")
    sp.add_argument("--H", type=float, help="prescribed H_m")
    sp.add_argument("--R", type=float, help="scalar curvature (m = 2 only; converted to H_2)")
    sp.add_argument("--tol-root", type=_positive_float, default=1e-12)
    sp.add_argument("--tol-quad", type=_positive_float, default=1e-10)
    sp.add_argument("--tol-ode", type=_positive_float, default=1e-10)
    sp.add_argument("--out", default="-", help="output path, '-' for stdout")
    sp.add_argument("--json", action="store_true", help="machine-readable output where applicable")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hmsphere",
        description="Rotational hypersurfaces of constant m-th mean curvature in the unit sphere.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="critical data and period limits")
    _add_problem(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("sweep", help="tabulate turning points and periods over C")
    _add_problem(sp)
    sp.add_argument("--c-min", type=float, help="smallest C (default c0 * (1 + 1e-4))")
    sp.add_argument("--c-max", type=float, help="largest C (default 100 * c0)")
    sp.add_argument("--samples", type=int, default=50)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("solve", help="find C with angular period 2 pi / k")
    _add_problem(sp)
    sp.add_argument("--k", type=int, help="winding number")
    sp.add_argument("--c-max", type=float, help="end of the C scan (default 1e8 * c0)")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("profile", help="integrate and export the generating curve")
    _add_problem(sp)
    sp.add_argument("--C", type=float, help="energy constant")
    sp.add_argument("--k", type=int, help="winding number (solves for C when --C is absent)")
    sp.add_argument("--c-max", type=float, help="end of the C scan when solving")
    sp.add_argument("--periods", type=int, help="oscillations to integrate (default k, or 1)")
    sp.add_argument("--samples", type=int, default=200, help="samples per period")
    sp.add_argument("--svg", help="write the disk projection as SVG")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("verify", help="run the invariant checks")
    sp.add_argument("--suite", default="all", help="curvature, potential, period, limits, existence, profile, cli or all")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        # DomainError is a ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (BracketError, IntegrationError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
