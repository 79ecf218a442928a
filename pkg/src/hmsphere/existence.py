"""Closure condition P(C) = 2 pi / k: admissible H_m ranges and the C solver.

For fixed H_m > 0 the angular period P is continuous in C on (c0, inf) with
limits B (at c0) and A (at infinity), so every value strictly between them
is attained.  ``admissible_range`` gives the H_m interval on which 2 pi / k
lies between A and B; ``solve_for_period`` finds a concrete C by scanning
and bisection.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

from scipy.optimize import brentq

from .curvature import Params
from .period import PeriodBounds, bounds, limit_at_c0, period_P
from .potential import critical_point

__all__ = [
    "AdmissibleRange",
    "ExistenceQuery",
    "ExistenceCertificate",
    "NoSolution",
    "admissible_range",
    "admissible_range_numeric",
    "solve_for_period",
    "exists_embedded",
]

TWO_PI = 2.0 * math.pi


class AdmissibleRange(NamedTuple):
    H_lo: float
    H_hi: float

    @property
    def empty(self) -> bool:
        """True when there is no certified range (H_lo >= H_hi)."""
        return not self.H_lo < self.H_hi

    def __contains__(self, H) -> bool:
        return self.H_lo < H < self.H_hi


def _min_k(m: int) -> int:
    return 3 if m == 4 else 2


def _check_nmk(n: int, m: int, k: int) -> None:
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    if m == 4 and n < 5:
        raise ValueError("m = 4 needs n >= 5")
    if k < _min_k(m):
        raise ValueError(f"k must be >= {_min_k(m)} for m = {m}, got {k}")


def _lower_end(m: int, k: int) -> float:
    # A(H) = 2 pi / k  <=>  H = cot(pi / k)^m; cot(pi/2) is exactly 0
    if k == 2:
        return 0.0
    return (math.cos(math.pi / k) / math.sin(math.pi / k)) ** m


def admissible_range_numeric(n: int, m: int, k: int) -> AdmissibleRange:
    """H interval from inverting B(H) = 2 pi / k numerically (any m).

    B decreases from sqrt(2) pi at H = 0 towards 0, so the root is bracketed
    in log H on [1e-8, 1e8] whenever 2 pi / k < sqrt(2) pi.
    """
    _check_nmk(n, m, k)
    target = TWO_PI / k

    def gap(log_h):
        return limit_at_c0(Params(n, m, math.exp(log_h))) - target

    lo, hi = math.log(1e-8), math.log(1e8)
    h_hi = math.exp(brentq(gap, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=500))
    return AdmissibleRange(_lower_end(m, k), h_hi)


def admissible_range(n: int, m: int, k: int) -> AdmissibleRange:
    """Open H_m interval on which 2 pi / k lies strictly between A and B.

    Closed-form upper ends for m = 1, 2, 4; numeric inversion otherwise.
    """
    _check_nmk(n, m, k)
    if m == 4:
        h_hi = (k ** 4 - 4) / (n * (n - 4))
    elif m == 2:
        h_hi = (k * k - 2) / n
    elif m == 1:
        h_hi = (k * k - 2) * math.sqrt(n - 1) / (n * math.sqrt(k * k - 1))
    else:
        return admissible_range_numeric(n, m, k)
    return AdmissibleRange(_lower_end(m, k), h_hi)


@dataclass(frozen=True)
class ExistenceQuery:
    """Request for a profile whose angular period is 2 pi / k."""

    params: Params
    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k}")

    @property
    def target(self) -> float:
        return TWO_PI / self.k

    @property
    def within_theorem_hypotheses(self) -> bool:
        """True when k meets the published minimum for m and H_m is in range.

        m = 4 with k = 2 is accepted by the solver but has no published range.
        """
        p = self.params
        if p.m == 4 and (self.k < 3 or p.n < 5):
            return False
        return p.H in admissible_range(p.n, p.m, self.k)


@dataclass
class ExistenceCertificate:
    """Numerically certified solution of P(C_star) = target."""

    params: Params
    target: float
    C_star: float
    P_achieved: float
    residual: float
    bounds: PeriodBounds
    bracketing: tuple[float, float]
    table: list[tuple[float, float]] = field(default_factory=list)
    status: str = "certified"


@dataclass
class NoSolution:
    """Scan outcome without a certificate.

    ``status`` is ``"unreachable"`` when the target is outside both the
    sampled P range and the open interval between the limits, otherwise
    ``"not_found"`` (e.g. C_max too small).
    """

    params: Params
    target: float
    status: str
    reason: str
    bounds: PeriodBounds
    table: list[tuple[float, float]] = field(default_factory=list)


def _scan(params, grid, tol_quad, workers):
    def one(C):
        return period_P(params, C, tol_quad)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, grid))
    return [one(C) for C in grid]


def solve_for_period(
    params: Params,
    target: float,
    C_max: float | None = None,
    *,
    delta: float = 1e-4,
    rho: float = 1.5,
    tol: float = 1e-9,
    tol_quad: float = 1e-10,
    max_bisect: int = 200,
    workers: int = 1,
) -> ExistenceCertificate | NoSolution:
    """Find the smallest-C solution of P(C) = target on a geometric C grid.

    Scans ``C_j = c0 (1 + delta) rho^j`` up to ``C_max`` (default 1e8 c0),
    takes the first sign change of P - target and bisects it in log C until
    ``|P - target| < tol``.
    """
    params.require_positive()
    if not 0 < target < TWO_PI:
        raise ValueError(f"target must lie in (0, 2 pi), got {target}")
    if not (delta > 0 and rho > 1):
        raise ValueError("need delta > 0 and rho > 1")
    crit = critical_point(params)
    bnds = bounds(params)
    if C_max is None:
        C_max = 1e8 * crit.c0
    C_first = crit.c0 * (1.0 + delta)
    if not C_max > C_first:
        raise ValueError(f"C_max={C_max!r} must exceed c0*(1+delta)={C_first!r}")
    count = int(math.floor(math.log(C_max / C_first) / math.log(rho))) + 1
    grid = [C_first * rho ** j for j in range(count)]
    if grid[-1] < C_max:
        grid.append(C_max)
    values = _scan(params, grid, tol_quad, workers)
    table = list(zip(grid, values))

    for j, (C, P) in enumerate(table):
        if abs(P - target) < tol:
            return ExistenceCertificate(
                params, target, C, P, abs(P - target), bnds, (C, C), table
            )
        if j + 1 < len(table) and (P - target) * (table[j + 1][1] - target) < 0:
            break
    else:
        lo_p, hi_p = min(values), max(values)
        lo_l, hi_l = min(bnds.A, bnds.B), max(bnds.A, bnds.B)
        if not lo_p <= target <= hi_p and not lo_l < target < hi_l:
            status = "unreachable"
            reason = (
                f"target {target:.12g} outside sampled P range [{lo_p:.12g}, {hi_p:.12g}] "
                f"and outside the limits ({lo_l:.12g}, {hi_l:.12g})"
            )
        else:
            status = "not_found"
            reason = f"no sign change of P - target for C in [{grid[0]:.6g}, {grid[-1]:.6g}]"
        return NoSolution(params, target, status, reason, bnds, table)

    lo, hi = math.log(table[j][0]), math.log(table[j + 1][0])
    f_lo = table[j][1] - target
    best = None
    for _ in range(max_bisect):
        mid = 0.5 * (lo + hi)
        C = math.exp(mid)
        P = period_P(params, C, tol_quad)
        if best is None or abs(P - target) < abs(best[1] - target):
            best = (C, P)
        if abs(P - target) < tol:
            break
        if (P - target) * f_lo > 0:
            lo, f_lo = mid, P - target
        else:
            hi = mid
    C, P = best
    return ExistenceCertificate(
        params,
        target,
        C,
        P,
        abs(P - target),
        bnds,
        (table[j][0], table[j + 1][0]),
        table,
    )


def exists_embedded(query: ExistenceQuery, **kwargs) -> ExistenceCertificate | NoSolution:
    """Solve the closure condition P = 2 pi / k for ``query``."""
    return solve_for_period(query.params, query.target, **kwargs)
