"""Curvature algebra for hypersurfaces with two principal curvatures.

Principal curvatures are passed as plain diagonal lists.  The normalised
m-th mean curvature is ``H_m = e_m(lambda_1..lambda_n) / C(n, m)`` where
``e_m`` is the elementary symmetric polynomial of degree m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "Params",
    "PrincipalCurvatures",
    "CurvatureReport",
    "elementary_symmetric",
    "mth_mean_curvature",
    "mu_from_lambda",
    "scalar_curvature",
    "h2_from_scalar",
]


@dataclass(frozen=True)
class Params:
    """Geometric problem: an n-dimensional hypersurface with constant H_m.

    Attributes
    ----------
    n : int
        Dimension of the hypersurface (it lives in the unit (n+1)-sphere).
    m : int
        Order of the mean curvature, ``1 <= m <= n - 1``.
    H : float
        Prescribed value of the m-th mean curvature, ``H >= 0``.  Zero is
        accepted for limit evaluations only.
    """

    n: int
    m: int
    H: float

    def __post_init__(self):
        if int(self.n) != self.n or int(self.m) != self.m:
            raise ValueError("n and m must be integers")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 1 <= self.m <= self.n - 1:
            raise ValueError(f"m must satisfy 1 <= m <= n-1, got m={self.m}, n={self.n}")
        if not math.isfinite(self.H) or self.H < 0:
            raise ValueError(f"H must be finite and >= 0, got {self.H}")

    def require_positive(self) -> None:
        if not self.H > 0:
            raise ValueError("this operation requires H_m > 0")


@dataclass(frozen=True)
class PrincipalCurvatures:
    """The (n-1)-fold curvature ``lam`` and the simple curvature ``mu``."""

    lam: float
    mu: float

    @classmethod
    def from_lambda(cls, params: Params, lam: float) -> "PrincipalCurvatures":
        if lam ** params.m - params.H <= 0:
            raise ValueError("need lambda^m > H_m")
        return cls(lam, mu_from_lambda(params, lam))

    def as_list(self, n: int) -> list[float]:
        return [self.lam] * (n - 1) + [self.mu]


@dataclass(frozen=True)
class CurvatureReport:
    """Mean curvature H, squared norm S of the second fundamental form, scalar curvature R."""

    H: float
    S: float
    R: float


def elementary_symmetric(values: Sequence[float], m: int) -> float:
    """Degree-m elementary symmetric polynomial of ``values``.

    Reads the coefficient off prod(1 + x_i z) one factor at a time, so the
    cost is O(len(values) * m) and no subset is ever enumerated.
    """
    e = [1.0] + [0.0] * m
    for k, x in enumerate(values, start=1):
        for j in range(min(k, m), 0, -1):
            e[j] += x * e[j - 1]
    return e[m]


def mth_mean_curvature(lambdas: Sequence[float], m: int) -> float:
    n = len(lambdas)
    if n < 1:
        raise ValueError("need at least one principal curvature")
    if not 1 <= m <= n:
        raise ValueError(f"m must satisfy 1 <= m <= {n}, got {m}")
    return elementary_symmetric(lambdas, m) / math.comb(n, m)


def mu_from_lambda(params: Params, lam: float) -> float:
    """Simple principal curvature that keeps H_m fixed given the multiple one."""
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    n, m = params.n, params.m
    return (n * params.H - (n - m) * lam ** m) / (m * lam ** (m - 1))


def scalar_curvature(n: int, lambdas: Sequence[float]) -> CurvatureReport:
    """Scalar curvature of a hypersurface of the unit sphere (Gauss equation)."""
    if len(lambdas) != n:
        raise ValueError(f"expected {n} principal curvatures, got {len(lambdas)}")
    H = math.fsum(lambdas) / n
    S = math.fsum(x * x for x in lambdas)
    return CurvatureReport(H=H, S=S, R=n * (n - 1) + n * n * H * H - S)


def h2_from_scalar(R: float, n: int) -> float:
    if n < 2:
        raise ValueError("n must be >= 2")
    return (R - n * (n - 1)) / (n * (n - 1))
