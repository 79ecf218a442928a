"""Rotational hypersurfaces of constant m-th mean curvature in the unit sphere.

The package computes the oscillation potential of the profile equation, the
period integrals T and P, their analytic limits, solves the closure
condition P = 2 pi / k and integrates the resulting generating curve.
"""

from .curvature import (
    CurvatureReport,
    Params,
    PrincipalCurvatures,
    elementary_symmetric,
    h2_from_scalar,
    mth_mean_curvature,
    mu_from_lambda,
    scalar_curvature,
)
from .errors import BracketError, DomainError, IntegrationError
from .existence import (
    AdmissibleRange,
    ExistenceCertificate,
    ExistenceQuery,
    NoSolution,
    admissible_range,
    exists_embedded,
    solve_for_period,
)
from .kernels import BACKEND
from .period import (
    PeriodBounds,
    PeriodSample,
    bounds,
    half_period_T,
    limit_at_c0,
    limit_at_infinity,
    period_P,
    period_sample,
)
from .potential import CriticalData, RootPair, critical_point, q_eval, roots
from .profile import (
    ClosureReport,
    Profile,
    ProfileSample,
    closure_check,
    curvatures_from_radius,
    curve_point,
    integrate_profile,
)

__version__ = "0.1.0"
