"""Power-mean arithmetic and numerical power-concavity certification.

A nonnegative function is ``alpha``-concave when its values along segments
dominate the ``alpha``-power means of the endpoint values; ``alpha = 0`` is
log-concavity, ``+inf`` takes the max and ``-inf`` the min.  These checks
certify the optimization regimes used by the center finder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveValue
from .geometry import as_point

__all__ = ["PowerMeanSpec", "power_mean", "SegmentConcavityReport",
           "segment_concavity", "second_derivative_criterion"]

# slack below this magnitude cannot certify strictness in double precision
STRICTNESS_FLOOR = 1e-12


@dataclass(frozen=True)
class PowerMeanSpec:
    alpha: float          # real, or +-inf; 0 selects the geometric mean
    lam: float            # interpolation weight in [0, 1]

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lambda must lie in [0, 1]")


def power_mean(a: float, b: float, spec: PowerMeanSpec) -> float:
    """Weighted power mean of two nonnegative numbers, convention-complete.

    Follows the usual extended conventions: a vanishing factor forces the
    mean to zero for ``alpha <= 0``, ``+inf`` gives the max, ``0`` the
    geometric mean, ``-inf`` the min.
    """
    if a < 0 or b < 0:
        raise ValueError("power means are defined for nonnegative inputs")
    alpha, lam = spec.alpha, spec.lam
    if alpha == math.inf:
        return max(a, b)
    if a == 0.0 or b == 0.0:
        if alpha <= 0:
            return 0.0
        return ((1 - lam) * a ** alpha + lam * b ** alpha) ** (1 / alpha)
    if alpha == -math.inf:
        return min(a, b)
    la, lb = math.log(a), math.log(b)
    if abs(alpha) * max(abs(la), abs(lb)) < 1e-6:
        # geometric-mean limit with its first-order correction in alpha;
        # the plain formula loses all precision once a**alpha rounds to 1
        corr = 0.5 * alpha * lam * (1 - lam) * (la - lb) ** 2
        return math.exp((1 - lam) * la + lam * lb + corr)
    shift = max(a, b) if alpha > 0 else min(a, b)
    return shift * ((1 - lam) * (a / shift) ** alpha
                    + lam * (b / shift) ** alpha) ** (1 / alpha)


@dataclass(frozen=True)
class SegmentConcavityReport:
    lambdas: np.ndarray
    slacks: np.ndarray
    min_slack: float
    strict: bool                 # min slack clears the strictness floor
    non_strict_within_tol: bool  # concave but strictness not certifiable


def segment_concavity(f, x1, x2, alpha: float, n: int = 32) -> SegmentConcavityReport:
    """Check the power-concavity inequality at ``n`` interior points of a segment.

    ``f`` must be positive along the segment.  The slack at weight ``lam``
    is ``f((1-lam) x1 + lam x2) - power_mean(f(x1), f(x2), ...)``; all
    nonnegative slacks mean concave, slacks above the strictness floor mean
    strictly concave at the sampled resolution.
    """
    if n < 16:
        raise ValueError("need at least 16 interior samples")
    x1 = as_point(x1)
    x2 = as_point(x2)
    fa = float(f(x1))
    fb = float(f(x2))
    if fa <= 0 or fb <= 0:
        raise NonPositiveValue("segment endpoints must have positive values")
    lams = np.linspace(0.0, 1.0, n + 2)[1:-1]
    slacks = np.empty(n)
    for i, lam in enumerate(lams):
        xm = (1 - lam) * x1 + lam * x2
        fm = float(f(xm))
        if fm <= 0:
            raise NonPositiveValue(f"non-positive value at lambda={lam:.4f}")
        slacks[i] = fm - power_mean(fa, fb, PowerMeanSpec(alpha, float(lam)))
    min_slack = float(slacks.min())
    return SegmentConcavityReport(
        lambdas=lams, slacks=slacks, min_slack=min_slack,
        strict=min_slack > STRICTNESS_FLOOR,
        non_strict_within_tol=abs(min_slack) <= STRICTNESS_FLOOR)


def second_derivative_criterion(f, x, v, alpha: float, step: float = 1e-4) -> float:
    """Local concavity certificate f * f_vv + (alpha - 1) * f_v^2 (negative is good).

    Derivatives along the unit direction ``v`` are taken by central finite
    differences with the given step; pass ``step = 1e-4 * diameter`` for
    body-scaled problems.
    """
    x = as_point(x)
    v = as_point(v)
    v = v / float(np.hypot(*v))
    f0 = float(f(x))
    if f0 <= 0:
        raise NonPositiveValue("criterion requires a positive value at x")
    fp = float(f(x + step * v))
    fm = float(f(x - step * v))
    d1 = (fp - fm) / (2 * step)
    d2 = (fp - 2 * f0 + fm) / (step * step)
    return f0 * d2 + (alpha - 1) * d1 * d1
