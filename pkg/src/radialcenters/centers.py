"""Locating potential maxima: centers, loci, and parameter-limit diagnostics.

The optimizer is a damped Newton ascent (Hessian by central differences of
the analytic gradient) with projected backtracking that keeps iterates
strictly interior when the potential family requires it.  Uniqueness
regimes follow the concavity theory: order-``alpha`` potentials are
strictly concave inside convex bodies for ``alpha <= 1`` and globally for
``alpha >= m + 1``; Poisson and heat potentials of convex bodies are
strictly power-concave globally.  Everything else falls back to a
deterministic multistart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import NoInteriorSeed, NonConvergence
from .geometry import (Disk, Polygon, as_point, boundary_distance, centroid,
                       circumcenter, contains, diameter, incenter, is_convex,
                       transformed)
from .potentials import Heat, Poisson, PotentialSpec, Riesz, potential, potential_gradient
from .quadrature import QuadratureConfig

__all__ = ["CenterResult", "LocusTrace", "LimitDiagnostics", "find_center",
           "ascend", "multistart_seeds", "trace_locus", "limit_diagnostics"]

GRAD_TOL_REL = 1e-9
MAX_ITERATIONS = 500
INTERIOR_MARGIN_REL = 1e-6

# tighter than the default so the convergence test is not noise-limited
CENTER_CFG = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-14)
SHARP_CFG = QuadratureConfig(rel_tol=3e-13, abs_tol=1e-16)


@dataclass(frozen=True)
class CenterResult:
    point: np.ndarray
    value: float
    grad_norm: float
    iterations: int
    regime: str                    # concave_interior | concave_global | multistart
    uniqueness_guaranteed: bool


@dataclass(frozen=True)
class LocusTrace:
    family: str
    params: np.ndarray
    points: np.ndarray             # shape (k, 2)
    grad_norms: np.ndarray


def _family_cfg(spec: PotentialSpec) -> QuadratureConfig:
    if isinstance(spec, Riesz) and abs(spec.alpha) > 20:
        return SHARP_CFG
    return CENTER_CFG


# ---------------------------------------------------------------------------
# normalization: translate the centroid to the origin and rescale to
# diameter 2 so that extreme orders keep potential magnitudes representable
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Normalized:
    body: object
    spec: PotentialSpec
    shift: np.ndarray
    scale: float                   # new = (old - shift) * scale

    def to_original(self, y: np.ndarray) -> np.ndarray:
        return y / self.scale + self.shift


def _normalize(body, spec: PotentialSpec) -> _Normalized:
    if not isinstance(body, (Polygon, Disk)):
        return _Normalized(body, spec, np.zeros(2), 1.0)
    shift = centroid(body)
    s = 2.0 / diameter(body)
    nbody = transformed(body, angle=0.0, shift=-shift * s, scale=s)
    if isinstance(spec, Riesz):
        nspec: PotentialSpec = spec
    elif isinstance(spec, Poisson):
        nspec = replace(spec, h=spec.h * s)
    else:
        nspec = replace(spec, t=spec.t * s * s)
    return _Normalized(nbody, nspec, shift, s)


# ---------------------------------------------------------------------------
# core ascent
# ---------------------------------------------------------------------------

def _keep_interior(spec: PotentialSpec) -> bool:
    # the potential diverges or loses differentiability at the boundary
    return isinstance(spec, Riesz) and spec.alpha <= 1


def ascend(body, spec: PotentialSpec, x0, cfg: Optional[QuadratureConfig] = None,
           max_iter: int = MAX_ITERATIONS):
    """Damped Newton ascent from ``x0``; returns (point, value, grad_norm, iterations).

    Convergence at ``|grad| < 1e-9 * max(|value at start|, 1)``.  When the
    family requires interior iterates, trial points must keep a relative
    margin of 1e-6 diameters inside the body; backtracking shrinks steps
    until they do.
    """
    cfg = cfg or _family_cfg(spec)
    x = as_point(x0).astype(float)
    keep_in = _keep_interior(spec)
    diam = diameter(body)
    margin = INTERIOR_MARGIN_REL * diam
    h_step = 1e-4 * diam

    def feasible(p):
        return (not keep_in) or (contains(body, p) and boundary_distance(body, p) > margin)

    if not feasible(x):
        raise NoInteriorSeed(f"infeasible start {x!r}")

    val = potential(body, x, spec, cfg).value
    scale = max(abs(val), 1.0)
    gtol = GRAD_TOL_REL * scale

    grad = potential_gradient(body, x, spec, cfg)
    gnorm = float(np.hypot(*grad))
    iterations = 0
    while iterations < max_iter:
        if gnorm < gtol:
            return x, val, gnorm, iterations
        iterations += 1
        direction = _newton_direction(body, spec, x, grad, h_step, cfg)
        if direction is None:
            direction = grad / gnorm * min(0.2 * diam, gnorm)
        slope = float(np.dot(grad, direction))
        if slope <= 0:
            direction = grad / gnorm * min(0.2 * diam, gnorm)
            slope = float(np.dot(grad, direction))
        # once the predicted gain drops below the value's resolution the
        # sufficient-decrease test only measures quadrature noise; accept
        # steps on gradient-norm decrease instead (Newton endgame)
        val_eps = 32 * max(cfg.abs_tol, (cfg.rel_tol + 4e-16) * abs(val))
        if 1e-4 * slope <= val_eps:
            step, accepted = 1.0, False
            for _ in range(20):
                trial = x + step * direction
                if feasible(trial):
                    gt = potential_gradient(body, trial, spec, cfg)
                    gtn = float(np.hypot(*gt))
                    if gtn < gnorm:
                        x, grad, gnorm = trial, gt, gtn
                        accepted = True
                        break
                step *= 0.5
            if not accepted:
                # gradient floor reached: flat to quadrature resolution
                if gnorm < max(gtol, 1e4 * cfg.abs_tol):
                    return x, potential(body, x, spec, cfg).value, gnorm, iterations
                raise NonConvergence(x, gnorm, iterations,
                                     "gradient stagnated above tolerance")
            val = potential(body, x, spec, cfg).value
            continue
        step, moved = 1.0, False
        for _ in range(60):
            trial = x + step * direction
            if feasible(trial):
                tval = potential(body, trial, spec, cfg).value
                if tval >= val + 1e-4 * step * slope:
                    x, val = trial, tval
                    moved = True
                    break
            step *= 0.5
        grad = potential_gradient(body, x, spec, cfg)
        gnorm = float(np.hypot(*grad))
        if not moved:
            # step underflow: flat to machine precision around the iterate
            if gnorm < max(gtol, 1e3 * cfg.abs_tol):
                return x, val, gnorm, iterations
            raise NonConvergence(x, gnorm, iterations,
                                 "line search stalled above gradient tolerance")
    if gnorm < gtol:
        return x, val, gnorm, iterations
    raise NonConvergence(x, gnorm, iterations)


def _newton_direction(body, spec, x, grad, h_step, cfg) -> Optional[np.ndarray]:
    """Solve -H d = g with H from central differences of the analytic gradient."""
    H = np.empty((2, 2))
    for j, e in enumerate(np.eye(2)):
        gp = potential_gradient(body, x + h_step * e, spec, cfg)
        gm = potential_gradient(body, x - h_step * e, spec, cfg)
        H[:, j] = (gp - gm) / (2 * h_step)
    H = 0.5 * (H + H.T)
    eig = np.linalg.eigvalsh(H)
    if eig.max() >= -1e-300:        # not negative definite: reject
        return None
    try:
        return np.linalg.solve(H, -grad)
    except np.linalg.LinAlgError:
        return None


# ---------------------------------------------------------------------------
# seeds and the public finder
# ---------------------------------------------------------------------------

def _halton(index: int, base: int) -> float:
    out, f = 0.0, 1.0
    while index > 0:
        f /= base
        out += f * (index % base)
        index //= base
    return out


def multistart_seeds(body, n_extra: int = 9) -> list[np.ndarray]:
    """Deterministic interior seed set: classical centers plus low-discrepancy points."""
    diam = diameter(body)
    margin = 2 * INTERIOR_MARGIN_REL * diam
    seeds: list[np.ndarray] = []

    def push(p):
        p = as_point(p)
        if contains(body, p) and boundary_distance(body, p) > margin and \
                all(float(np.hypot(*(p - q))) > 1e-12 * diam for q in seeds):
            seeds.append(p)

    push(centroid(body))
    push(incenter(body).center)
    push(circumcenter(body).center)
    if isinstance(body, Polygon):
        lo = body.vertices.min(axis=0)
        hi = body.vertices.max(axis=0)
    else:
        c = centroid(body)
        lo, hi = c - diam / 2, c + diam / 2
    need = max(3 + n_extra, len(seeds) + n_extra)
    i = 1
    while len(seeds) < need and i < 10000:
        p = np.array([lo[0] + (hi[0] - lo[0]) * _halton(i, 2),
                      lo[1] + (hi[1] - lo[1]) * _halton(i, 3)])
        push(p)
        i += 1
    if not seeds:
        raise NoInteriorSeed("no interior seed points found")
    return seeds


def _regime(body, spec: PotentialSpec) -> tuple[str, bool]:
    convex = is_convex(body)
    if isinstance(spec, Riesz):
        if convex and spec.alpha <= 1:
            return "concave_interior", True
        if spec.alpha >= spec.m + 1:
            return "concave_global", True
        return "multistart", False
    if convex:
        return "concave_global", True
    return "multistart", False


def find_center(body, spec: PotentialSpec,
                cfg: Optional[QuadratureConfig] = None) -> CenterResult:
    """Maximum point of the potential, with the concavity regime used.

    In guaranteed-unique regimes a single ascent from the centroid (or the
    deepest interior point) suffices; otherwise twelve deterministic seeds
    are ascended and the best maximum is reported with
    ``uniqueness_guaranteed = False``.
    """
    cfg = cfg or _family_cfg(spec)
    norm = _normalize(body, spec)
    regime, unique = _regime(body, spec)
    nbody, nspec = norm.body, norm.spec

    if regime == "multistart":
        seeds = multistart_seeds(nbody)
        best = None
        for s in seeds:
            try:
                cand = ascend(nbody, nspec, s, cfg)
            except NonConvergence:
                continue
            if best is None or cand[1] > best[1]:
                best = cand
        if best is None:
            raise NonConvergence(seeds[0], math.nan, MAX_ITERATIONS,
                                 "no seed converged")
        y, _, _, iters = best
    else:
        start = centroid(nbody)
        if _keep_interior(nspec) and not (
                contains(nbody, start)
                and boundary_distance(nbody, start) > INTERIOR_MARGIN_REL * diameter(nbody)):
            start = incenter(nbody).center
        y, _, _, iters = ascend(nbody, nspec, start, cfg)

    point = norm.to_original(y)
    final_val = potential(body, point, spec, cfg).value
    final_grad = potential_gradient(body, point, spec, cfg)
    return CenterResult(point, final_val, float(np.hypot(*final_grad)),
                        iters, regime, unique)


# ---------------------------------------------------------------------------
# locus tracing and limit diagnostics
# ---------------------------------------------------------------------------

def _make_spec(family: str, param: float) -> PotentialSpec:
    if family == "riesz":
        return Riesz(alpha=param)
    if family == "poisson":
        return Poisson(h=param)
    if family == "heat":
        return Heat(t=param)
    raise ValueError(f"unknown family {family!r}")


def trace_locus(body, family: str, param_range: tuple[float, float],
                n_steps: int, cfg: Optional[QuadratureConfig] = None) -> LocusTrace:
    """Center locus over a log-spaced parameter grid with warm starts.

    Each center search starts from the previous center (predictor), corrected
    by the ascent; when a correction needs more than 20 iterations the
    parameter step is halved by inserting intermediate grid points (up to six
    times per interval).
    """
    lo, hi = param_range
    if not (lo < hi):
        raise ValueError("parameter range must satisfy lo < hi")
    if n_steps < 2:
        raise ValueError("need at least 2 steps")
    if family in ("poisson", "heat") and lo <= 0:
        raise ValueError("positive parameters required")
    grid = list(np.geomspace(lo, hi, n_steps)) if lo > 0 else \
        list(np.linspace(lo, hi, n_steps))

    params: list[float] = []
    points: list[np.ndarray] = []
    gnorms: list[float] = []
    x_prev: Optional[np.ndarray] = None
    prev_param: Optional[float] = None

    def solve(param, start, depth=0):
        nonlocal x_prev
        spec = _make_spec(family, param)
        c = cfg or _family_cfg(spec)
        norm = _normalize(body, spec)
        if start is None:
            res = find_center(body, spec, c)
            return res.point, res.grad_norm, 0
        y0 = (as_point(start) - norm.shift) * norm.scale
        y, _, gn, iters = ascend(norm.body, norm.spec, y0, c)
        return norm.to_original(y), gn, iters

    def walk(param, depth=0):
        nonlocal x_prev, prev_param
        point, gn, iters = solve(param, x_prev)
        if x_prev is not None and iters > 20 and depth < 6 and prev_param is not None:
            mid = math.sqrt(prev_param * param) if prev_param > 0 else \
                0.5 * (prev_param + param)
            walk(mid, depth + 1)
            point, gn, _ = solve(param, x_prev)
        params.append(param)
        points.append(point)
        gnorms.append(gn)
        x_prev = point
        prev_param = param

    for p in grid:
        walk(float(p))
    return LocusTrace(family, np.array(params), np.array(points), np.array(gnorms))


@dataclass(frozen=True)
class LimitDiagnostics:
    diam: float
    circumcenter: np.ndarray
    centroid: np.ndarray
    incenter: np.ndarray
    riesz: list          # (alpha, point, distance to circumcenter)
    poisson: list        # (h, point, distance to centroid)
    heat: list           # (t, point, distance to centroid, distance to incenter)
    monotone_riesz: bool
    monotone_poisson: bool
    monotone_heat: bool


def limit_diagnostics(body, riesz_alphas=(10.0, 50.0, 200.0),
                      poisson_h_rel=(1.0, 10.0, 100.0),
                      heat_ts=(1e-3, 1.0, 1e3)) -> LimitDiagnostics:
    """Distances from computed centers to their theoretical parameter limits.

    Tracks each family by warm-started continuation from its best-conditioned
    parameter toward the limit, so the reported distances reflect followed
    optima rather than cold starts in numerically flat regions.  Distances to
    the claimed limit must not increase along each escalating sequence.
    """
    if not is_convex(body):
        raise ValueError("limit diagnostics require a convex body")
    d = diameter(body)
    cc = circumcenter(body).center
    g = centroid(body)
    ic = incenter(body).center

    alphas = sorted(riesz_alphas)
    riesz_pts = _continuation_points(body, "riesz", alphas, from_low=True)
    riesz_rows = [(a, p, float(np.hypot(*(p - cc)))) for a, p in zip(alphas, riesz_pts)]

    hs = sorted(h * d for h in poisson_h_rel)
    pois_pts = _continuation_points(body, "poisson", hs, from_low=True)
    pois_rows = [(h, p, float(np.hypot(*(p - g)))) for h, p in zip(hs, pois_pts)]

    ts = sorted(heat_ts)
    anchor = max(min(1.0, ts[-1]), ts[0])
    heat_pts = _two_sided_continuation(body, "heat", ts, anchor)
    heat_rows = [(t, p, float(np.hypot(*(p - g))), float(np.hypot(*(p - ic))))
                 for t, p in zip(ts, heat_pts)]

    def non_increasing(seq):
        return all(b <= a + 1e-12 * d for a, b in zip(seq, seq[1:]))

    return LimitDiagnostics(
        d, cc, g, ic, riesz_rows, pois_rows, heat_rows,
        monotone_riesz=non_increasing([r[2] for r in riesz_rows]),
        monotone_poisson=non_increasing([r[2] for r in pois_rows]),
        monotone_heat=non_increasing([r[2] for r in heat_rows]),
    )


def _continuation_points(body, family, params, from_low=True, sub_steps=4):
    ordered = list(params) if from_low else list(reversed(params))
    points = {}
    x_prev = None
    prev = None
    for p in ordered:
        if x_prev is None:
            res = find_center(body, _make_spec(family, p))
            points[p] = res.point
        else:
            walk = np.geomspace(prev, p, sub_steps + 1)[1:]
            for q in walk:
                spec = _make_spec(family, float(q))
                norm = _normalize(body, spec)
                y0 = (x_prev - norm.shift) * norm.scale
                y, _, _, _ = ascend(norm.body, norm.spec, y0, _family_cfg(spec))
                x_prev = norm.to_original(y)
            points[p] = x_prev
        x_prev = points[p]
        prev = p
    return [points[p] for p in params]


def _two_sided_continuation(body, family, params, anchor):
    below = sorted([p for p in params if p < anchor], reverse=True)
    above = sorted([p for p in params if p > anchor])
    res = find_center(body, _make_spec(family, anchor))
    points = {anchor: res.point}

    def chain(targets):
        x_prev = points[anchor]
        prev = anchor
        for p in targets:
            walk = np.geomspace(prev, p, 5)[1:]
            for q in walk:
                spec = _make_spec(family, float(q))
                norm = _normalize(body, spec)
                y0 = (x_prev - norm.shift) * norm.scale
                y, _, _, _ = ascend(norm.body, norm.spec, y0, _family_cfg(spec))
                x_prev = norm.to_original(y)
            points[p] = x_prev
            prev = p

    chain(below)
    chain(above)
    if anchor not in params:
        del points[anchor]
    return [points[p] for p in params]
