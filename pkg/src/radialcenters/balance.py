"""Balance-law analysis and the characterization of stationary centers.

A point satisfies the balance law for a body when the first angular moment
of the body's indicator over every circle about the point vanishes.  This
module computes those residuals, the nearest-contact analysis, the
triangle/quadrangle classification, candidate stationary points of weighted
indicator sums, and a generator for a convex body that is balanced at the
origin yet has no symmetry at all.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import (ConstructionFailed, ContinuumContact, InvalidBody, NotInterior,
                     TheoremViolation)
from .geometry import (ArcSet, Disk, Polygon, area, as_point, boundary_distance,
                       centroid, circle_clip, contains, diameter, is_convex,
                       _build_arcset, _point_segment_distance)

__all__ = [
    "BalanceReport", "WeightedBodyFunction", "ContactSet", "RadialArcBody",
    "StationaryCandidate", "PolygonClass", "Isometry", "EquivalenceReport",
    "vector_residual", "vector_residual_of_arcs", "balance_report",
    "scalar_residual", "equivalence_check", "contact_points",
    "stationary_candidate", "classify_polygon", "generate_asymmetric_balanced",
    "symmetry_search",
]

BALANCED_TOL = 1e-8          # normalized residual threshold
CLASSIFY_TOL = 1e-6          # relative geometric tolerance for shape tests


# ---------------------------------------------------------------------------
# residuals
# ---------------------------------------------------------------------------

def vector_residual_of_arcs(arcs: ArcSet) -> np.ndarray:
    """Exact first angular moment of an arc set: sum of r * int u(theta) dtheta."""
    r = arcs.radius
    sx = math.fsum(math.sin(t2) - math.sin(t1) for t1, t2 in arcs.arcs)
    sy = math.fsum(math.cos(t1) - math.cos(t2) for t1, t2 in arcs.arcs)
    return np.array([r * sx, r * sy])


def vector_residual(body, x, r: float) -> np.ndarray:
    """Balance-law residual of the body on the circle of radius ``r`` about ``x``."""
    return vector_residual_of_arcs(circle_clip(body, as_point(x), float(r)))


@dataclass(frozen=True)
class BalanceReport:
    candidate: np.ndarray
    radii: np.ndarray
    residual_vectors: np.ndarray  # shape (k, 2)
    sup_residual: float           # max |residual| / (2 pi r)
    balanced: bool
    truncated: bool = False       # early stop after a gross violation


def _radius_breakpoints(body, x) -> list[float]:
    """Radii where arcs appear or disappear (vertex and edge-foot distances)."""
    x = as_point(x)
    if isinstance(body, Polygon):
        out = [float(np.hypot(*(v - x))) for v in body.vertices]
        for a, b in body.edges():
            out.append(_point_segment_distance(x, a, b))
        return out
    if isinstance(body, Disk):
        d = float(np.hypot(*(body.center - x)))
        return [abs(d - body.radius), d + body.radius]
    return body.radius_breakpoints(x)


def _reach(body, x) -> float:
    x = as_point(x)
    if isinstance(body, Polygon):
        return max(float(np.hypot(*(v - x))) for v in body.vertices)
    if isinstance(body, Disk):
        return float(np.hypot(*(body.center - x))) + body.radius
    return body.reach(x)


def balance_report(body, x, n_radii: int = 256, early_stop: bool = False) -> BalanceReport:
    """Residual spectrum over a radius grid covering the whole body.

    The grid is log-uniform with exact breakpoints (plus small offsets)
    inserted at the radii where circle/boundary contacts change the arc
    structure.  ``balanced`` holds when the sup of ``|residual| / (2 pi r)``
    stays below 1e-8.  With ``early_stop`` the scan aborts once the residual
    grossly exceeds the threshold (used by the classification corpus).
    """
    x = as_point(x)
    if n_radii < 32:
        raise ValueError("need at least 32 radii")
    r_far = _reach(body, x)
    if r_far <= 0:
        raise ValueError("degenerate body")
    radii = set(np.geomspace(r_far * 1e-4, r_far, n_radii))
    jitter = 1e-9 * r_far
    for b in _radius_breakpoints(body, x):
        for rb in (b - jitter, b, b + jitter):
            if 0 < rb <= r_far:
                radii.add(float(rb))
    grid = np.array(sorted(radii))
    residuals = []
    sup = 0.0
    truncated = False
    for i, r in enumerate(grid):
        res = vector_residual(body, x, float(r))
        residuals.append(res)
        sup = max(sup, float(np.hypot(*res)) / (2 * math.pi * float(r)))
        if early_stop and sup > 1e4 * BALANCED_TOL and i >= 7:
            grid = grid[: i + 1]
            truncated = True
            break
    return BalanceReport(x, grid, np.array(residuals), float(sup),
                         bool(sup < BALANCED_TOL), truncated)


# ---------------------------------------------------------------------------
# weighted indicator sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedBodyFunction:
    """Finite sum of weighted body indicators, f = sum w_i * chi_{body_i}."""

    terms: tuple

    def __init__(self, terms: Sequence[tuple[float, object]]):
        terms = tuple((float(w), b) for w, b in terms)
        if not terms:
            raise InvalidBody("need at least one weighted body")
        object.__setattr__(self, "terms", terms)

    def mass(self) -> float:
        return math.fsum(w * area(b) for w, b in self.terms)

    def first_moment(self) -> np.ndarray:
        acc = np.zeros(2)
        for w, b in self.terms:
            acc += w * area(b) * centroid(b)
        return acc


def scalar_residual(f: WeightedBodyFunction, x, r: float) -> float:
    """Mean-value residual: sum of w_i * r * (angular measure of circle inside body_i)."""
    x = as_point(x)
    return math.fsum(w * r * circle_clip(b, x, float(r)).measure()
                     for w, b in f.terms)


@dataclass(frozen=True)
class StationaryCandidate:
    kind: str                      # "candidate" | "none_exists" | "indeterminate"
    point: Optional[np.ndarray]


def stationary_candidate(f: WeightedBodyFunction) -> StationaryCandidate:
    """The only point that can be a parameter-independent critical point.

    With nonzero total mass the candidate is the weighted centroid; zero mass
    with nonzero first moment rules any stationary point out; zero mass and
    zero moment leave the question open.
    """
    mass = f.mass()
    moment = f.first_moment()
    scale = math.fsum(abs(w) * area(b) for w, b in f.terms)
    length = max(diameter(b) for _, b in f.terms)
    if abs(mass) > 1e-10 * max(scale, 1e-300):
        return StationaryCandidate("candidate", moment / mass)
    if float(np.hypot(*moment)) > 1e-10 * max(scale * length, 1e-300):
        return StationaryCandidate("none_exists", None)
    return StationaryCandidate("indeterminate", None)


# ---------------------------------------------------------------------------
# decomposition identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceReport:
    complement_violation: float
    split_violation: float
    passed: bool


def equivalence_check(body, x, n_radii: int = 48, tol: float = 1e-9) -> EquivalenceReport:
    """Verify the complement and split identities of the balance residual.

    On every test circle the residual of the body plus the residual of its
    complement must vanish (the full circle has zero first moment), and
    splitting the body at any ball radius must decompose the residual
    additively.
    """
    x = as_point(x)
    r_far = _reach(body, x)
    r_star = boundary_distance(body, x)
    grid = np.geomspace(r_far * 1e-3, r_far * 0.999, n_radii)
    comp_viol = 0.0
    split_viol = 0.0
    rhos = [0.3 * r_star, 0.7 * r_star, 1.3 * r_star] if r_star > 0 else [0.5 * r_far]
    for r in grid:
        arcs = circle_clip(body, x, float(r))
        res = vector_residual_of_arcs(arcs)
        res_comp = vector_residual_of_arcs(arcs.complement())
        comp_viol = max(comp_viol, float(np.hypot(*(res + res_comp))))
        for rho in rhos:
            inner = res if r <= rho else np.zeros(2)
            outer = res if r > rho else np.zeros(2)
            split_viol = max(split_viol, float(np.hypot(*(inner + outer - res))))
    scale = max(1.0, r_far)
    return EquivalenceReport(comp_viol, split_viol,
                             comp_viol < tol * scale and split_viol < tol * scale)


# ---------------------------------------------------------------------------
# contact points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContactSet:
    r_star: float
    points: tuple
    sum: np.ndarray   # sum of (p_j - x)


def contact_points(body, x) -> ContactSet:
    """Nearest-boundary contact points of a convex polygon from an interior point.

    Curved bodies are rejected: a circle tangent to a circular boundary piece
    meets it in a continuum, not finitely many points.
    """
    x = as_point(x)
    if not isinstance(body, Polygon):
        raise ContinuumContact("contact analysis requires a polygon boundary")
    if not is_convex(body):
        raise ValueError("contact analysis requires a convex polygon")
    if not contains(body, x) or boundary_distance(body, x) <= 0:
        raise NotInterior("contact analysis requires an interior point")
    feet = []
    for a, b in body.edges():
        e = b - a
        t = float(np.dot(x - a, e) / np.dot(e, e))
        t = min(1.0, max(0.0, t))
        p = a + t * e
        feet.append((float(np.hypot(*(p - x))), p))
    r_star = min(d for d, _ in feet)
    scale = diameter(body)
    pts = []
    for d, p in feet:
        if d <= r_star * (1 + 1e-9):
            if all(float(np.hypot(*(p - q))) > 1e-9 * scale for q in pts):
                pts.append(p)
    s = np.zeros(2)
    for p in pts:
        s += p - x
    return ContactSet(r_star, tuple(pts), s)


# ---------------------------------------------------------------------------
# triangle / quadrangle classification
# ---------------------------------------------------------------------------

class PolygonClass(enum.Enum):
    BALANCED_EQUILATERAL = "BalancedEquilateral"
    BALANCED_PARALLELOGRAM = "BalancedParallelogram"
    NOT_BALANCED = "NotBalanced"


def classify_polygon(poly: Polygon, n_radii: int = 256) -> PolygonClass:
    """Classify a convex triangle or quadrangle by balance at its centroid.

    Balanced triangles must be equilateral and balanced quadrangles must be
    parallelograms; a balanced report that fails the geometric test raises
    TheoremViolation, which signals a numerical tolerance bug rather than a
    legitimate outcome.
    """
    if poly.n not in (3, 4):
        raise ValueError("classification is defined for triangles and quadrangles")
    if not is_convex(poly):
        raise ValueError("classification requires a convex polygon")
    g = centroid(poly)
    report = balance_report(poly, g, n_radii=n_radii, early_stop=True)
    if not report.balanced:
        return PolygonClass.NOT_BALANCED
    scale = diameter(poly)
    v = poly.vertices
    if poly.n == 3:
        sides = [float(np.hypot(*(v[(i + 1) % 3] - v[i]))) for i in range(3)]
        if max(sides) - min(sides) <= CLASSIFY_TOL * scale:
            return PolygonClass.BALANCED_EQUILATERAL
        raise TheoremViolation("balanced triangle is not equilateral")
    mid02 = 0.5 * (v[0] + v[2])
    mid13 = 0.5 * (v[1] + v[3])
    if float(np.hypot(*(mid02 - mid13))) <= CLASSIFY_TOL * scale:
        return PolygonClass.BALANCED_PARALLELOGRAM
    raise TheoremViolation("balanced quadrangle is not a parallelogram")


def parallelogram_defect(poly: Polygon) -> float:
    """Relative distance between diagonal midpoints (0 for parallelograms)."""
    v = poly.vertices
    return float(np.hypot(*(0.5 * (v[0] + v[2]) - 0.5 * (v[1] + v[3])))) / diameter(poly)


def equilateral_defect(poly: Polygon) -> float:
    """Relative spread of side lengths (0 for equilateral triangles)."""
    v = poly.vertices
    sides = [float(np.hypot(*(v[(i + 1) % 3] - v[i]))) for i in range(3)]
    return (max(sides) - min(sides)) / diameter(poly)


# ---------------------------------------------------------------------------
# radially parameterized balanced body
# ---------------------------------------------------------------------------

# three lobe directions with no common symmetry: the angular gaps
# (137, 82, 141 degrees) are pairwise distinct, so no rotation or
# reflection can permute the frame
FRAME_ANGLES = (0.0, math.radians(137.0), math.radians(219.0))


def _frame_coefficients(angles) -> tuple[float, float]:
    """Solve sin(a_v) v + sin(a_w) w = -sin(a_u) u for the two sine ratios."""
    u = np.array([math.cos(angles[0]), math.sin(angles[0])])
    v = np.array([math.cos(angles[1]), math.sin(angles[1])])
    w = np.array([math.cos(angles[2]), math.sin(angles[2])])
    M = np.column_stack([v, w])
    c = np.linalg.solve(M, -u)
    return float(c[0]), float(c[1])


@dataclass(frozen=True)
class RadialArcBody:
    """Unit disk grown by three balanced lobes; star-shaped about the origin.

    At every radius ``r`` in (1, r_max] the body meets the circle of radius
    ``r`` in three arcs whose half-widths ``a_d(r)`` satisfy
    ``sum_d sin(a_d(r)) * d = 0``, so the centroid of each circular slice
    stays at the origin.  The seed half-width ``a_u`` is stored as a
    piecewise-linear profile; the companion half-widths are recovered
    exactly from the balance constraint at evaluation time so the slice
    centroids vanish to machine precision at every radius, not just at the
    stored nodes.
    """

    direction_angles: tuple
    r_max: float
    profile_r: np.ndarray
    profile_a_u: np.ndarray

    def __init__(self, direction_angles, r_max, profile_r, profile_a_u):
        angles = tuple(float(a) for a in direction_angles)
        if len(angles) != 3:
            raise InvalidBody("exactly three lobe directions required")
        r_max = float(r_max)
        if not 1.0 < r_max <= 1.3:
            raise InvalidBody("r_max must lie in (1, 1.3]")
        rr = np.asarray(profile_r, dtype=float)
        aa = np.asarray(profile_a_u, dtype=float)
        if rr.shape != aa.shape or rr.ndim != 1 or len(rr) < 2:
            raise InvalidBody("profile arrays must be matching 1-D arrays")
        if abs(rr[0] - 1.0) > 1e-12 or abs(rr[-1] - r_max) > 1e-12:
            raise InvalidBody("profile must span [1, r_max]")
        if np.any(np.diff(rr) <= 0) or np.any(np.diff(aa) >= 0):
            raise InvalidBody("seed half-width must decrease strictly along increasing radius")
        if aa[0] > math.pi / 3 + 1e-12 or aa[-1] < -1e-12:
            raise InvalidBody("half-widths must lie in (0, pi/3] and reach 0 at r_max")
        rr = rr.copy(); rr.setflags(write=False)
        aa = aa.copy(); aa.setflags(write=False)
        # a symmetry-free frame has pairwise distinct angular gaps: equal gaps
        # admit a reflection (two equal) or a rotation (all equal)
        sorted_angles = sorted(a % (2 * math.pi) for a in angles)
        gaps = sorted(np.diff(sorted_angles + [sorted_angles[0] + 2 * math.pi]))
        if gaps[1] - gaps[0] < 1e-9 or gaps[2] - gaps[1] < 1e-9:
            raise InvalidBody("frame admits a nontrivial symmetry (repeated angular gap)")
        object.__setattr__(self, "direction_angles", angles)
        object.__setattr__(self, "r_max", r_max)
        object.__setattr__(self, "profile_r", rr)
        object.__setattr__(self, "profile_a_u", aa)
        c_v, c_w = _frame_coefficients(angles)
        if not (0 < c_v and 0 < c_w):
            raise InvalidBody("frame directions must make both sine ratios positive")
        object.__setattr__(self, "_c", (1.0, c_v, c_w))

    @property
    def directions(self) -> np.ndarray:
        """The three lobe directions as unit vectors, shape (3, 2)."""
        return np.array([[math.cos(a), math.sin(a)] for a in self.direction_angles])

    # -- profile evaluation -------------------------------------------------

    def seed_half_width(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.interp(r, self.profile_r, self.profile_a_u, left=self.profile_a_u[0],
                         right=0.0)

    def half_widths(self, r) -> np.ndarray:
        """Half-widths (a_u, a_v, a_w) at radius r; zero outside (1, r_max]."""
        r = float(r)
        if r <= 1.0 or r > self.r_max:
            return np.zeros(3)
        s_u = math.sin(float(self.seed_half_width(r)))
        return np.array([math.asin(min(1.0, c * s_u)) for c in self._c])

    def slice_moment(self, r) -> np.ndarray:
        """First angular moment of the slice at radius r (zero when balanced)."""
        a = self.half_widths(r)
        acc = np.zeros(2)
        for ang, hw in zip(self.direction_angles, a):
            acc += math.sin(hw) * np.array([math.cos(ang), math.sin(ang)])
        return acc

    def _lobe_radius_many(self, half_angles: np.ndarray, which: int) -> np.ndarray:
        """Inverse profile: radii at which lobe ``which`` has the given half-widths."""
        c = self._c[which]
        s = np.sin(half_angles) / c
        s = np.clip(s, -1.0, 1.0)
        targets = np.arcsin(s)
        # profile_a_u decreases along profile_r: invert the piecewise-linear map
        a_rev = self.profile_a_u[::-1]
        r_rev = self.profile_r[::-1]
        return np.interp(targets, a_rev, r_rev, left=self.r_max, right=1.0)

    def boundary_radius(self, phi) -> np.ndarray:
        """Radial function about the origin."""
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        out = np.ones_like(phi)
        for k, ang in enumerate(self.direction_angles):
            width = math.asin(min(1.0, self._c[k] * math.sin(self.profile_a_u[0])))
            delta = np.abs((phi - ang + math.pi) % (2 * math.pi) - math.pi)
            mask = delta < width
            if np.any(mask):
                out[mask] = np.maximum(out[mask], self._lobe_radius_many(delta[mask], k))
        return out

    # -- generic body protocol ------------------------------------------------

    def contains(self, p, tol=None) -> bool:
        p = as_point(p)
        r = float(np.hypot(*p))
        t = 1e-12 * self.r_max if tol is None else tol
        if r <= 1e-300:
            return True
        phi = math.atan2(p[1], p[0])
        return r <= float(self.boundary_radius(phi)[0]) + t

    def area(self) -> float:
        from .quadrature import adaptive_gk
        val, _ = adaptive_gk(lambda t: 0.5 * self.boundary_radius(t) ** 2,
                             self.angular_breakpoints(np.zeros(2)))
        return float(val)

    def centroid(self) -> np.ndarray:
        from .quadrature import adaptive_gk

        def integrand(t):
            rb = self.boundary_radius(t) ** 3 / 3.0
            return np.stack([np.cos(t) * rb, np.sin(t) * rb], axis=1)

        val, _ = adaptive_gk(integrand, self.angular_breakpoints(np.zeros(2)))
        return np.asarray(val) / self.area()

    def diameter(self) -> float:
        t = np.linspace(0, 2 * math.pi, 1024, endpoint=False)
        rb = self.boundary_radius(t)
        opp = self.boundary_radius(t + math.pi)
        return float(np.max(rb + opp))

    def boundary_distance(self, p) -> float:
        pts = self.boundary_polyline(2048)
        seg_next = np.roll(pts, -1, axis=0)
        return float(np.min(_point_segments_distance(as_point(p), pts, seg_next)))

    def boundary_polyline(self, n: int = 512) -> np.ndarray:
        t = np.linspace(0, 2 * math.pi, n, endpoint=False)
        rb = self.boundary_radius(t)
        return np.stack([rb * np.cos(t), rb * np.sin(t)], axis=1)

    def radial_function(self, x, theta: float) -> float:
        x = as_point(x)
        if float(np.hypot(*x)) <= 1e-12:
            return float(self.boundary_radius(theta)[0])
        u = np.array([math.cos(theta), math.sin(theta)])

        def g(s):
            p = x + s * u
            return float(np.hypot(*p)) - float(self.boundary_radius(math.atan2(p[1], p[0]))[0])

        hi = float(np.hypot(*x)) + self.r_max + 1.0
        if g(0.0) >= 0:
            raise NotInterior("base point must be interior")
        return float(brentq(g, 0.0, hi, xtol=1e-14, rtol=1e-15))

    def radial_function_many(self, x, thetas) -> np.ndarray:
        x = as_point(x)
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        if float(np.hypot(*x)) <= 1e-12:
            return self.boundary_radius(thetas)
        return np.array([self.radial_function(x, t) for t in thetas])

    def angular_breakpoints(self, x) -> list[float]:
        """Lobe apex and junction directions as seen from ``x``."""
        x = as_point(x)
        pts = []
        for k, ang in enumerate(self.direction_angles):
            width = math.asin(min(1.0, self._c[k] * math.sin(self.profile_a_u[0])))
            pts.append(self.r_max * np.array([math.cos(ang), math.sin(ang)]))
            for s in (-1.0, 1.0):
                a = ang + s * width
                pts.append(np.array([math.cos(a), math.sin(a)]))
        angs = sorted((math.atan2(p[1] - x[1], p[0] - x[0]) % (2 * math.pi)) for p in pts)
        out = [0.0]
        for t in angs + [2 * math.pi]:
            if t - out[-1] > 1e-13:
                out.append(t)
        return out

    def is_convex(self) -> bool:
        return self.convexity_defect(4096) >= -1e-12

    def convexity_defect(self, n: int = 4096) -> float:
        """Minimum normalized cross product of consecutive boundary steps."""
        pts = self.boundary_polyline(n)
        e = np.roll(pts, -1, axis=0) - pts
        e2 = np.roll(e, -1, axis=0)
        cross = e[:, 0] * e2[:, 1] - e[:, 1] * e2[:, 0]
        norm = np.hypot(e[:, 0], e[:, 1]) * np.hypot(e2[:, 0], e2[:, 1])
        return float(np.min(cross / norm))

    def circle_clip(self, x, r: float) -> ArcSet:
        x = as_point(x)
        r = float(r)
        if float(np.hypot(*x)) <= 1e-12:
            if r <= 1.0:
                return ArcSet(x, r, ((0.0, 2 * math.pi),))
            if r > self.r_max:
                return ArcSet(x, r, ())
            arcs = []
            widths = self.half_widths(r)
            for ang, hw in zip(self.direction_angles, widths):
                if hw > 1e-15:
                    arcs.append((ang - hw, ang + hw))
            return _build_arcset(x, r, arcs)
        return self._circle_clip_offcenter(x, r)

    def _circle_clip_offcenter(self, x, r, n_scan: int = 2048) -> ArcSet:
        ts = np.linspace(0, 2 * math.pi, n_scan, endpoint=False)
        px = x[0] + r * np.cos(ts)
        py = x[1] + r * np.sin(ts)
        rad = np.hypot(px, py)
        phi = np.arctan2(py, px)
        vals = rad - self.boundary_radius(phi)
        crossings = []
        for i in range(n_scan):
            j = (i + 1) % n_scan
            vi, vj = vals[i], vals[j]
            if vi == 0.0 or (vi < 0) != (vj < 0):
                t_lo, t_hi = ts[i], ts[i] + (2 * math.pi / n_scan)

                def g(t):
                    p = x + r * np.array([math.cos(t), math.sin(t)])
                    return float(np.hypot(*p)) - float(
                        self.boundary_radius(math.atan2(p[1], p[0]))[0])

                try:
                    root = brentq(g, t_lo, t_hi, xtol=1e-14)
                except ValueError:
                    continue
                crossings.append(root % (2 * math.pi))
        if not crossings:
            probe = x + r * np.array([math.cos(0.1234567), math.sin(0.1234567)])
            if self.contains(probe):
                return ArcSet(x, r, ((0.0, 2 * math.pi),))
            return ArcSet(x, r, ())
        crossings.sort()
        raw = []
        k = len(crossings)
        for i in range(k):
            t1 = crossings[i]
            t2 = crossings[(i + 1) % k] + (2 * math.pi if i == k - 1 else 0.0)
            mid = 0.5 * (t1 + t2)
            if self.contains(x + r * np.array([math.cos(mid), math.sin(mid)])):
                raw.append((t1, t2))
        return _build_arcset(x, r, raw)

    def radius_breakpoints(self, x) -> list[float]:
        x = as_point(x)
        d = float(np.hypot(*x))
        return [abs(1.0 - d), 1.0 + d, abs(self.r_max - d), self.r_max + d]

    def reach(self, x) -> float:
        pts = self.boundary_polyline(1024)
        return float(np.max(np.hypot(pts[:, 0] - x[0], pts[:, 1] - x[1])))

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        rr = self.profile_r
        widths = np.array([self.half_widths(float(r)) for r in rr])
        return {
            "type": "radial_arc",
            "direction_angles": [float(a) for a in self.direction_angles],
            "r_max": float(self.r_max),
            "profile_r": [float(r) for r in rr],
            "profile_a_u": [float(a) for a in self.profile_a_u],
            "profile_a_v": [float(a) for a in widths[:, 1]],
            "profile_a_w": [float(a) for a in widths[:, 2]],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RadialArcBody":
        return cls(data["direction_angles"], data["r_max"],
                   np.asarray(data["profile_r"], dtype=float),
                   np.asarray(data["profile_a_u"], dtype=float))


def _point_segments_distance(p, seg_a, seg_b) -> np.ndarray:
    e = seg_b - seg_a
    pe = p[None, :] - seg_a
    denom = np.sum(e * e, axis=1)
    t = np.clip(np.sum(pe * e, axis=1) / denom, 0.0, 1.0)
    foot = seg_a + t[:, None] * e
    return np.hypot(p[0] - foot[:, 0], p[1] - foot[:, 1])


def generate_asymmetric_balanced(r_max: float = 1.04,
                                 seed_profile: Optional[Callable[[np.ndarray], np.ndarray]] = None,
                                 a0: float = math.pi / 6,
                                 n_nodes: int = 16385) -> RadialArcBody:
    """Convex body balanced at the origin with no symmetry at all.

    Starts from the unit disk and grows three lobes along a symmetry-free
    frame; at each radius the two companion half-widths are solved from the
    zero-slice-centroid constraint.  The default seed half-width profile is
    tangential at the lobe base (vertical slope in radius at r = 1), which
    is what keeps the lobe/disk junctions convex; steep-at-apex profiles
    provably create concave corners there.  Profile nodes are spaced
    uniformly in half-width (quadratically in radius) and kept much denser
    than the convexity scan so the piecewise-linear representation cannot
    alias into spurious concave turns.  Convexity is verified on 4096
    boundary samples; on failure the lobe amplitude is shrunk geometrically.
    """
    if not 1.0 < r_max <= 1.3:
        raise ValueError("r_max must lie in (1, 1.3]")
    if not 0 < a0 <= math.pi / 6:
        raise ValueError("a0 must lie in (0, pi/6]")
    c_v, c_w = _frame_coefficients(FRAME_ANGLES)
    amp = a0
    last_defect = None
    q = np.linspace(0.0, 1.0, n_nodes)
    rr = 1.0 + (r_max - 1.0) * q * q
    rr[-1] = r_max
    for _ in range(20):
        if seed_profile is None:
            aa = amp * (1.0 - q)
        else:
            aa = np.asarray(seed_profile(rr), dtype=float) * (amp / a0)
        aa[-1] = 0.0
        if np.any(np.diff(aa) >= 0):
            raise ValueError("seed profile must be strictly decreasing")
        if max(c_v, c_w) * math.sin(aa[0]) >= math.sin(math.pi / 3):
            amp *= 0.8
            continue
        body = RadialArcBody(FRAME_ANGLES, r_max, rr, aa)
        last_defect = body.convexity_defect()
        if last_defect >= -1e-12:
            return body
        amp *= 0.8
    raise ConstructionFailed(
        f"no convex instance within retry budget (last defect {last_defect:.3e}); "
        f"r_max may exceed the tangent-line bound for admissible lobe widths")


# ---------------------------------------------------------------------------
# symmetry search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Isometry:
    kind: str          # "rotation" | "reflection"
    angle: float       # rotation angle, or axis angle for reflections
    center: np.ndarray


def symmetry_search(body, tol_rel: float = 1e-6, n_samples: int = 512) -> list[Isometry]:
    """Isometries (about the centroid) mapping the body onto itself.

    Tests rotations by 2 pi k / n for n <= 12 and reflections across
    candidate axes extracted from boundary extrema.  A candidate passes when
    the two-sided boundary Hausdorff distance stays below ``tol_rel`` times
    the diameter.  Returns the full symmetry group (identity included) when
    any nontrivial symmetry exists, and the empty list otherwise.
    """
    g = centroid(body)
    scale = diameter(body)
    tol = tol_rel * scale
    samples = boundary_samples_for(body, n_samples)
    dist_fn = _boundary_distance_oracle(body)
    prefilter = _signature_prefilter(body, g, scale)

    def h_dist(mat) -> float:
        fwd = (samples - g) @ mat.T + g
        d1 = dist_fn(fwd)
        bwd = (samples - g) @ mat + g       # inverse of an orthogonal matrix
        d2 = dist_fn(bwd)
        return max(float(d1.max()), float(d2.max()))

    found: list[Isometry] = []
    for ang in _rotation_candidates():
        if not prefilter("rotation", ang):
            continue
        c, s = math.cos(ang), math.sin(ang)
        if h_dist(np.array([[c, -s], [s, c]])) < tol:
            found.append(Isometry("rotation", ang, g))
    for ax in _axis_candidates(body, g):
        if not prefilter("reflection", ax):
            continue
        c, s = math.cos(2 * ax), math.sin(2 * ax)
        if h_dist(np.array([[c, s], [s, -c]])) < tol:
            found.append(Isometry("reflection", ax, g))
    nontrivial = [iso for iso in found
                  if not (iso.kind == "rotation" and abs(iso.angle) < 1e-15)]
    if not nontrivial:
        return []
    identity = Isometry("rotation", 0.0, g)
    return [identity] + nontrivial


def _signature_prefilter(body, g: np.ndarray, scale: float):
    """Cheap radial-signature screen for star-shaped bodies centered at the centroid.

    An exact symmetry permutes the radial function about the centroid; a
    candidate whose permuted signature differs grossly cannot pass the full
    Hausdorff test, so it is skipped.  Bodies without an origin-centered
    radial parameterization are never screened out.
    """
    if not hasattr(body, "boundary_radius") or float(np.hypot(*g)) > 1e-9 * scale:
        return lambda kind, ang: True
    t = np.linspace(0, 2 * math.pi, 1024, endpoint=False)
    sig = body.boundary_radius(t)
    period = 2 * math.pi
    # gross-mismatch screen: exact symmetries land orders below either term
    thr = max(1e-4 * scale, 0.05 * float(np.ptp(sig)))

    def check(kind: str, ang: float) -> bool:
        if kind == "rotation":
            mapped = np.interp((t - ang) % period, t, sig, period=period)
        else:
            mapped = np.interp((2 * ang - t) % period, t, sig, period=period)
        return float(np.max(np.abs(mapped - sig))) < thr

    return check


def boundary_samples_for(body, n: int) -> np.ndarray:
    if isinstance(body, Polygon):
        from .geometry import boundary_polyline
        return boundary_polyline(body, n)
    if isinstance(body, Disk):
        from .geometry import boundary_polyline
        return boundary_polyline(body, n)
    return body.boundary_polyline(n)


def _boundary_distance_oracle(body):
    """Vectorized point-to-boundary distance with body data precomputed once."""
    if isinstance(body, Polygon):
        v = body.vertices
        nxt = np.roll(v, -1, axis=0)

        def polygon_dist(pts):
            out = np.full(len(pts), np.inf)
            for i in range(len(v)):
                out = np.minimum(out, _point_segments_distance_vec(pts, v[i], nxt[i]))
            return out

        return polygon_dist
    if isinstance(body, Disk):
        c, R = body.center, body.radius
        return lambda pts: np.abs(np.hypot(pts[:, 0] - c[0], pts[:, 1] - c[1]) - R)
    poly = body.boundary_polyline(2048)
    nxt = np.roll(poly, -1, axis=0)

    def polyline_dist(pts):
        out = np.full(len(pts), np.inf)
        # chunk over segments to bound memory
        for i in range(0, len(poly), 512):
            d = _points_segments_distance_matrix(pts, poly[i:i + 512], nxt[i:i + 512])
            out = np.minimum(out, d.min(axis=1))
        return out

    return polyline_dist


def _point_segments_distance_vec(pts, a, b) -> np.ndarray:
    e = b - a
    denom = float(np.dot(e, e))
    t = np.clip(((pts - a) @ e) / denom, 0.0, 1.0)
    foot = a + t[:, None] * e
    return np.hypot(pts[:, 0] - foot[:, 0], pts[:, 1] - foot[:, 1])


def _points_segments_distance_matrix(pts, seg_a, seg_b) -> np.ndarray:
    e = seg_b - seg_a                                 # (M, 2)
    denom = np.sum(e * e, axis=1)                     # (M,)
    pe = pts[:, None, :] - seg_a[None, :, :]          # (N, M, 2)
    t = np.clip(np.sum(pe * e[None, :, :], axis=2) / denom[None, :], 0.0, 1.0)
    foot = seg_a[None, :, :] + t[:, :, None] * e[None, :, :]
    diff = pts[:, None, :] - foot
    return np.hypot(diff[:, :, 0], diff[:, :, 1])


def _rotation_candidates() -> list[float]:
    fracs = set()
    for n in range(1, 13):
        for k in range(n):
            fracs.add(round(k / n, 12))
    return sorted(2 * math.pi * f for f in fracs)


def _axis_candidates(body, g: np.ndarray) -> list[float]:
    if isinstance(body, Polygon):
        pts = list(body.vertices) + [0.5 * (a + b) for a, b in body.edges()]
        raw = [math.atan2(p[1] - g[1], p[0] - g[0]) % math.pi for p in pts]
    elif isinstance(body, Disk):
        raw = [math.pi * k / 8 for k in range(8)]
    else:
        t = np.linspace(0, 2 * math.pi, 4096, endpoint=False)
        rb = body.boundary_radius(t)
        prv = np.roll(rb, 1)
        nxt = np.roll(rb, -1)
        ext = t[((rb >= prv) & (rb > nxt)) | ((rb <= prv) & (rb < nxt))]
        raw = [float(a) % math.pi for a in ext]
        raw += [((a + b) / 2) % math.pi for a in raw for b in raw if a < b]
    out: list[float] = []
    for a in sorted(raw):
        if all(min(abs(a - b), math.pi - abs(a - b)) > 1e-9 for b in out):
            out.append(a)
    return out[:64]
