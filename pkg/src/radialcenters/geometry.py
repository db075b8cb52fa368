"""Planar body representations and classical centers.

Bodies are immutable value objects: simple polygons (counterclockwise),
disks, and radially parameterized convex bodies (defined in the balance
module, plugged in here via duck typing).  All operations are pure
functions; points are numpy arrays of shape (2,).
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

import numpy as np
from scipy.optimize import linprog

from .errors import InvalidBody, NotStarShaped

__all__ = [
    "Polygon", "Disk", "ArcSet", "UnfoldedRegion",
    "CircumCenter", "InCenter",
    "area", "centroid", "diameter", "contains", "boundary_distance",
    "classify_location", "is_convex", "convex_hull",
    "circumcenter", "incenter", "radial_function", "radial_function_many",
    "circle_clip", "maximal_folding", "unfolded_region",
    "halfplane_intersection", "boundary_polyline", "transformed",
    "polygon_to_dict", "disk_to_dict", "body_to_dict", "body_from_dict",
]

# Angular dedup tolerance for arc endpoints (intersection noise floor).
ANGLE_TOL = 1e-12
# Relative slack for containment / membership tests.
REL_TOL = 1e-12


def as_point(p) -> np.ndarray:
    q = np.asarray(p, dtype=float).reshape(2)
    if not np.all(np.isfinite(q)):
        raise InvalidBody(f"non-finite point {p!r}")
    return q


def _unit(theta):
    return np.array([math.cos(theta), math.sin(theta)])


def _cross(a, b) -> float:
    return a[0] * b[1] - a[1] * b[0]


# ---------------------------------------------------------------------------
# body types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polygon:
    """Simple polygon with counterclockwise vertices and positive area.

    Degenerate input (repeated or collinear consecutive vertices,
    self-intersection, clockwise orientation) is rejected.
    """

    vertices: np.ndarray

    def __init__(self, vertices):
        arr = np.asarray(vertices, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 3:
            raise InvalidBody("polygon needs at least 3 points of shape (n, 2)")
        if not np.all(np.isfinite(arr)):
            raise InvalidBody("polygon has non-finite coordinates")
        scale = float(np.max(np.ptp(arr, axis=0)))
        if scale <= 0:
            raise InvalidBody("polygon has zero extent")
        n = arr.shape[0]
        nxt = np.roll(arr, -1, axis=0)
        edges = nxt - arr
        if np.any(np.hypot(edges[:, 0], edges[:, 1]) <= REL_TOL * scale):
            raise InvalidBody("consecutive vertices coincide")
        area2 = float(np.sum(arr[:, 0] * nxt[:, 1] - nxt[:, 0] * arr[:, 1]))
        if area2 <= 0:
            raise InvalidBody("vertices must be counterclockwise with positive area")
        prv = np.roll(edges, 1, axis=0)
        crosses = prv[:, 0] * edges[:, 1] - prv[:, 1] * edges[:, 0]
        if np.any(np.abs(crosses) <= REL_TOL * scale * scale):
            raise InvalidBody("collinear vertex triple")
        for i in range(n):
            a, b = arr[i], nxt[i]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                c, d = arr[j], nxt[j]
                if _segments_cross(a, b, c, d, REL_TOL * scale):
                    raise InvalidBody("polygon is self-intersecting")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "vertices", arr)

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    def edges(self) -> Iterable[tuple[np.ndarray, np.ndarray]]:
        v = self.vertices
        for i in range(len(v)):
            yield v[i], v[(i + 1) % len(v)]


@dataclass(frozen=True)
class Disk:
    center: np.ndarray
    radius: float

    def __init__(self, center, radius):
        c = as_point(center)
        r = float(radius)
        if not (r > 0 and math.isfinite(r)):
            raise InvalidBody("disk radius must be positive and finite")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)


Body = Union[Polygon, Disk, "RadialArcBody"]  # noqa: F821  (radial-arc lives in balance)


def _segments_cross(a, b, c, d, tol) -> bool:
    """Proper crossing test: segment interiors intersect transversally."""
    d1 = _cross(b - a, c - a)
    d2 = _cross(b - a, d - a)
    d3 = _cross(d - c, a - c)
    d4 = _cross(d - c, b - c)
    return (d1 > tol and d2 < -tol or d1 < -tol and d2 > tol) and \
           (d3 > tol and d4 < -tol or d3 < -tol and d4 > tol)


# ---------------------------------------------------------------------------
# arc sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArcSet:
    """Angular intervals of the circle of given radius about ``center``.

    Arcs are half-open ``[t1, t2)`` with ``t1`` in [0, 2pi) and
    ``t1 < t2 <= t1 + 2pi``; they are sorted and pairwise disjoint mod 2pi.
    """

    center: np.ndarray
    radius: float
    arcs: tuple[tuple[float, float], ...]

    def measure(self) -> float:
        return math.fsum(t2 - t1 for t1, t2 in self.arcs)

    def is_full(self) -> bool:
        return abs(self.measure() - 2 * math.pi) <= 4 * ANGLE_TOL

    def is_empty(self) -> bool:
        return not self.arcs

    def to_dict(self) -> dict:
        return {"center": [float(self.center[0]), float(self.center[1])],
                "radius": float(self.radius),
                "arcs": [[float(t1), float(t2)] for t1, t2 in self.arcs]}

    def complement(self) -> "ArcSet":
        """Arcs of the same circle lying outside the body."""
        if not self.arcs:
            return ArcSet(self.center, self.radius, ((0.0, 2 * math.pi),))
        if self.is_full():
            return ArcSet(self.center, self.radius, ())
        gaps = []
        arcs = self.arcs
        for i in range(len(arcs)):
            end = arcs[i][1]
            start_next = arcs[(i + 1) % len(arcs)][0] + (2 * math.pi if i == len(arcs) - 1 else 0.0)
            if start_next - end > ANGLE_TOL:
                gaps.append((end % (2 * math.pi), end % (2 * math.pi) + (start_next - end)))
        gaps.sort()
        return ArcSet(self.center, self.radius, tuple(gaps))


def _build_arcset(center, radius, raw_arcs) -> ArcSet:
    """Normalize, merge adjacent, and sort raw (t1, t2) intervals."""
    arcs = []
    for t1, t2 in raw_arcs:
        if t2 - t1 <= ANGLE_TOL:
            continue
        base = t1 % (2 * math.pi)
        arcs.append((base, base + (t2 - t1)))
    arcs.sort()
    merged: list[list[float]] = []
    for t1, t2 in arcs:
        if merged and t1 - merged[-1][1] <= ANGLE_TOL:
            merged[-1][1] = max(merged[-1][1], t2)
        else:
            merged.append([t1, t2])
    # wrap-around merge
    if len(merged) > 1 and (merged[0][0] + 2 * math.pi) - merged[-1][1] <= ANGLE_TOL:
        first = merged.pop(0)
        merged[-1][1] = first[1] + 2 * math.pi
    total = math.fsum(t2 - t1 for t1, t2 in merged)
    if total >= 2 * math.pi - ANGLE_TOL:
        return ArcSet(center, radius, ((0.0, 2 * math.pi),))
    return ArcSet(center, radius, tuple((t1, t2) for t1, t2 in merged))


# ---------------------------------------------------------------------------
# basic measures and membership
# ---------------------------------------------------------------------------

def area(body: Body) -> float:
    if isinstance(body, Polygon):
        v = body.vertices
        nxt = np.roll(v, -1, axis=0)
        return 0.5 * float(np.sum(v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]))
    if isinstance(body, Disk):
        return math.pi * body.radius ** 2
    return body.area()


def centroid(body: Body) -> np.ndarray:
    if isinstance(body, Polygon):
        v = body.vertices
        nxt = np.roll(v, -1, axis=0)
        w = v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]
        a = 0.5 * float(np.sum(w))
        cx = float(np.sum((v[:, 0] + nxt[:, 0]) * w)) / (6 * a)
        cy = float(np.sum((v[:, 1] + nxt[:, 1]) * w)) / (6 * a)
        return np.array([cx, cy])
    if isinstance(body, Disk):
        return body.center.copy()
    return body.centroid()


def diameter(body: Body) -> float:
    if isinstance(body, Polygon):
        v = body.vertices
        d2 = np.sum((v[:, None, :] - v[None, :, :]) ** 2, axis=-1)
        return math.sqrt(float(d2.max()))
    if isinstance(body, Disk):
        return 2.0 * body.radius
    return body.diameter()


def contains(body: Body, p, tol: Optional[float] = None) -> bool:
    """Closed-set membership; points within ``tol`` of the boundary count as inside."""
    p = as_point(p)
    if isinstance(body, Polygon):
        t = (REL_TOL * diameter(body)) if tol is None else tol
        if boundary_distance(body, p) <= t:
            return True
        return _crossing_number_inside(body.vertices, p)
    if isinstance(body, Disk):
        t = (REL_TOL * body.radius) if tol is None else tol
        return float(np.hypot(*(p - body.center))) <= body.radius + t
    return body.contains(p, tol)


def contains_many(body: Body, pts: np.ndarray) -> np.ndarray:
    """Vectorized membership (boundary treatment not hardened; for sampling oracles)."""
    pts = np.asarray(pts, dtype=float)
    if isinstance(body, Disk):
        return np.hypot(pts[:, 0] - body.center[0], pts[:, 1] - body.center[1]) <= body.radius
    if isinstance(body, Polygon):
        v = body.vertices
        n = len(v)
        inside = np.zeros(len(pts), dtype=bool)
        x, y = pts[:, 0], pts[:, 1]
        for i in range(n):
            x1, y1 = v[i]
            x2, y2 = v[(i + 1) % n]
            crosses = (y1 > y) != (y2 > y)
            with np.errstate(divide="ignore", invalid="ignore"):
                xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            inside ^= crosses & (x < np.where(crosses, xi, np.inf))
        return inside
    return np.array([body.contains(p, None) for p in pts], dtype=bool)


def _crossing_number_inside(v: np.ndarray, p: np.ndarray) -> bool:
    inside = False
    n = len(v)
    for i in range(n):
        x1, y1 = v[i]
        x2, y2 = v[(i + 1) % n]
        if (y1 > p[1]) != (y2 > p[1]):
            xi = x1 + (p[1] - y1) * (x2 - x1) / (y2 - y1)
            if p[0] < xi:
                inside = not inside
    return inside


def boundary_distance(body: Body, p) -> float:
    p = as_point(p)
    if isinstance(body, Polygon):
        return min(_point_segment_distance(p, a, b) for a, b in body.edges())
    if isinstance(body, Disk):
        return abs(float(np.hypot(*(p - body.center))) - body.radius)
    return body.boundary_distance(p)


def _point_segment_distance(p, a, b) -> float:
    e = b - a
    t = float(np.dot(p - a, e) / np.dot(e, e))
    t = min(1.0, max(0.0, t))
    return float(np.hypot(*(p - (a + t * e))))


def classify_location(body: Body, p, band_rel: float = 1e-9) -> str:
    """'interior' | 'exterior' | 'boundary' with a relative boundary band."""
    p = as_point(p)
    band = band_rel * diameter(body)
    if boundary_distance(body, p) <= band:
        return "boundary"
    return "interior" if contains(body, p) else "exterior"


def is_convex(body: Body) -> bool:
    if isinstance(body, Disk):
        return True
    if isinstance(body, Polygon):
        v = body.vertices
        e = np.roll(v, -1, axis=0) - v
        prv = np.roll(e, 1, axis=0)
        return bool(np.all(prv[:, 0] * e[:, 1] - prv[:, 1] * e[:, 0] > 0))
    return body.is_convex()


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Andrew monotone chain; returns hull vertices counterclockwise."""
    pts = sorted(map(tuple, np.asarray(points, dtype=float)))
    if len(pts) <= 2:
        return np.asarray(pts)

    def half(seq):
        out = []
        for q in seq:
            while len(out) >= 2 and _cross(np.subtract(out[-1], out[-2]),
                                           np.subtract(q, out[-2])) <= 0:
                out.pop()
            out.append(q)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return np.asarray(lower[:-1] + upper[:-1])


# ---------------------------------------------------------------------------
# classical centers
# ---------------------------------------------------------------------------

class CircumCenter(NamedTuple):
    center: np.ndarray
    radius: float


class InCenter(NamedTuple):
    center: np.ndarray
    radius: float
    ambiguous: bool


def circumcenter(body: Body) -> CircumCenter:
    """Center and radius of the minimal enclosing disk (unique)."""
    if isinstance(body, Disk):
        return CircumCenter(body.center.copy(), body.radius)
    if isinstance(body, Polygon):
        pts = [tuple(p) for p in body.vertices]
    else:
        pts = [tuple(p) for p in body.boundary_polyline(2048)]
    c = _welzl(pts)
    return CircumCenter(np.array([c[0], c[1]]), c[2])


def _welzl(points) -> tuple[float, float, float]:
    """Minimal enclosing circle, randomized incremental (expected linear)."""
    pts = [(float(x), float(y)) for x, y in points]
    rng = random.Random(0x5eed)
    rng.shuffle(pts)
    c = None
    for i, p in enumerate(pts):
        if c is None or not _in_circle(c, p):
            c = _circle_one(pts[: i + 1], p)
    return c


def _circle_one(points, p):
    c = (p[0], p[1], 0.0)
    for i, q in enumerate(points):
        if not _in_circle(c, q):
            c = _circle_diameter(p, q) if c[2] == 0.0 else _circle_two(points[: i + 1], p, q)
    return c


def _circle_two(points, p, q):
    circ = _circle_diameter(p, q)
    left = right = None
    px, py = p
    qx, qy = q
    for r in points:
        if _in_circle(circ, r):
            continue
        cr = _cross3(px, py, qx, qy, r[0], r[1])
        c = _circumscribed(p, q, r)
        if c is None:
            continue
        if cr > 0 and (left is None or _cross3(px, py, qx, qy, c[0], c[1]) >
                       _cross3(px, py, qx, qy, left[0], left[1])):
            left = c
        elif cr < 0 and (right is None or _cross3(px, py, qx, qy, c[0], c[1]) <
                         _cross3(px, py, qx, qy, right[0], right[1])):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _circle_diameter(a, b):
    cx, cy = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
    r = max(math.hypot(cx - a[0], cy - a[1]), math.hypot(cx - b[0], cy - b[1]))
    return (cx, cy, r)


def _circumscribed(a, b, c):
    ox, oy = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2, \
             (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
              + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
              + (cx * cx + cy * cy) * (bx - ax)) / d
    r = max(math.hypot(x - p[0], y - p[1]) for p in (a, b, c))
    return (x, y, r)


def _cross3(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _in_circle(c, p, eps=1e-12):
    return c is not None and math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] * (1 + eps) + eps


def incenter(body: Body) -> InCenter:
    """A deepest interior point (Chebyshev center) and the inradius.

    Convex polygons are solved exactly by linear programming over edge
    half-planes; when the optimal set is a segment (e.g. long rectangles) the
    canonical midpoint of that face is returned and ``ambiguous`` is set.
    Non-convex polygons fall back to grid search plus local refinement and
    are always flagged ambiguous.
    """
    if isinstance(body, Disk):
        return InCenter(body.center.copy(), body.radius, False)
    if isinstance(body, Polygon) and is_convex(body):
        return _incenter_lp(body)
    if isinstance(body, Polygon):
        return _incenter_grid(body)
    # convex radially parameterized body: polygonal approximation of tangents
    poly = Polygon(body.boundary_polyline(512))
    c = _incenter_lp(poly)
    return InCenter(c.center, c.radius, c.ambiguous)


def _incenter_lp(poly: Polygon) -> InCenter:
    normals, offsets = _edge_halfplanes(poly)
    m = len(offsets)
    # maximize r  s.t.  n_i . x + r <= b_i   (normals are unit outward)
    res = linprog(c=[0.0, 0.0, -1.0],
                  A_ub=np.hstack([normals, np.ones((m, 1))]),
                  b_ub=offsets, bounds=[(None, None), (None, None), (0, None)],
                  method="highs")
    if not res.success:
        raise InvalidBody("incenter LP failed; polygon may be degenerate")
    r = float(res.x[2])
    # canonical point: midpoint (vertex mean) of the optimal face
    face = halfplane_intersection(normals, offsets - r + 1e-12 * diameter(poly),
                                  _bounding_box(poly, pad=1.0))
    if face is not None and len(face) > 0:
        point = face.mean(axis=0)
        amb = float(np.max(np.ptp(face, axis=0))) > 1e-9 * diameter(poly)
    else:
        point = np.array([res.x[0], res.x[1]])
        amb = False
    return InCenter(point, r, amb)


def _incenter_grid(poly: Polygon, n: int = 96) -> InCenter:
    xs = np.linspace(poly.vertices[:, 0].min(), poly.vertices[:, 0].max(), n)
    ys = np.linspace(poly.vertices[:, 1].min(), poly.vertices[:, 1].max(), n)
    gx, gy = np.meshgrid(xs, ys)
    pts = np.stack([gx.ravel(), gy.ravel()], axis=1)
    inside = contains_many(poly, pts)
    best, best_d = None, -1.0
    for p in pts[inside]:
        d = boundary_distance(poly, p)
        if d > best_d:
            best, best_d = p, d
    if best is None:
        raise InvalidBody("no interior grid point found")
    # local refinement by shrinking pattern search
    step = (xs[1] - xs[0])
    p = best.copy()
    for _ in range(60):
        improved = False
        for dxy in ((step, 0), (-step, 0), (0, step), (0, -step),
                    (step, step), (step, -step), (-step, step), (-step, -step)):
            q = p + dxy
            if contains(poly, q) and boundary_distance(poly, q) > best_d:
                p, best_d, improved = q, boundary_distance(poly, q), True
        if not improved:
            step *= 0.5
            if step < 1e-13 * diameter(poly):
                break
    return InCenter(p, best_d, True)


def _edge_halfplanes(poly: Polygon) -> tuple[np.ndarray, np.ndarray]:
    """Unit outward normals n_i and offsets b_i with interior = {n_i . x <= b_i}."""
    v = poly.vertices
    e = np.roll(v, -1, axis=0) - v
    lengths = np.hypot(e[:, 0], e[:, 1])
    normals = np.stack([e[:, 1], -e[:, 0]], axis=1) / lengths[:, None]
    offsets = np.sum(normals * v, axis=1)
    return normals, offsets


def _bounding_box(poly: Polygon, pad: float = 0.0) -> np.ndarray:
    lo = poly.vertices.min(axis=0)
    hi = poly.vertices.max(axis=0)
    d = float(np.max(hi - lo)) * (1.0 + pad) + 1.0
    c = (lo + hi) / 2
    return np.array([c + [-d, -d], c + [d, -d], c + [d, d], c + [-d, d]])


def halfplane_intersection(normals, offsets, seed_polygon) -> Optional[np.ndarray]:
    """Clip ``seed_polygon`` by every half-plane {x : n . x <= b}.

    Returns the vertices of the (convex) intersection, or None when empty.
    """
    pts = [np.asarray(p, dtype=float) for p in seed_polygon]
    for nvec, b in zip(np.asarray(normals, dtype=float), np.asarray(offsets, dtype=float)):
        if not pts:
            return None
        out = []
        m = len(pts)
        vals = [float(np.dot(nvec, p)) - b for p in pts]
        for i in range(m):
            p, q = pts[i], pts[(i + 1) % m]
            vp, vq = vals[i], vals[(i + 1) % m]
            if vp <= 0:
                out.append(p)
            if (vp < 0 < vq) or (vq < 0 < vp):
                t = vp / (vp - vq)
                out.append(p + t * (q - p))
        pts = out
    return np.asarray(pts) if pts else None


# ---------------------------------------------------------------------------
# radial function
# ---------------------------------------------------------------------------

def radial_function(body: Body, x, theta: float) -> float:
    """Distance from interior point ``x`` to the boundary along direction ``theta``.

    Raises NotStarShaped when the ray re-enters the body beyond its first exit.
    """
    x = as_point(x)
    if isinstance(body, Disk):
        d = x - body.center
        u = _unit(theta)
        du = float(np.dot(d, u))
        disc = body.radius ** 2 - float(np.dot(d, d)) + du * du
        if disc < 0 or float(np.dot(d, d)) > body.radius ** 2:
            raise NotStarShaped("base point outside the disk")
        return -du + math.sqrt(disc)
    if isinstance(body, Polygon):
        if is_convex(body):
            return float(radial_function_many(body, x, np.array([theta]))[0])
        return _radial_general(body, x, theta)
    return body.radial_function(x, theta)


def radial_function_many(body: Body, x, thetas: np.ndarray) -> np.ndarray:
    """Vectorized radial function (fast for convex polygons and disks)."""
    x = as_point(x)
    thetas = np.asarray(thetas, dtype=float)
    u = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    if isinstance(body, Disk):
        d = x - body.center
        du = u @ d
        disc = body.radius ** 2 - float(np.dot(d, d)) + du * du
        if np.any(disc < 0):
            raise NotStarShaped("base point outside the disk")
        return -du + np.sqrt(disc)
    if isinstance(body, Polygon):
        if not is_convex(body):
            # the half-plane formula is wrong for reflex polygons
            return np.array([_radial_general(body, x, float(t)) for t in thetas])
        normals, offsets = _edge_halfplanes(body)
        denom = u @ normals.T                      # (k, n)
        num = offsets - normals @ x                # (n,)
        if np.any(num < -REL_TOL * diameter(body)):
            raise NotStarShaped("base point outside the polygon")
        with np.errstate(divide="ignore"):
            lam = np.where(denom > 1e-14, num[None, :] / denom, np.inf)
        return lam.min(axis=1)
    return np.array([body.radial_function(x, t) for t in thetas])


def _radial_general(poly: Polygon, x: np.ndarray, theta: float) -> float:
    u = _unit(theta)
    scale = diameter(poly)
    hits = []
    for a, b in poly.edges():
        e = b - a
        den = _cross(u, e)
        if abs(den) < 1e-15 * scale:
            continue
        t = _cross(a - x, e) / den          # distance along the ray
        s = _cross(a - x, u) / den          # position along the edge
        if t > REL_TOL * scale and -REL_TOL <= s <= 1 + REL_TOL:
            hits.append(t)
    hits.sort()
    dedup = []
    for t in hits:
        if not dedup or t - dedup[-1] > 1e-9 * scale:
            dedup.append(t)
    if not dedup:
        raise NotStarShaped("ray never leaves the polygon; base point may be exterior")
    if len(dedup) > 1:
        raise NotStarShaped(f"ray crosses the boundary {len(dedup)} times")
    return dedup[0]


# ---------------------------------------------------------------------------
# circle clipping
# ---------------------------------------------------------------------------

def circle_clip(body: Body, x, r: float) -> ArcSet:
    """Arcs of the circle of radius ``r`` about ``x`` that lie inside the body.

    Tangential contacts are resolved by midpoint membership tests and arc
    merging; the operation never fails on degeneracies.
    """
    x = as_point(x)
    r = float(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    if isinstance(body, Disk):
        return _circle_clip_disk(body, x, r)
    if isinstance(body, Polygon):
        return _circle_clip_polygon(body, x, r)
    return body.circle_clip(x, r)


def _circle_clip_disk(disk: Disk, x: np.ndarray, r: float) -> ArcSet:
    d = float(np.hypot(*(disk.center - x)))
    R = disk.radius
    if d + r <= R + ANGLE_TOL * max(r, 1.0):
        return ArcSet(x, r, ((0.0, 2 * math.pi),))
    if r >= d + R or d >= r + R:
        return ArcSet(x, r, ())
    cosb = (d * d + r * r - R * R) / (2 * d * r)
    cosb = min(1.0, max(-1.0, cosb))
    beta = math.acos(cosb)
    phi = math.atan2(disk.center[1] - x[1], disk.center[0] - x[0])
    return _build_arcset(x, r, [(phi - beta, phi + beta)])


def _circle_clip_polygon(poly: Polygon, x: np.ndarray, r: float) -> ArcSet:
    angles = []
    for a, b in poly.edges():
        e = b - a
        aa = float(np.dot(e, e))
        bb = 2.0 * float(np.dot(a - x, e))
        cc = float(np.dot(a - x, a - x)) - r * r
        disc = bb * bb - 4 * aa * cc
        if disc < 0:
            continue
        sq = math.sqrt(max(disc, 0.0))
        for t in ((-bb - sq) / (2 * aa), (-bb + sq) / (2 * aa)):
            if -1e-12 <= t <= 1 + 1e-12:
                y = a + t * e
                angles.append(math.atan2(y[1] - x[1], y[0] - x[0]) % (2 * math.pi))
    if not angles:
        probe = x + r * _unit(0.1234567)
        if contains(poly, probe):
            return ArcSet(x, r, ((0.0, 2 * math.pi),))
        return ArcSet(x, r, ())
    angles.sort()
    dedup = [angles[0]]
    for t in angles[1:]:
        if t - dedup[-1] > ANGLE_TOL:
            dedup.append(t)
    if (dedup[0] + 2 * math.pi) - dedup[-1] <= ANGLE_TOL and len(dedup) > 1:
        dedup.pop()
    raw = []
    k = len(dedup)
    for i in range(k):
        t1 = dedup[i]
        t2 = dedup[(i + 1) % k] + (2 * math.pi if i == k - 1 else 0.0)
        mid = 0.5 * (t1 + t2)
        if contains(poly, x + r * _unit(mid)):
            raw.append((t1, t2))
    return _build_arcset(x, r, raw)


# ---------------------------------------------------------------------------
# folding and the unfolded region
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnfoldedRegion:
    """Intersection of half-planes {z . v <= offset(v)} over sampled directions.

    An outer approximation of the region containing all potential critical
    points; it shrinks as the direction count grows.
    """

    directions: np.ndarray
    offsets: np.ndarray
    polygon: Optional[np.ndarray]

    def contains(self, p, tol: float = 0.0) -> bool:
        p = as_point(p)
        return bool(np.all(self.directions @ p <= self.offsets + tol))

    def diameter(self) -> float:
        if self.polygon is None or len(self.polygon) == 0:
            return 0.0
        v = self.polygon
        d2 = np.sum((v[:, None, :] - v[None, :, :]) ** 2, axis=-1)
        return math.sqrt(float(d2.max()))

    def to_dict(self) -> dict:
        return {"directions": [[float(a), float(b)] for a, b in self.directions],
                "offsets": [float(o) for o in self.offsets],
                "polygon": None if self.polygon is None
                else [[float(a), float(b)] for a, b in self.polygon]}


def maximal_folding(poly: Polygon, v) -> float:
    """Smallest offset from which every cap folds into the polygon.

    The cap {z . v >= b} reflected across {z . v = b} must land inside the
    polygon for every b at or beyond the returned offset.  Found by bisection
    on b with an exact clipped-and-reflected containment test.
    """
    v = as_point(v)
    v = v / float(np.hypot(*v))
    proj = poly.vertices @ v
    lo, hi = float(proj.min()), float(proj.max())
    convex = is_convex(poly)
    if _fold_ok(poly, v, lo, convex):
        return lo
    if not convex:
        # containment is only guaranteed monotone for convex bodies; locate the
        # last failing offset on a coarse grid before refining
        grid = np.linspace(lo, hi, 129)
        lo_fail = lo
        for b in grid[1:-1]:
            if not _fold_ok(poly, v, float(b), convex):
                lo_fail = float(b)
        lo = lo_fail
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _fold_ok(poly, v, mid, convex):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _fold_ok(poly: Polygon, v: np.ndarray, b: float, convex: bool) -> bool:
    scale = diameter(poly)
    cap = _clip_keep_ge(list(poly.vertices), v, b)
    if len(cap) < 3:
        return True
    reflected = [p - 2.0 * (float(np.dot(p, v)) - b) * v for p in cap]
    tol = REL_TOL * scale
    for p in reflected:
        if not contains(poly, p, tol=tol):
            return False
    if convex:
        return True
    m = len(reflected)
    for i in range(m):
        p, q = reflected[i], reflected[(i + 1) % m]
        if not contains(poly, 0.5 * (p + q), tol=tol):
            return False
        for a, bb in poly.edges():
            if _segments_cross(p, q, a, bb, tol):
                return False
    return True


def _clip_keep_ge(pts, v, b):
    """Sutherland-Hodgman clip keeping {p . v >= b}."""
    out = []
    m = len(pts)
    vals = [float(np.dot(p, v)) - b for p in pts]
    for i in range(m):
        p, q = pts[i], pts[(i + 1) % m]
        vp, vq = vals[i], vals[(i + 1) % m]
        if vp >= 0:
            out.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            t = vp / (vp - vq)
            out.append(p + t * (q - p))
    return out


def unfolded_region(poly: Polygon, n_dirs: int) -> UnfoldedRegion:
    """Outer approximation over ``n_dirs`` uniformly spaced fold directions."""
    if n_dirs < 8:
        raise ValueError("need at least 8 directions")
    thetas = 2 * math.pi * np.arange(n_dirs) / n_dirs
    dirs = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    offsets = np.array([maximal_folding(poly, d) for d in dirs])
    region = halfplane_intersection(dirs, offsets, _bounding_box(poly, pad=1.0))
    return UnfoldedRegion(dirs, offsets, region)


# ---------------------------------------------------------------------------
# transforms, sampling, serialization
# ---------------------------------------------------------------------------

def transformed(body: Body, angle: float = 0.0, shift=(0.0, 0.0), scale: float = 1.0) -> Body:
    """Rotate about the origin, scale, then translate."""
    shift = as_point(shift)
    c, s = math.cos(angle), math.sin(angle)
    R = np.array([[c, -s], [s, c]]) * scale
    if isinstance(body, Polygon):
        return Polygon(body.vertices @ R.T + shift)
    if isinstance(body, Disk):
        return Disk(R @ body.center + shift, body.radius * scale)
    raise TypeError(f"cannot transform body of type {type(body).__name__}")


def boundary_polyline(body: Body, n: int = 512) -> np.ndarray:
    """Closed boundary sample loop (last point connects back to the first)."""
    if isinstance(body, Polygon):
        pts = []
        per_edge = max(1, n // body.n)
        for a, b in body.edges():
            ts = np.linspace(0.0, 1.0, per_edge, endpoint=False)
            pts.append(a[None, :] + ts[:, None] * (b - a)[None, :])
        return np.vstack(pts)
    if isinstance(body, Disk):
        t = np.linspace(0, 2 * math.pi, n, endpoint=False)
        return body.center + body.radius * np.stack([np.cos(t), np.sin(t)], axis=1)
    return body.boundary_polyline(n)


def polygon_to_dict(poly: Polygon) -> dict:
    return {"vertices": [[float(x), float(y)] for x, y in poly.vertices]}


def disk_to_dict(disk: Disk) -> dict:
    return {"type": "disk", "center": [float(disk.center[0]), float(disk.center[1])],
            "radius": float(disk.radius)}


def body_to_dict(body: Body) -> dict:
    if isinstance(body, Polygon):
        return polygon_to_dict(body)
    if isinstance(body, Disk):
        return disk_to_dict(body)
    return body.to_dict()


def body_from_dict(data: dict) -> Body:
    if "vertices" in data:
        return Polygon(np.asarray(data["vertices"], dtype=float))
    if data.get("type") == "disk":
        return Disk(data["center"], data["radius"])
    if data.get("type") == "radial_arc":
        from .balance import RadialArcBody
        return RadialArcBody.from_dict(data)
    raise InvalidBody(f"unrecognized body JSON with keys {sorted(data)}")


def load_body(path: str) -> Body:
    with open(path) as fh:
        return body_from_dict(json.load(fh))
