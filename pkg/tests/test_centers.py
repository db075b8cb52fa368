"""Center location, uniqueness regimes, loci, and limit diagnostics."""

import math

import numpy as np
import pytest

from radialcenters.centers import (ascend, find_center, limit_diagnostics,
                                   multistart_seeds, trace_locus, _normalize)
from radialcenters.geometry import (Disk, Polygon, centroid, circumcenter, contains,
                                    convex_hull, diameter, incenter, transformed,
                                    unfolded_region)
from radialcenters.potentials import Heat, Poisson, Riesz

from conftest import make_square, make_tri345, random_convex_polygon


def test_symmetric_bodies_center_at_symmetry_point():
    sq = make_square(center=(2.0, -1.0))
    d = Disk([1.0, 3.0], 1.5)
    par = Polygon([[0, 0], [3, 0], [4, 2], [1, 2]])
    for body, want in ((sq, [2.0, -1.0]), (d, [1.0, 3.0]), (par, [2.0, 1.0])):
        for spec in (Riesz(0.5), Riesz(4.0), Poisson(1.0), Heat(0.8)):
            res = find_center(body, spec)
            assert res.point == pytest.approx(want, abs=1e-8), (body, spec)


def test_quadratic_order_center_is_centroid():
    tri = make_tri345()
    res = find_center(tri, Riesz(4.0))
    assert res.point == pytest.approx(centroid(tri), abs=1e-9 * diameter(tri))
    assert res.regime == "concave_global"
    assert res.uniqueness_guaranteed


def test_regime_labels():
    tri = make_tri345()
    assert find_center(tri, Riesz(0.5)).regime == "concave_interior"
    assert find_center(tri, Riesz(3.0)).regime == "concave_global"
    assert find_center(tri, Poisson(1.0)).regime == "concave_global"
    assert find_center(tri, Heat(1.0)).regime == "concave_global"
    mid = find_center(tri, Riesz(2.0))
    assert mid.regime == "multistart"
    assert not mid.uniqueness_guaranteed


def test_interior_restriction_for_nonpositive_orders():
    tri = make_tri345()
    for alpha in (-1.0, 0.0):
        res = find_center(tri, Riesz(alpha))
        assert contains(tri, res.point)
        from radialcenters.geometry import boundary_distance
        assert boundary_distance(tri, res.point) > 1e-7 * diameter(tri)


def test_large_order_approaches_circumcenter():
    tri = make_tri345()
    cc = circumcenter(tri).center
    d = diameter(tri)
    r200 = find_center(tri, Riesz(200.0))
    r10 = find_center(tri, Riesz(10.0))
    d200 = float(np.hypot(*(r200.point - cc)))
    d10 = float(np.hypot(*(r10.point - cc)))
    assert d200 < 0.05 * d
    assert d200 < d10


def test_poisson_large_height_near_centroid():
    tri = make_tri345()
    d = diameter(tri)
    res = find_center(tri, Poisson(100 * d))
    assert float(np.hypot(*(res.point - centroid(tri)))) < 1e-3 * d


def test_heat_large_time_near_centroid():
    tri = make_tri345()
    d = diameter(tri)
    res = find_center(tri, Heat(1e6))
    assert float(np.hypot(*(res.point - centroid(tri)))) < 1e-3 * d


def test_multistart_uniqueness_in_guaranteed_regimes(rng):
    tri = make_tri345()
    d = diameter(tri)
    specs = [Riesz(0.5), Riesz(3.0), Poisson(0.3 * d), Heat(0.05 * d * d)]
    for spec in specs:
        norm = _normalize(tri, spec)
        seeds = multistart_seeds(norm.body)
        assert len(seeds) >= 12
        endpoints = []
        for s in seeds:
            y, _, _, _ = ascend(norm.body, norm.spec, s)
            endpoints.append(norm.to_original(y))
        ref = endpoints[0]
        for p in endpoints[1:]:
            assert float(np.hypot(*(p - ref))) < 1e-7 * d, spec


def test_equivariance_of_centers(rng):
    poly = random_convex_polygon(rng)
    d = diameter(poly)
    angle, shift = 0.9, np.array([2.0, -3.0])
    moved = transformed(poly, angle=angle, shift=shift)
    R = np.array([[math.cos(angle), -math.sin(angle)],
                  [math.sin(angle), math.cos(angle)]])
    for spec in (Riesz(3.0), Poisson(0.5 * d), Heat(0.1 * d * d)):
        p1 = find_center(poly, spec).point
        p2 = find_center(moved, spec).point
        assert float(np.hypot(*(p2 - (R @ p1 + shift)))) < 1e-8 * d


def test_centers_inside_heart_and_hull(rng):
    tri = make_tri345()
    reg = unfolded_region(tri, 64)
    tol = math.pi * diameter(tri) / 64
    hull = convex_hull(tri.vertices)
    hull_poly = Polygon(hull)
    for spec in (Riesz(2.5), Riesz(5.0), Poisson(1.0), Heat(0.5)):
        res = find_center(tri, spec)
        assert reg.contains(res.point, tol=tol), spec
        assert contains(hull_poly, res.point)
        from radialcenters.geometry import boundary_distance
        assert boundary_distance(hull_poly, res.point) > 1e-9


def test_multistart_on_nonconvex_body():
    # symmetric L-shape: the maximum must sit on the diagonal, inside the body
    lshape = Polygon([[0, 0], [3, 0], [3, 1], [1, 1], [1, 3], [0, 3]])
    for spec in (Riesz(2.0), Riesz(0.5)):
        res = find_center(lshape, spec)
        assert res.regime == "multistart"
        assert not res.uniqueness_guaranteed
        assert contains(lshape, res.point)
        assert res.point[0] == pytest.approx(res.point[1], abs=1e-7)


def test_trace_locus_symmetric_body_constant():
    sq = make_square()
    tr = trace_locus(sq, "riesz", (3.0, 50.0), 8)
    assert np.abs(tr.points).max() < 1e-8
    assert len(tr.params) >= 8
    assert np.all(np.diff(tr.params) > 0)


def test_trace_locus_riesz_toward_circumcenter():
    tri = make_tri345()
    d = diameter(tri)
    tr = trace_locus(tri, "riesz", (4.0, 200.0), 12)
    cc = circumcenter(tri).center
    assert float(np.hypot(*(tr.points[0] - centroid(tri)))) < 0.15 * d
    assert float(np.hypot(*(tr.points[-1] - cc))) < 0.05 * d
    gaps = np.hypot(*np.diff(tr.points, axis=0).T)
    assert gaps.max() < 0.05 * d


def test_trace_locus_heat_endpoints():
    tri = make_tri345()
    d = diameter(tri)
    tr = trace_locus(tri, "heat", (1e-3, 1e3), 10)
    ic = incenter(tri).center
    g = centroid(tri)
    assert float(np.hypot(*(tr.points[0] - ic))) < 0.1 * d
    assert float(np.hypot(*(tr.points[-1] - g))) < 1e-3 * d


def test_trace_locus_validation():
    with pytest.raises(ValueError):
        trace_locus(make_square(), "riesz", (5.0, 2.0), 4)
    with pytest.raises(ValueError):
        trace_locus(make_square(), "heat", (-1.0, 2.0), 4)
    with pytest.raises(ValueError):
        trace_locus(make_square(), "nope", (1.0, 2.0), 4)


def test_limit_diagnostics_triangle():
    tri = make_tri345()
    diag = limit_diagnostics(tri)
    assert diag.monotone_riesz
    assert diag.monotone_poisson
    assert diag.monotone_heat
    # the far ends approach their limits
    assert diag.riesz[-1][2] < 0.05 * diag.diam
    assert diag.poisson[-1][2] < 1e-3 * diag.diam
    assert diag.heat[-1][2] < 1e-3 * diag.diam           # large time vs centroid
    assert diag.heat[0][3] < 0.1 * diag.diam             # small time vs incenter


def test_limit_diagnostics_disk_all_zero():
    d = Disk([1.0, -2.0], 1.0)
    diag = limit_diagnostics(d)
    for rows in (diag.riesz, diag.poisson):
        for row in rows:
            assert row[2] < 1e-7
    for row in diag.heat:
        assert row[2] < 1e-7


def test_limit_diagnostics_rectangle_center():
    rect = Polygon([[0, 0], [4, 0], [4, 1], [0, 1]])
    diag = limit_diagnostics(rect)
    for rows in (diag.riesz, diag.poisson):
        for _, p, _ in rows:
            assert p == pytest.approx([2.0, 0.5], abs=1e-6)
    for _, p, _, _ in diag.heat:
        assert p == pytest.approx([2.0, 0.5], abs=1e-6)
