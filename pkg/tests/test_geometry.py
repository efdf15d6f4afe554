import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull

from limitzeros.geometry import ConvexPolygon, hausdorff_convex, polygon_within

coords = st.floats(-10, 10, allow_nan=False)
point_lists = st.lists(st.tuples(coords, coords), min_size=3, max_size=40)


@given(point_lists)
def test_hull_matches_scipy(pts):
    z = np.array([complex(a, b) for a, b in pts])
    poly = ConvexPolygon.hull(z)
    xy = np.column_stack([z.real, z.imag])
    try:
        ref = ConvexHull(xy)
    except Exception:
        return  # collinear input; scipy refuses, we allow segments
    assert poly.area() == pytest.approx(ref.volume, rel=1e-9, abs=1e-9)
    for q in z:
        assert poly.contains(q, tol=1e-9)


def test_degenerate_shapes():
    seg = ConvexPolygon.hull([0, 1, 0.5, 0.25])
    assert len(seg) == 2 and seg.is_degenerate
    assert seg.area() == 0 and seg.diameter() == 1
    pt = ConvexPolygon.hull([2 + 1j, 2 + 1j])
    assert len(pt) == 1 and pt.perimeter() == 0
    with pytest.raises(ValueError):
        ConvexPolygon([])


def test_square_metrics():
    sq = ConvexPolygon.hull([0, 1, 1 + 1j, 1j, 0.5 + 0.5j])
    assert len(sq) == 4
    assert sq.area() == pytest.approx(1)
    assert sq.perimeter() == pytest.approx(4)
    assert sq.diameter() == pytest.approx(np.sqrt(2))
    assert sq.distance(2 + 0.5j) == pytest.approx(1)
    assert sq.distance(0.3 + 0.3j) == 0
    assert sq.origin_clearance() == 0
    assert sq.signed_clearance([0.5 + 0.5j])[0] == pytest.approx(0.5)
    h = sq.support(4)
    assert h == pytest.approx([1, 1, 0, 0])
    assert sq.width_across(1) == pytest.approx(1)


def test_boundary_samples_on_boundary():
    sq = ConvexPolygon.hull([0, 2, 2 + 2j, 2j])
    s = sq.boundary_samples(64)
    assert len(s) == 64
    assert np.abs(sq.signed_clearance(s)).max() < 1e-12


def test_imaginary_axis_reach():
    tri = ConvexPolygon.hull([-1, 1 + 3j, 1 - 1j])
    # the axis crosses the triangle from -0.5i to 1.5i; reach is the larger |Im|
    assert tri.imaginary_axis_reach() == pytest.approx(1.5)
    assert ConvexPolygon.hull([1, 2, 2 + 1j]).imaginary_axis_reach() == -1


def test_hausdorff_convex():
    a = ConvexPolygon.hull([0, 1, 1j, 1 + 1j])
    b = a.scaled(2)
    assert hausdorff_convex(a, b) == pytest.approx(np.sqrt(2), rel=1e-5)
    assert polygon_within(a, b, 0)
    assert not polygon_within(b, a, 0.5)
