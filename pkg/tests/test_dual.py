from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kellipse.dual import (
    bipolar_samples,
    bipolar_vertices,
    convexity_check,
    dual_inequality_check,
    polar_boundary,
    polyline_hausdorff,
    tangency_check,
)
from kellipse.errors import OriginNotInteriorError
from kellipse.lmi import EllipseConfig, boundary_points

TRI = EllipseConfig(((0, 0), (1, 0), (0, 1)), 3)


def test_disk_dual_is_circle():
    pb = polar_boundary(EllipseConfig(((0, 0),), 2), 180)
    r = np.hypot(*pb.dual_points().T)
    assert np.max(np.abs(r - 0.5)) <= 1e-6


def test_k3_polar_properties():
    pb = polar_boundary(TRI, 360)
    ring = boundary_points(TRI, np.linspace(0, 2 * np.pi, 3000))
    assert dual_inequality_check(pb, ring) <= 1e-6
    assert convexity_check(pb.dual_points())
    assert tangency_check(TRI, pb) < 1e-4


def test_origin_must_be_interior():
    far = TRI.translated(5, 5)
    with pytest.raises(OriginNotInteriorError):
        polar_boundary(far)
    pb = polar_boundary(far, 90, recenter=True)
    assert pb.shift == (Fraction(-16, 3), Fraction(-16, 3))
    assert tangency_check(far, pb) < 1e-4


def test_bipolar_recovers_region():
    pb = polar_boundary(TRI, 720)
    primal = pb.primal_points()
    assert polyline_hausdorff(bipolar_vertices(pb), primal) <= 1e-4
    assert polyline_hausdorff(bipolar_samples(pb), primal) <= 1e-4


@settings(max_examples=20, deadline=None)
@given(st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8))
def test_scale_covariance(s):
    # scaling the region by s scales the polar by 1/s
    base = polar_boundary(TRI, 48).dual_points()
    scaled = polar_boundary(TRI.scaled(s), 48).dual_points()
    assert np.allclose(scaled * float(s), base, atol=1e-8)


def test_convexity_check_rejects_dent():
    sq = np.array([[0, 0], [1, 0], [0.5, 0.2], [1, 1], [0, 1]], dtype=float)
    assert not convexity_check(sq)
    assert convexity_check(sq[[0, 1, 3, 4]])


def test_hausdorff_basic():
    a = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    assert polyline_hausdorff(a, a + [0.1, 0]) == pytest.approx(0.1)


def test_few_samples():
    with pytest.raises(ValueError):
        polar_boundary(TRI, 2)
    assert convexity_check(polar_boundary(TRI, 4).dual_points())
