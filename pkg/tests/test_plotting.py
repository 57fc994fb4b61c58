import numpy as np
import pytest

from kellipse.curve import degenerate_polynomial
from kellipse.dual import polar_boundary
from kellipse.lmi import EllipseConfig, distance_sum
from kellipse.plotting import auto_window, pencil_det_grid, plot_curve, plot_dual

TRI = EllipseConfig(((0, 0), (1, 0), (0, 1)), 3)


def test_auto_window_contains_curve():
    x0, y0, x1, y1 = auto_window(TRI)
    assert x1 - x0 == pytest.approx(y1 - y0)
    for p in [(x0, y0), (x1, y1), (x0, y1), (x1, y0)]:
        assert distance_sum(TRI, p) > 3


def test_det_grid_sign_matches_membership():
    X, Y, D = pencil_det_grid(TRI, (-1, -1, 2, 2), 21)
    inside = distance_sum(TRI, np.stack([X, Y], -1)) < 3
    # all eight eigenvalues are positive inside, so the determinant is too
    assert np.all(D[inside] > 0)


def test_plot_curve_svg(tmp_path):
    out = tmp_path / "c.svg"
    deg = degenerate_polynomial(TRI.subset((0, 1), radius=0)).affine
    info = plot_curve(TRI, str(out), res=60, partition=(0, 1), degenerate=deg, singular_points=[(0.5, 3.958)])
    text = out.read_text()
    assert text.startswith("<?xml") and "<svg" in text
    assert info["curve_in_window"] and info["real_singular_points_shown"] == 1
    assert set(info["overlays"]) == {"complement ellipse", "degenerate curve"}


def test_plot_is_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    plot_curve(TRI, str(a), res=40)
    plot_curve(TRI, str(b), res=40)
    assert a.read_bytes() == b.read_bytes()


def test_plot_rejects_bad_input(tmp_path):
    with pytest.raises(ValueError):
        plot_curve(TRI, str(tmp_path / "x.svg"), res=8)
    with pytest.raises(ValueError):
        plot_curve(TRI, str(tmp_path / "x.svg"), window=(1, 0, 0, 1))


def test_plot_dual(tmp_path):
    out = tmp_path / "d.svg"
    info = plot_dual(polar_boundary(TRI, 60), str(out), "t")
    assert info["n_samples"] == 60 and out.stat().st_size > 1000
