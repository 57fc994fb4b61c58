"""SVG figures: the real k-ellipse with overlays, and the sampled dual curve."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.lines import Line2D  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from .dual import PolarBoundary  # noqa: E402
from .exactalg import MultiPoly  # noqa: E402
from .lmi import EllipseConfig, build_pencil  # noqa: E402

__all__ = ["auto_window", "pencil_det_grid", "plot_curve", "plot_dual"]

_RC = {
    "svg.hashsalt": "kellipse",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.linewidth": 0.6,
    "lines.linewidth": 1.0,
}


def auto_window(cfg: EllipseConfig, margin: float = 0.08) -> tuple[float, float, float, float]:
    """A square window around the foci centroid holding every bounded real branch.

    On a branch ``r = sum(sigma_i d_i)`` with ``s = sum(sigma_i) != 0`` the
    triangle inequality gives ``|p - c| <= r + sum |f_i - c|``. Only even k
    has branches with ``s = 0``, which may run off to infinity.
    """
    f = cfg.foci_array()
    c = f.mean(axis=0)
    R = float(cfg.radius) + float(np.hypot(*(f - c).T).sum())
    half = R * (1 + margin) + 1e-9
    return (float(c[0] - half), float(c[1] - half), float(c[0] + half), float(c[1] + half))


def pencil_det_grid(cfg: EllipseConfig, window, res: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``det L(x, y)`` on a ``res x res`` grid, by batched LU in floating point.

    Values are returned as ``sign * log1p(|det|)`` so the zero level is kept
    while the dynamic range stays manageable.
    """
    x0, y0, x1, y1 = window
    xs = np.linspace(x0, x1, res)
    ys = np.linspace(y0, y1, res)
    X, Y = np.meshgrid(xs, ys)
    A, B, C = build_pencil(cfg).arrays()
    out = np.empty_like(X)
    for i in range(res):
        mats = X[i, :, None, None] * A + Y[i, :, None, None] * B + C
        sign, logdet = np.linalg.slogdet(mats)
        out[i] = sign * np.log1p(np.exp(np.minimum(logdet, 700.0)))
    return X, Y, out


def _poly_grid(p: MultiPoly, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    Z = np.zeros_like(X)
    for (a, b, _), c in p.terms.items():
        Z += float(c.re) * X**a * Y**b
    return Z


def _finish(fig, out_path: str) -> None:
    fig.savefig(out_path, format="svg", metadata={"Date": None, "Creator": "kellipse"})
    plt.close(fig)


def plot_curve(
    cfg: EllipseConfig,
    out_path: str,
    window: Sequence[float] | None = None,
    res: int = 300,
    partition: Sequence[int] | None = None,
    degenerate: MultiPoly | None = None,
    singular_points: Sequence[tuple[float, float]] = (),
) -> dict:
    """Render the real zero set of ``det L_k`` and optional overlays to an SVG file.

    ``partition`` (0-based focus indices) draws the complementary ellipse;
    ``degenerate`` is the exact polynomial of the degenerate J-ellipse.
    Returns a small summary for the caller's JSON.
    """
    if res < 16:
        raise ValueError("resolution must be at least 16")
    window = tuple(window) if window is not None else auto_window(cfg)
    x0, y0, x1, y1 = window
    if not (x1 > x0 and y1 > y0):
        raise ValueError("window must satisfy x0 < x1 and y0 < y1")
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 5))
        X, Y, D = pencil_det_grid(cfg, window, res)
        has_curve = bool(np.nanmin(D) < 0 < np.nanmax(D))
        if has_curve:
            ax.contour(X, Y, D, levels=[0.0], colors="k", linewidths=1.0)
        labels = []
        handles = [Line2D([], [], color="k", lw=1.0, label="det L = 0")] if has_curve else []
        if partition is not None:
            comp = [i for i in range(cfg.k) if i not in partition]
            if comp:
                _, _, H = pencil_det_grid(cfg.subset(comp), window, res)
                if np.nanmin(H) < 0 < np.nanmax(H):
                    ax.contour(X, Y, H, levels=[0.0], colors="tab:blue", linewidths=0.8, linestyles="--")
                    labels.append("complement ellipse")
                    handles.append(Line2D([], [], color="tab:blue", lw=0.8, ls="--", label="complement ellipse"))
            if degenerate is not None:
                G = _poly_grid(degenerate, X, Y)
                if np.nanmin(G) < 0 < np.nanmax(G):
                    ax.contour(X, Y, G, levels=[0.0], colors="tab:red", linewidths=0.8, linestyles=":")
                    labels.append("degenerate curve")
                    handles.append(Line2D([], [], color="tab:red", lw=0.8, ls=":", label="degenerate curve"))
        f = cfg.foci_array()
        handles += ax.plot(f[:, 0], f[:, 1], "o", ms=3, color="tab:gray", label="foci")
        pts = [p for p in singular_points if x0 <= p[0] <= x1 and y0 <= p[1] <= y1]
        if pts:
            P = np.array(pts)
            handles += ax.plot(P[:, 0], P[:, 1], "x", ms=5, color="tab:red", label="real singular points")
        ax.set_xlim(x0, x1)
        ax.set_ylim(y0, y1)
        ax.set_aspect("equal")
        ax.set_title(f"{cfg.k}-ellipse, r = {cfg.radius}")
        ax.legend(handles=handles, loc="upper right", fontsize=7, frameon=False)
        _finish(fig, out_path)
    return {
        "svg": out_path,
        "window": list(window),
        "res": res,
        "curve_in_window": has_curve,
        "real_singular_points_shown": len(pts),
        "overlays": labels,
    }


def plot_dual(boundary: PolarBoundary, out_path: str, title: str = "") -> dict:
    """Dual polyline (closed) next to the primal boundary samples."""
    W = boundary.dual_points()
    Xp = boundary.primal_points()
    with plt.rc_context(_RC):
        fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(8, 4))
        ax0.add_patch(Polygon(Xp, closed=True, fill=False, ec="k", lw=1.0))
        ax0.plot(0, 0, "+", color="tab:gray")
        ax0.autoscale_view()
        ax0.set_aspect("equal")
        ax0.set_title("region boundary")
        ax1.add_patch(Polygon(W, closed=True, fill=False, ec="tab:blue", lw=1.0))
        ax1.plot(0, 0, "+", color="tab:gray")
        ax1.autoscale_view()
        ax1.set_aspect("equal")
        ax1.set_title("polar boundary (dual curve)")
        if title:
            fig.suptitle(title)
        _finish(fig, out_path)
    return {"svg": out_path, "n_samples": len(W)}
