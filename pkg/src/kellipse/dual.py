"""Sampling the dual curve through the polar of the convex region bounded by a k-ellipse.

For a unit direction ``u`` with support value ``h(u)``, the point ``u / h(u)``
lies on the boundary of the polar set ``{w : w.x <= 1 for all x in E}``,
which is a piece of the dual curve in the chart ``z = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import OriginNotInteriorError
from .lmi import EllipseConfig, build_pencil, distance_sum, support_function_batch

__all__ = [
    "PolarSample",
    "PolarBoundary",
    "polar_boundary",
    "dual_inequality_check",
    "convexity_check",
    "tangency_check",
    "bipolar_vertices",
    "bipolar_samples",
    "polyline_hausdorff",
]


@dataclass(frozen=True)
class PolarSample:
    theta: float
    h: float
    x: float
    y: float
    w1: float
    w2: float

    @property
    def primal(self) -> np.ndarray:
        return np.array([self.x, self.y])

    @property
    def dual(self) -> np.ndarray:
        return np.array([self.w1, self.w2])

    def as_row(self) -> tuple[float, ...]:
        return (self.theta, self.h, self.x, self.y, self.w1, self.w2)


@dataclass(frozen=True)
class PolarBoundary:
    """Samples ordered by angle; ``shift`` is the translation applied to the foci first."""

    samples: tuple[PolarSample, ...]
    shift: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def dual_points(self) -> np.ndarray:
        return np.array([[s.w1, s.w2] for s in self.samples])

    def primal_points(self) -> np.ndarray:
        return np.array([[s.x, s.y] for s in self.samples])


def polar_boundary(
    cfg: EllipseConfig, n_samples: int = 360, tol: float = 1e-6, recenter: bool = False
) -> PolarBoundary:
    """Sample the polar boundary at ``n_samples`` equally spaced directions.

    The origin must be interior (``r > sum |f_i|``). With ``recenter`` the
    foci are first translated so their centroid sits at the origin, and the
    shift is recorded. Each sample is checked against ``w . x* = 1``.
    """
    if n_samples < 3:
        raise ValueError("need at least 3 samples")
    shift = (Fraction(0), Fraction(0))
    if recenter:
        cx, cy = cfg.centroid()
        shift = (-cx, -cy)
        cfg = cfg.translated(*shift)
    slack = float(cfg.radius) - float(distance_sum(cfg, (0.0, 0.0)))
    if slack <= 0:
        raise OriginNotInteriorError(
            "origin is not interior to the region (lambda_min(L(0,0)) <= 0); "
            "recenter at the foci centroid (recenter=True; the CLI does this unless --no-recenter)"
        )
    theta = 2 * np.pi * np.arange(n_samples) / n_samples
    dirs = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    h, pts = support_function_batch(cfg, dirs)
    w = dirs / h[:, None]
    ident = np.einsum("ij,ij->i", w, pts)
    worst = float(np.max(np.abs(ident - 1)))
    if worst > tol:
        raise ArithmeticError(f"polar-support identity off by {worst:.3e}")
    samples = tuple(
        PolarSample(float(t), float(hv), float(p[0]), float(p[1]), float(q[0]), float(q[1]))
        for t, hv, p, q in zip(theta, h, pts, w)
    )
    return PolarBoundary(samples, shift)


def dual_inequality_check(samples, boundary: np.ndarray) -> float:
    """Largest ``w.x - 1`` over all dual samples ``w`` and primal points ``x``."""
    W = samples.dual_points() if isinstance(samples, PolarBoundary) else np.asarray(
        [s.dual for s in samples] if samples and isinstance(samples[0], PolarSample) else samples, dtype=float
    )
    X = np.asarray(boundary, dtype=float)
    if not len(W) or not len(X):
        raise ValueError("both sample sets must be nonempty")
    return float(np.max(W @ X.T) - 1.0)


def convexity_check(points: np.ndarray, tol: float = 1e-12) -> bool:
    """Whether a closed polygon (vertices in order) is convex: all turns have one sign."""
    P = np.asarray(points, dtype=float)
    e = np.roll(P, -1, axis=0) - P
    cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
    scale = tol * float(np.max(np.abs(cross))) if len(cross) else 0.0
    return bool(np.all(cross >= -scale) or np.all(cross <= scale))


def tangency_check(cfg: EllipseConfig, boundary: PolarBoundary) -> float:
    """Largest angle (radians) between each dual point and the outward normal at its primal point.

    The normal is ``-grad lambda_min``, from the eigenvector formula
    ``d lambda / dx = v^T A v`` on the pencil (translated like the samples).
    """
    cfg = cfg.translated(*boundary.shift)
    A, B, C = build_pencil(cfg).arrays()
    worst = 0.0
    for s in boundary:
        vals, vecs = np.linalg.eigh(s.x * A + s.y * B + C)
        v = vecs[:, 0]
        normal = -np.array([v @ A @ v, v @ B @ v])
        w = s.dual
        cosang = float(normal @ w / (np.linalg.norm(normal) * np.linalg.norm(w)))
        worst = max(worst, float(np.arccos(np.clip(cosang, -1.0, 1.0))))
    return worst


def bipolar_vertices(boundary: PolarBoundary) -> np.ndarray:
    """Vertices of the polar of the sampled dual polygon.

    That polar is the intersection of the half-planes ``w_i . x <= 1``;
    consecutive lines meet at its vertices.
    """
    W = boundary.dual_points()
    Wn = np.roll(W, -1, axis=0)
    det = W[:, 0] * Wn[:, 1] - W[:, 1] * Wn[:, 0]
    return np.stack([(Wn[:, 1] - W[:, 1]) / det, (W[:, 0] - Wn[:, 0]) / det], axis=1)


def bipolar_samples(boundary: PolarBoundary) -> np.ndarray:
    """The sampler applied to the sampled polar: ``u / max_i(u . w_i)`` at each sample direction.

    For a convex body containing the origin this is the radial boundary
    point of the bipolar polygon in direction ``u``.
    """
    W = boundary.dual_points()
    th = np.array([s.theta for s in boundary])
    U = np.stack([np.cos(th), np.sin(th)], axis=1)
    h = np.max(U @ W.T, axis=1)
    return U / h[:, None]


def _point_to_polyline(P: np.ndarray, poly: np.ndarray) -> np.ndarray:
    a = poly
    b = np.roll(poly, -1, axis=0)
    ab = b - a
    t = np.einsum("pij,ij->pi", P[:, None, :] - a[None], ab) / np.einsum("ij,ij->i", ab, ab)
    t = np.clip(t, 0.0, 1.0)
    proj = a[None] + t[..., None] * ab[None]
    return np.min(np.linalg.norm(P[:, None, :] - proj, axis=2), axis=1)


def polyline_hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two closed polylines (vertex-to-segment distances)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(max(_point_to_polyline(a, b).max(), _point_to_polyline(b, a).max()))
