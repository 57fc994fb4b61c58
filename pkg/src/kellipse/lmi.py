"""The 2^k x 2^k matrix pencil of a k-ellipse and convex-geometry oracles on it.

The pencil is ``L(x, y) = x*A + y*B + C`` where ``C = r*I`` plus the tensor
sum of the constant 2x2 blocks ``[[-u, -v], [-v, u]]``. Its eigenvalues are
``r + sum(eps_i * d_i)`` over all sign vectors, so its determinant vanishes on
the k-ellipse and its smallest eigenvalue is ``r - sum(d_i)``.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import EmptyInteriorError, OracleMismatchError

__all__ = [
    "EllipseConfig",
    "MatrixPencil",
    "MembershipVerdict",
    "tensor_sum",
    "build_pencil",
    "lambda_min",
    "membership",
    "support_function",
    "support_function_batch",
    "boundary_points",
    "distance_sum",
    "random_generic_config",
    "parse_foci",
]


def _q(v) -> Fraction:
    if isinstance(v, float):
        # exact binary value of the float would be surprising; go via repr
        return Fraction(repr(v))
    return Fraction(v)


@dataclass(frozen=True)
class EllipseConfig:
    """Foci ``(u_i, v_i)`` and radius ``r``, all exact rationals."""

    foci: tuple[tuple[Fraction, Fraction], ...]
    radius: Fraction

    def __post_init__(self):
        foci = tuple((_q(u), _q(v)) for u, v in self.foci)
        object.__setattr__(self, "foci", foci)
        object.__setattr__(self, "radius", _q(self.radius))
        if not foci:
            raise ValueError("need at least one focus")
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    @property
    def k(self) -> int:
        return len(self.foci)

    def subset(self, indices: Sequence[int], radius=None) -> "EllipseConfig":
        r = self.radius if radius is None else radius
        return EllipseConfig(tuple(self.foci[i] for i in indices), r)

    def with_radius(self, radius) -> "EllipseConfig":
        return EllipseConfig(self.foci, radius)

    def translated(self, dx, dy) -> "EllipseConfig":
        dx, dy = _q(dx), _q(dy)
        return EllipseConfig(tuple((u + dx, v + dy) for u, v in self.foci), self.radius)

    def scaled(self, s) -> "EllipseConfig":
        s = _q(s)
        return EllipseConfig(tuple((u * s, v * s) for u, v in self.foci), self.radius * s)

    def centroid(self) -> tuple[Fraction, Fraction]:
        k = self.k
        return (sum(u for u, _ in self.foci) / k, sum(v for _, v in self.foci) / k)

    def foci_array(self) -> np.ndarray:
        return np.array([[float(u), float(v)] for u, v in self.foci])

    def genericity_issues(self) -> list[str]:
        """Cheap necessary conditions for genericity (not a certificate)."""
        issues = []
        if len(set(self.foci)) < self.k:
            issues.append("coincident foci")
        for a, b, c in combinations(self.foci, 3):
            if (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0]):
                issues.append("collinear foci " + ", ".join(f"({u}, {v})" for u, v in (a, b, c)))
        if self.radius == 0:
            issues.append("zero radius (degenerate ellipse)")
        return issues

    def to_json(self) -> dict:
        return {
            "foci": [[str(u), str(v)] for u, v in self.foci],
            "radius": str(self.radius),
        }


def parse_foci(text: str) -> tuple[tuple[Fraction, Fraction], ...]:
    """Parse ``"u1,v1;u2,v2;..."``; entries may be integers, decimals or ``a/b``."""
    foci = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 2:
            raise ValueError(f"focus {chunk!r} must have exactly two coordinates")
        foci.append((Fraction(parts[0]), Fraction(parts[1])))
    if not foci:
        raise ValueError("no foci given")
    return tuple(foci)


def random_generic_config(k: int, seed: int, max_den: int = 4, span: int = 6) -> EllipseConfig:
    """Seeded random foci with small-denominator rational coordinates.

    Rejects coincident or collinear foci; the radius is an integer plus a
    quarter-step above the distance sum from the centroid, so the interior
    is nonempty and contains the centroid.
    """
    rng = random.Random(seed)
    while True:
        foci = tuple(
            (
                Fraction(rng.randint(-span * max_den, span * max_den), rng.randint(1, max_den)),
                Fraction(rng.randint(-span * max_den, span * max_den), rng.randint(1, max_den)),
            )
            for _ in range(k)
        )
        probe = EllipseConfig(foci, 1)
        if not probe.genericity_issues():
            break
    cx, cy = probe.centroid()
    base = sum(math.hypot(float(u - cx), float(v - cy)) for u, v in foci)
    radius = Fraction(math.ceil(base) + rng.randint(1, 3)) + Fraction(rng.randint(0, 3), 4)
    return EllipseConfig(foci, radius)


# -- matrices ------------------------------------------------------------------


def _identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _kron(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    m, n = len(a), len(b)
    return [[a[i // n][j // n] * b[i % n][j % n] for j in range(m * n)] for i in range(m * n)]


def _madd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def tensor_sum(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """``A (+) B = A (x) I_n + I_m (x) B`` for square matrices (exact entries kept exact)."""
    m, n = len(a), len(b)
    if any(len(r) != m for r in a) or any(len(r) != n for r in b):
        raise ValueError("tensor_sum needs square matrices")
    return _madd(_kron(a, _identity(n)), _kron(_identity(m), b))


@dataclass(frozen=True)
class MatrixPencil:
    """Symmetric affine pencil ``x*A + y*B + C`` with rational entries."""

    A: tuple[tuple[Fraction, ...], ...]
    B: tuple[tuple[Fraction, ...], ...]
    C: tuple[tuple[Fraction, ...], ...]
    _arrays: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.A)

    def at(self, x, y) -> list[list]:
        """Exact matrix at a point with exact coordinates."""
        return [
            [x * a + y * b + c for a, b, c in zip(ra, rb, rc)]
            for ra, rb, rc in zip(self.A, self.B, self.C)
        ]

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if "f" not in self._arrays:
            self._arrays["f"] = tuple(
                np.array([[float(v) for v in row] for row in M]) for M in (self.A, self.B, self.C)
            )
        return self._arrays["f"]

    def numeric(self, x: float, y: float) -> np.ndarray:
        A, B, C = self.arrays()
        return x * A + y * B + C

    def is_symmetric(self) -> bool:
        return all(
            M[i][j] == M[j][i] for M in (self.A, self.B, self.C) for i in range(self.n) for j in range(i)
        )

    def to_json(self) -> str:
        def enc(M):
            return [[str(v) for v in row] for row in M]

        return json.dumps({"n": self.n, "A": enc(self.A), "B": enc(self.B), "C": enc(self.C)})


def build_pencil(cfg: EllipseConfig) -> MatrixPencil:
    """Pencil whose determinant is the k-ellipse polynomial."""
    one, zero = Fraction(1), Fraction(0)
    ex = [[one, zero], [zero, -one]]
    ey = [[zero, one], [one, zero]]
    A = B = C = None
    for u, v in cfg.foci:
        cu = [[-u, -v], [-v, u]]
        if A is None:
            A, B, C = ex, ey, cu
        else:
            A, B, C = tensor_sum(A, ex), tensor_sum(B, ey), tensor_sum(C, cu)
    n = len(A)
    C = [[c + (cfg.radius if i == j else 0) for j, c in enumerate(row)] for i, row in enumerate(C)]

    def freeze(M):
        return tuple(tuple(Fraction(v) for v in row) for row in M)

    return MatrixPencil(freeze(A), freeze(B), freeze(C))


# -- numerical oracles ---------------------------------------------------------


def lambda_min(pencil: MatrixPencil, point) -> float:
    """Smallest eigenvalue of the pencil at ``point`` (dense symmetric solver)."""
    x, y = float(point[0]), float(point[1])
    return float(np.linalg.eigvalsh(pencil.numeric(x, y))[0])


def distance_sum(cfg: EllipseConfig, points) -> np.ndarray:
    """Sum of Euclidean distances to the foci, vectorised over ``(..., 2)`` arrays."""
    pts = np.asarray(points, dtype=float)
    f = cfg.foci_array()
    d = np.hypot(pts[..., None, 0] - f[:, 0], pts[..., None, 1] - f[:, 1])
    return d.sum(axis=-1)


@dataclass(frozen=True)
class MembershipVerdict:
    status: str  # "interior" | "boundary" | "exterior"
    lambda_min: float
    distance_sum: float


def membership(
    cfg: EllipseConfig, point, tol: float = 1e-8, pencil: MatrixPencil | None = None
) -> MembershipVerdict:
    """Classify ``point`` against the convex region bounded by the k-ellipse.

    The verdict comes from the sign of the pencil's smallest eigenvalue with
    a boundary band of half-width ``tol`` (scaled by ``1 + r``). The direct
    distance sum is computed alongside; if ``lambda_min`` and
    ``r - distance_sum`` differ by more than ``tol`` (same scale) an
    :class:`OracleMismatchError` is raised.
    """
    pencil = pencil or build_pencil(cfg)
    lam = lambda_min(pencil, point)
    s = float(distance_sum(cfg, point))
    r = float(cfg.radius)
    scale = 1.0 + r + s
    if abs(lam - (r - s)) > tol * scale:
        raise OracleMismatchError(
            f"lambda_min={lam!r} but r - distance_sum={r - s!r} at {tuple(point)}"
        )
    band = tol * (1.0 + r)
    if lam > band:
        status = "interior"
    elif lam < -band:
        status = "exterior"
    else:
        status = "boundary"
    return MembershipVerdict(status, lam, s)


def _slack(cfg: EllipseConfig, pts: np.ndarray, oracle: str, pencil: MatrixPencil | None):
    if oracle == "distance":
        return float(cfg.radius) - distance_sum(cfg, pts)
    A, B, C = (pencil or build_pencil(cfg)).arrays()
    mats = pts[..., 0, None, None] * A + pts[..., 1, None, None] * B + C
    return np.linalg.eigvalsh(mats)[..., 0]


def _interior_point(cfg: EllipseConfig) -> np.ndarray:
    cx, cy = cfg.centroid()
    c = np.array([float(cx), float(cy)])
    if float(cfg.radius) - float(distance_sum(cfg, c)) <= 0:
        raise EmptyInteriorError(
            "the foci centroid is not interior (lambda_min <= 0); the region may be empty "
            "or too thin for ray sampling"
        )
    return c


def boundary_points(
    cfg: EllipseConfig,
    thetas,
    center: np.ndarray | None = None,
    tol: float = 1e-12,
    oracle: str = "distance",
    pencil: MatrixPencil | None = None,
) -> np.ndarray:
    """Boundary points along rays ``center + t*(cos th, sin th)``, found by bisection on ``t``.

    ``oracle="distance"`` uses ``r - sum(d_i)`` as the slack, ``"pencil"``
    uses ``lambda_min`` of the pencil; the two coincide (checked in the test
    suite), the first is much cheaper.
    """
    c = _interior_point(cfg) if center is None else np.asarray(center, dtype=float)
    th = np.asarray(thetas, dtype=float)
    dirs = np.stack([np.cos(th), np.sin(th)], axis=-1)
    far = float(cfg.radius) + float(np.max(np.hypot(*(cfg.foci_array() - c).T))) + 1.0
    lo = np.zeros(th.shape)
    hi = np.full(th.shape, far)
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        inside = _slack(cfg, c + mid[..., None] * dirs, oracle, pencil) >= 0
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
        if np.all(hi - lo <= tol * np.maximum(1.0, hi)):
            break
    t = 0.5 * (lo + hi)
    return c + t[..., None] * dirs


def support_function_batch(
    cfg: EllipseConfig,
    directions: np.ndarray,
    tol: float = 1e-12,
    n_coarse: int = 720,
    oracle: str = "distance",
) -> tuple[np.ndarray, np.ndarray]:
    """Support values and maximisers for many unit directions at once.

    A coarse fan of boundary points (rays from the foci centroid) brackets
    each maximiser; golden-section search on the ray angle then refines
    ``direction . boundary(angle)`` within the bracketing arc.
    """
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    c = _interior_point(cfg)
    pencil = build_pencil(cfg) if oracle == "pencil" else None
    coarse_th = np.linspace(0.0, 2 * np.pi, n_coarse, endpoint=False)
    coarse = boundary_points(cfg, coarse_th, c, tol, oracle, pencil)
    best = np.argmax(dirs @ coarse.T, axis=1)
    step = 2 * np.pi / n_coarse
    a = coarse_th[best] - step
    b = coarse_th[best] + step
    invphi = (math.sqrt(5) - 1) / 2

    def value(th):
        pts = boundary_points(cfg, th, c, tol, oracle, pencil)
        return np.einsum("ij,ij->i", dirs, pts), pts

    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, _ = value(x1)
    f2, _ = value(x2)
    while np.max(b - a) > 1e-10:
        left = f1 > f2
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
        nx1 = np.where(left, b - invphi * (b - a), x2)
        nx2 = np.where(left, x1, a + invphi * (b - a))
        new_th = np.where(left, nx1, nx2)
        fn, _ = value(new_th)
        f1, f2 = np.where(left, fn, f2), np.where(left, f1, fn)
        x1, x2 = nx1, nx2
    th = 0.5 * (a + b)
    h, pts = value(th)
    coarse_best = np.einsum("ij,ij->i", dirs, coarse[best])
    # never report less than a sampled value
    use_coarse = coarse_best > h
    h = np.where(use_coarse, coarse_best, h)
    pts = np.where(use_coarse[:, None], coarse[best], pts)
    return h, pts


def support_function(
    cfg: EllipseConfig, direction, tol: float = 1e-12, oracle: str = "distance"
) -> tuple[float, tuple[float, float]]:
    """``h(u) = max{u . p : p in region}`` and a maximiser, for one direction."""
    u = np.asarray(direction, dtype=float)
    norm = np.hypot(*u)
    if not np.isclose(norm, 1.0):
        raise ValueError("direction must be a unit vector")
    h, pts = support_function_batch(cfg, u[None, :], tol, oracle=oracle)
    return float(h[0]), (float(pts[0, 0]), float(pts[0, 1]))
