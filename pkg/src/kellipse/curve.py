"""Exact defining polynomials of k-ellipses and their degenerate (r = 0) versions."""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import BranchPointError, InterpolationError, NonGenericError, NotPerfectSquareError, ResourceGuardError
from .exactalg import MultiPoly, homogenize, interpolate, poly_sqrt
from .exactalg.linalg import _bareiss_int
from .lmi import EllipseConfig, MatrixPencil, build_pencil

__all__ = [
    "CurvePoly",
    "DegreeCheck",
    "expected_degree",
    "ellipse_polynomial",
    "pencil_determinant",
    "degenerate_polynomial",
    "degree_check",
    "product_oracle",
    "worker_count",
]

DEFAULT_MAX_K = 6


def worker_count(workers: int | None = None) -> int:
    """Explicit value, else ``$KELLIPSE_WORKERS``, else 1."""
    if workers is not None:
        return max(1, int(workers))
    return max(1, int(os.environ.get("KELLIPSE_WORKERS", "1")))


def expected_degree(k: int) -> int:
    """Degree of a generic k-ellipse: 2^k for odd k, 2^k - C(k, k/2) for even k."""
    if k % 2:
        return 2**k
    return 2**k - math.comb(k, k // 2)


@dataclass(frozen=True)
class CurvePoly:
    affine: MultiPoly
    projective: MultiPoly
    degree: int
    config: EllipseConfig
    degenerate: bool = False  # True for the square root of det L_k at r = 0

    @property
    def k(self) -> int:
        return self.config.k


class _IntegerPencil:
    """Exact ``det L_k`` at integer points through a half-size matrix.

    Ordering the tensor sum with the last focus outermost gives
    ``L_k = [[L' + aI, bI], [bI, L' - aI]]`` where ``L'`` is the pencil of the
    other foci (radius included) and ``[[a, b], [b, -a]]`` the last block.
    The blocks commute, so ``det L_k = det(L'^2 - d_k^2 I)`` with
    ``d_k^2 = (x - u_k)^2 + (y - v_k)^2``. Entries are scaled by the common
    denominator ``den`` so the whole computation stays in integers.
    """

    def __init__(self, cfg: EllipseConfig):
        den = cfg.radius.denominator
        for u, v in cfg.foci:
            den = math.lcm(den, u.denominator, v.denominator)
        self.den = den
        self.k = cfg.k
        sub = build_pencil(cfg.subset(range(cfg.k - 1))) if cfg.k > 1 else None
        if sub is None:
            self.A = self.B = self.C = [[0]]
            self.C = [[int(cfg.radius * den)]]
        else:
            self.A = [[int(v * den) for v in row] for row in sub.A]
            self.B = [[int(v * den) for v in row] for row in sub.B]
            self.C = [[int(v * den) for v in row] for row in sub.C]
        u, v = cfg.foci[-1]
        self.u, self.v = int(u * den), int(v * den)

    def det(self, x: int, y: int) -> Fraction:
        P = [
            [x * a + y * b + c for a, b, c in zip(ra, rb, rc)]
            for ra, rb, rc in zip(self.A, self.B, self.C)
        ]
        s = (x * self.den - self.u) ** 2 + (y * self.den - self.v) ** 2
        n = len(P)
        N = [[0] * n for _ in range(n)]
        for i in range(n):
            ri = P[i]
            for j in range(i, n):
                # P is symmetric, so row j doubles as column j
                t = sum(p * q for p, q in zip(ri, P[j]))
                N[i][j] = N[j][i] = t
            N[i][i] -= s
        if self.k == 1:
            # a single focus: L' is the scalar r and the formula reads r^2 - d^2
            return Fraction(N[0][0], self.den**2)
        return Fraction(_bareiss_int(N), self.den ** (2 * n))


def _det_row(args):
    ipencil, x, ys = args
    return [ipencil.det(x, y) for y in ys]


def pencil_determinant(pencil: MatrixPencil, x, y) -> Fraction:
    """Exact ``det(x*A + y*B + C)`` at a rational point."""
    from .exactalg import rational_det

    return rational_det(pencil.at(Fraction(x), Fraction(y)))


def ellipse_polynomial(
    cfg: EllipseConfig, max_k: int = DEFAULT_MAX_K, workers: int | None = None
) -> CurvePoly:
    """Exact ``det L_k(x, y)`` and its homogenisation.

    The determinant is evaluated by integer Bareiss elimination on the grid
    ``{0..D} x {0..D}`` (``D = 2^k``) and interpolated; a held-out point
    off the grid is checked against a direct determinant. The affine
    polynomial is the determinant itself (no rescaling).
    """
    k = cfg.k
    if k > max_k:
        raise ResourceGuardError(f"k={k} exceeds the resource guard max_k={max_k}")
    pencil = build_pencil(cfg)
    ipencil = _IntegerPencil(cfg)
    D = 2**k
    xs = list(range(D + 1))
    ys = list(range(D + 1))
    jobs = [(ipencil, x, ys) for x in xs]
    nw = worker_count(workers)
    if nw > 1:
        with ProcessPoolExecutor(max_workers=nw) as pool:
            rows = list(pool.map(_det_row, jobs))
    else:
        rows = [_det_row(j) for j in jobs]
    samples = [((x, y), rows[i][j]) for i, x in enumerate(xs) for j, y in enumerate(ys)]
    affine = interpolate(samples, D, ("x", "y"))
    for hx, hy in ((-1, D + 1), (D + 2, -3)):
        # held-out check against the full-size determinant, an independent route
        if affine.evaluate((hx, hy, 1)) != pencil_determinant(pencil, hx, hy):
            raise InterpolationError(f"interpolated determinant disagrees at held-out point ({hx}, {hy})")
    if affine.is_zero():
        raise NonGenericError("determinant vanishes identically")
    projective = homogenize(affine)
    return CurvePoly(affine, projective, int(affine.degree()), cfg)


def degenerate_polynomial(cfg: EllipseConfig, max_k: int = DEFAULT_MAX_K, workers: int | None = None) -> CurvePoly:
    """Irreducible polynomial of the degenerate (r = 0) k-ellipse: the square root of ``det L_k``.

    The result is normalised to a primitive integer polynomial with positive
    grlex leading coefficient.
    """
    if cfg.radius != 0:
        raise ValueError("degenerate_polynomial requires radius 0")
    if cfg.k < 2:
        raise ValueError("a degenerate k-ellipse needs k >= 2")
    full = ellipse_polynomial(cfg, max_k=max_k, workers=workers)
    try:
        root = poly_sqrt(full.affine)
    except NotPerfectSquareError as exc:
        raise NonGenericError("configuration not degenerate-consistent: det L_k(r=0) is not a square") from exc
    root = root.primitive()
    return CurvePoly(root, homogenize(root), int(root.degree()), cfg, degenerate=True)


@dataclass(frozen=True)
class DegreeCheck:
    k: int
    computed: int
    expected: int
    matches: bool
    note: str = ""


def degree_check(cp: CurvePoly) -> DegreeCheck:
    """Compare the computed degree with the generic-degree formula (halved for degenerate curves)."""
    exp = expected_degree(cp.k)
    if cp.degenerate:
        exp //= 2
    ok = cp.degree == exp
    note = "" if ok else "degree differs from the generic formula: configuration is not generic"
    return DegreeCheck(cp.k, cp.degree, exp, ok, note)


def product_oracle(cfg: EllipseConfig, point, raw: bool = False) -> complex:
    """Product of ``r z - sum(sigma_i * d_i)`` over all sign vectors, in complex floating point.

    ``d_i = sqrt((x - u_i z)^2 + (y - v_i z)^2)`` on the principal branch;
    the full product does not depend on the branch. For even k the result is
    divided by ``z^C(k, k/2)`` unless ``raw`` is set.
    """
    if len(point) == 2:
        x, y, z = complex(point[0]), complex(point[1]), 1.0 + 0j
    else:
        x, y, z = (complex(c) for c in point)
    r = float(cfg.radius)
    ds = []
    for u, v in cfg.foci:
        sq = (x - float(u) * z) ** 2 + (y - float(v) * z) ** 2
        scale = abs(x) ** 2 + abs(y) ** 2 + abs(z) ** 2 * (float(u) ** 2 + float(v) ** 2)
        if abs(sq) <= 1e-14 * max(scale, 1e-300):
            raise BranchPointError("branch point: the point lies on a focal circle d_i = 0")
        ds.append(cmath.sqrt(sq))
    total = 1 + 0j
    for sigma in product((1, -1), repeat=cfg.k):
        total *= r * z - sum(s * d for s, d in zip(sigma, ds))
    k = cfg.k
    if k % 2 == 0 and not raw:
        total /= z ** math.comb(k, k // 2)
    return total
