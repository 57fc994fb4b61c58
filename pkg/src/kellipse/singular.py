"""Singularities of algebraic k-ellipses.

Two sources:

* the circular points ``[+-i : 1 : 0]``, analysed exactly over Q(i) through
  the initial form of the curve in the chart ``y = 1``;
* affine nodes, found as intersections of a degenerate ``|J|``-ellipse
  (foci ``J``, radius 0) with the ellipse on the complementary foci at the
  full radius, for every subset ``J`` with ``2 <= |J| <= k - 1``.

Affine points are complex and only located numerically (exact resultant,
floating-point roots, mpmath polishing).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import mpmath
import numpy as np

from .curve import CurvePoly, degenerate_polynomial, ellipse_polynomial, expected_degree, worker_count
from .errors import (
    CommonComponentError,
    ConvergenceError,
    HigherMultiplicityError,
    NonGenericError,
    NotPerfectSquareError,
)
from .exactalg import GaussianRational, I, MultiPoly, UniPoly, homogenize, initial_form, poly_sqrt, resultant
from .exactalg.univariate import poly_gcd
from .lmi import EllipseConfig

__all__ = [
    "SingularPoint",
    "PartitionIntersection",
    "CircularPointData",
    "InfinityFactorization",
    "SingularityCheck",
    "circular_multiplicity",
    "circular_point_analysis",
    "infinity_line_factorization",
    "partition_subsets",
    "expected_partition_count",
    "expected_affine_count",
    "intersect_partition",
    "enumerate_affine_singularities",
    "verify_singular",
    "classify_node",
    "gradient_zero_search",
    "build_census",
]

DEDUP_RADIUS = 1e-6
WORK_DPS = 50
CHECK_DPS = 30
# p at the polished critical point, relative to the jet scale
CRITICAL_RTOL = 1e-20
# shears tried in turn until the projected intersection points have distinct x
_SHEARS = (Fraction(0), Fraction(2, 7), Fraction(-3, 11), Fraction(5, 13), Fraction(7, 17))


# -- records -------------------------------------------------------------------


@dataclass(frozen=True)
class SingularPoint:
    """A singular point of the projective curve.

    ``coords`` is exact (GaussianRational) for the circular points and
    complex floating point for affine points; ``precise`` optionally keeps
    mpmath coordinates used for verification.
    """

    coords: tuple
    multiplicity: int
    branches: int
    delta: int
    kind: str
    provenance: str
    precise: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if all(c == 0 for c in self.coords):
            raise ValueError("projective coordinates cannot all vanish")
        if self.kind == "node" and (self.multiplicity, self.branches, self.delta) != (2, 2, 1):
            raise ValueError("a node has m = r = 2 and delta = 1")
        if self.kind == "circular_point" and (
            2 * self.branches != self.multiplicity or self.delta != math.comb(self.multiplicity, 2)
        ):
            raise ValueError("a circular point has r = m/2 and delta = C(m, 2)")

    @property
    def is_affine(self) -> bool:
        return complex(self.coords[2]) != 0

    def to_json(self) -> dict:
        return {
            "coords": [[complex(c).real, complex(c).imag] for c in self.coords],
            "m": self.multiplicity,
            "r": self.branches,
            "delta": self.delta,
            "kind": self.kind,
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class CircularPointData:
    point: SingularPoint
    tangent_cone: MultiPoly
    cone_root: MultiPoly
    perfect_square: bool
    distinct_tangents: bool

    def to_json(self) -> dict:
        out = self.point.to_json()
        out.update(
            tangent_cone=self.tangent_cone.to_text(),
            cone_root=self.cone_root.to_text(),
            perfect_square=self.perfect_square,
            distinct_tangents=self.distinct_tangents,
        )
        return out


@dataclass(frozen=True)
class InfinityFactorization:
    """``p(x, y, 0) = c * (x^2 + y^2)^power * cofactor``."""

    power: int
    cofactor_degree: int
    matches_prediction: bool
    other_points_smooth: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "power": self.power,
            "cofactor_degree": self.cofactor_degree,
            "matches_prediction": self.matches_prediction,
            "other_points_smooth": self.other_points_smooth,
            "note": self.note,
        }


@dataclass(frozen=True)
class PartitionIntersection:
    """Intersections of the degenerate J-ellipse with the complementary ellipse.

    ``subset`` uses 1-based focus indices.
    """

    subset: tuple[int, ...]
    g: MultiPoly
    h: MultiPoly
    points: tuple[tuple[complex, complex], ...]
    expected: int
    bezout: int
    infinity_deficit: int
    shear: Fraction
    precise: tuple = field(default=(), compare=False, repr=False)

    @property
    def count_ok(self) -> bool:
        return len(self.points) == self.expected

    @property
    def bezout_ok(self) -> bool:
        return len(self.points) + self.infinity_deficit == self.bezout

    def label(self) -> str:
        return "J={" + ",".join(str(i) for i in self.subset) + "}"

    def to_json(self) -> dict:
        return {
            "subset": list(self.subset),
            "count": len(self.points),
            "expected": self.expected,
            "bezout": self.bezout,
            "infinity_deficit": self.infinity_deficit,
            "points": [[[p.real, p.imag] for p in pt] for pt in self.points],
        }


@dataclass(frozen=True)
class SingularityCheck:
    """Outcome of :func:`verify_singular`: scaled residuals of p and its partials."""

    passed: bool
    value: float
    gradient: tuple[float, float, float]


# -- counting formulas ------------------------------------------------------------


def circular_multiplicity(k: int) -> int:
    """Multiplicity of a generic k-ellipse at each circular point (1 for a circle, 0 for k = 2)."""
    if k < 1:
        raise ValueError("k must be positive")
    if k % 2:
        return 2 ** (k - 1)
    return 2 ** (k - 1) - math.comb(k, k // 2)


def partition_subsets(k: int) -> list[tuple[int, ...]]:
    """Subsets J of ``range(k)`` with ``2 <= |J| <= k-1``, in colex order."""
    subs = [J for j in range(2, k) for J in combinations(range(k), j)]
    return sorted(subs, key=lambda J: (tuple(reversed(J)), len(J)))


def expected_partition_count(j: int, k: int) -> int:
    """Affine intersections of a degenerate j-ellipse with a (k-j)-ellipse."""
    dj = expected_degree(j) // 2
    mj = circular_multiplicity(j) // 2
    return dj * expected_degree(k - j) - 2 * mj * circular_multiplicity(k - j)


def expected_affine_count(k: int) -> int:
    """Closed-form number of affine nodes of a generic k-ellipse (k >= 3)."""
    if k < 3:
        raise ValueError("affine node count is defined for k >= 3")
    base = 2 ** (2 * k - 2) - (k + 2) * 2 ** (k - 2)
    if k % 2 == 0:
        base -= math.comb(k, k // 2) * (math.comb(k - 1, k // 2) - 1)
    return base


# -- circular points ----------------------------------------------------------------


def circular_point_analysis(cp: CurvePoly, which: int = 1) -> CircularPointData:
    """Exact local analysis at ``[which*i : 1 : 0]``.

    Works in the chart ``y = 1`` with local coordinates ``(x - which*i, z)``.
    The initial form must be a perfect square whose root, a binary form in
    ``(x, z)``, has pairwise distinct linear factors.
    """
    if which not in (1, -1):
        raise ValueError("which must be +1 or -1")
    k = cp.k
    if k < 3:
        raise ValueError("circular points are singular only for k >= 3")
    center = I if which == 1 else -I
    chart = cp.projective.specialize("y", 1)
    cone = initial_form(chart, {"x": center, "z": 0})
    m = int(cone.degree())
    try:
        root = poly_sqrt(cone)
        square = True
    except NotPerfectSquareError:
        raise NonGenericError(f"non-generic configuration: tangent cone at [{center}:1:0] is not a perfect square")
    # distinct tangents: the binary form root(x, z) is squarefree. Setting
    # z = 1 loses at most one factor (the tangent z = 0 direction x = 0).
    uni = root.specialize("z", 1)
    coeffs = [GaussianRational(0)] * (int(uni.degree()) + 1)
    for e, c in uni.terms.items():
        coeffs[e[0]] = c
    u = UniPoly(tuple(coeffs), "x")
    drop = int(root.degree()) - int(u.degree())
    distinct = drop <= 1 and (u.degree() < 1 or poly_gcd(u, u.derivative()).degree() == 0)
    if not distinct:
        raise NonGenericError(f"non-generic configuration: repeated tangents at [{center}:1:0]")
    point = SingularPoint(
        coords=(center, GaussianRational(1), GaussianRational(0)),
        multiplicity=m,
        branches=m // 2,
        delta=math.comb(m, 2),
        kind="circular_point",
        provenance="infinity",
    )
    return CircularPointData(point, cone, root, square, distinct)


def _binary_to_uni(p: MultiPoly) -> UniPoly:
    """Dehomogenise a binary form in (x, y) at y = 1."""
    deg = int(p.degree_in("x"))
    coeffs = [GaussianRational(0)] * (deg + 1)
    for e, c in p.terms.items():
        coeffs[e[0]] = coeffs[e[0]] + c
    return UniPoly(tuple(coeffs), "x")


def infinity_line_factorization(cp: CurvePoly, tol: float = 1e-7) -> InfinityFactorization:
    """Factor ``p(x, y, 0)`` and compare with the predicted product exactly.

    Prediction: ``(x^2+y^2)^m_P`` alone for odd k; for even k times
    ``prod (r^2 (x^2+y^2) - (x*su + y*sv)^2)`` over sign vectors with zero
    sum, one per pair ``{sigma, -sigma}``.
    """
    cfg = cp.config
    k = cfg.k
    top = cp.projective.specialize("z", 0)
    u = _binary_to_uni(top)
    circ = UniPoly((GaussianRational(1), GaussianRational(0), GaussianRational(1)), "x")
    power = 0
    while u.degree() >= 2:
        q, rem = u.divmod(circ)
        if not rem.is_zero():
            break
        u = q
        power += 1
    x, y = MultiPoly.monomial((1, 0, 0), 1, ("x", "y")), MultiPoly.monomial((0, 1, 0), 1, ("x", "y"))
    pred = (x * x + y * y) ** circular_multiplicity(k) if k >= 1 else MultiPoly.constant(1, ("x", "y"))
    quads = []
    if k % 2 == 0:
        r2 = cfg.radius**2
        seen = set()
        for sigma in product((1, -1), repeat=k):
            if sum(sigma) != 0 or tuple(-s for s in sigma) in seen:
                continue
            seen.add(sigma)
            su = sum(s * f[0] for s, f in zip(sigma, cfg.foci))
            sv = sum(s * f[1] for s, f in zip(sigma, cfg.foci))
            lin = x.scale(su) + y.scale(sv)
            quad = (x * x + y * y).scale(r2) - lin * lin
            quads.append(quad)
            pred = pred * quad
    lt_top = top.leading_term()[1]
    lt_pred = pred.leading_term()[1]
    matches = top.scale(lt_pred) == pred.scale(lt_top)
    # a simple root of p(x, y, 0) is a transversal crossing, hence smooth
    smooth = True
    note = ""
    if k % 2 == 0 and u.degree() >= 1 and not u.is_squarefree():
        smooth = False
        note = "repeated point at infinity besides the circular points"
    if not matches:
        note = note or "p(x,y,0) differs from the predicted product"
    return InfinityFactorization(power, int(u.degree()) if not u.is_zero() else 0, matches, smooth, note)


# -- numeric evaluation helpers -------------------------------------------------------


def _scaled_value(p: MultiPoly, P) -> float:
    """``|p(P)| / sum |c_e| |P^e|``: size of p at P relative to its evaluation scale."""
    with mpmath.workdps(WORK_DPS):
        v = abs(p.evaluate(P))
        s = abs(p.abs_poly().evaluate(tuple(abs(c) for c in P)))
        if s == 0:
            return 0.0 if v == 0 else float("inf")
        return float(v / s)


def _scaled_partials(p: MultiPoly, P) -> tuple[float, float, float]:
    return tuple(_scaled_value(p.partial(v), P) for v in ("x", "y", "z"))


def _mp_point(point):
    out = []
    for c in point:
        if isinstance(c, GaussianRational):
            out.append(mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator, mpmath.mpf(c.im.numerator) / c.im.denominator))
        elif isinstance(c, Fraction):
            out.append(mpmath.mpf(c.numerator) / c.denominator)
        else:
            out.append(mpmath.mpmathify(c))
    return tuple(out)


def _norm(vals) -> mpmath.mpf:
    return mpmath.sqrt(sum(abs(v) ** 2 for v in vals))


@dataclass(frozen=True)
class _LocalJet:
    """Sizes of the Taylor parts of a chart polynomial at a point, in units of ``L = 1 + |P|``."""

    value: mpmath.mpf
    gradient: mpmath.mpf
    hessian: tuple
    order2: mpmath.mpf
    order3: mpmath.mpf

    @property
    def reference(self):
        return max(self.order2, self.order3)


def _chart(f: MultiPoly, var: str) -> MultiPoly:
    key = ("chart", var)
    out = f._numeric_cache.get(key)
    if out is None:
        out = f.specialize(var, 1)
        f._numeric_cache[key] = out
    return out


def _local_jet(f: MultiPoly, P) -> _LocalJet:
    """Jet of the projective polynomial ``f`` at ``P`` in the chart of P's largest coordinate.

    Working in that chart keeps the local coordinates bounded, so the
    angle between tangent lines is measured without the distortion the
    affine chart introduces near the line at infinity.
    """
    idx = max(range(3), key=lambda i: abs(P[i]))
    var = ("x", "y", "z")[idx]
    a, b = [v for v in ("x", "y", "z") if v != var]
    q = _chart(f, var)
    loc = {v: P[i] / P[idx] for i, v in enumerate(("x", "y", "z")) if i != idx}
    Q = tuple(loc.get(v, mpmath.mpf(1)) for v in ("x", "y", "z"))
    L = 1 + mpmath.sqrt(abs(loc[a]) ** 2 + abs(loc[b]) ** 2)
    grad = [q.partial(v).evaluate(Q) for v in (a, b)]
    hess = tuple(q.partial(*vs).evaluate(Q) for vs in ((a, a), (a, b), (b, b)))
    third = [q.partial(*vs).evaluate(Q) for vs in ((a, a, a), (a, a, b), (a, b, b), (b, b, b))]
    return _LocalJet(
        value=abs(q.evaluate(Q)),
        gradient=_norm(grad) * L,
        hessian=hess,
        order2=_norm(hess) * L**2 / 2,
        order3=_norm(third) * L**3 / 6,
    )


def _as_projective(point) -> tuple:
    P = tuple(point)
    return (P[0], P[1], 1) if len(P) == 2 else P


def _check_with_jet(cp: CurvePoly, P, tol: float):
    """Singularity test plus local jet; a failure is retried at higher precision.

    Nodes close to a circular point lose many digits to cancellation, so the
    last attempt runs at twice WORK_DPS.
    """
    for dps in (CHECK_DPS, WORK_DPS, 2 * WORK_DPS):
        with mpmath.workdps(dps):
            check, jet = _check_at_precision(cp, P, tol)
        if check.passed:
            break
    return check, jet


def _check_at_precision(cp: CurvePoly, P, tol: float):
    f = cp.projective
    Pm = _mp_point(P)
    value = _scaled_value(f, Pm)
    grad = _scaled_partials(f, Pm)
    jet = _local_jet(f, Pm)
    ref = jet.reference
    ok = value <= tol and max(grad) <= tol and ref > 0 and jet.value <= tol * ref and jet.gradient <= tol * ref
    if ok:
        ok = _critical_value_vanishes(f, Pm, tol, ref)
    return SingularityCheck(bool(ok), value, grad), jet


def _critical_value_vanishes(f: MultiPoly, P, tol: float, reference, maxiter: int = 30) -> bool:
    """Polish P to the nearby critical point of the chart polynomial and test the value there.

    A point that merely sits close to both the curve and a critical point of
    p passes residual tests at any fixed tolerance; after Newton on the
    gradient, p is zero to working precision at a genuine singular point
    and visibly nonzero otherwise. ``reference`` is the jet scale at P.
    Degenerate Hessians (cusps and worse) skip the polish, since Newton on
    the gradient is then not quadratic.
    """
    idx = max(range(3), key=lambda i: abs(P[i]))
    var = ("x", "y", "z")[idx]
    a, b = [v for v in ("x", "y", "z") if v != var]
    q = _chart(f, var)
    ga, gb = q.partial(a), q.partial(b)
    haa, hab, hbb = q.partial(a, a), q.partial(a, b), q.partial(b, b)
    loc = {v: P[i] / P[idx] for i, v in enumerate(("x", "y", "z")) if i != idx}

    def at(s, t):
        d = {a: s, b: t, var: mpmath.mpf(1)}
        return tuple(d[v] for v in ("x", "y", "z"))

    dps = max(mpmath.mp.dps, WORK_DPS)
    with mpmath.workdps(dps):
        u, w = mpmath.mpmathify(loc[a]), mpmath.mpmathify(loc[b])
        u0, w0 = u, w
        L = 1 + mpmath.sqrt(abs(u) ** 2 + abs(w) ** 2)
        eps = mpmath.mpf(10) ** (-(3 * dps) // 5)
        prev = None
        for _ in range(maxiter):
            Q = at(u, w)
            f1, f2 = ga.evaluate(Q), gb.evaluate(Q)
            h11, h12, h22 = haa.evaluate(Q), hab.evaluate(Q), hbb.evaluate(Q)
            det = h11 * h22 - h12 * h12
            if abs(det) <= tol * (abs(h11) ** 2 + 2 * abs(h12) ** 2 + abs(h22) ** 2):
                return True
            du = (h22 * f1 - h12 * f2) / det
            dw = (h11 * f2 - h12 * f1) / det
            step = abs(du) + abs(dw)
            if prev is not None and step >= prev:
                break  # rounding noise floor
            u, w = u - du, w - dw
            if step <= eps * L:
                break
            prev = step
        else:
            return False
        if abs(u - u0) + abs(w - w0) > tol * L:
            return False
        return abs(q.evaluate(at(u, w))) <= CRITICAL_RTOL * reference


def verify_singular(cp: CurvePoly, point, tol: float = 1e-7) -> SingularityCheck:
    """Check that p and all three partials vanish at a projective point.

    Exact points are checked exactly. Floating-point points must pass two
    tests: each of p, p_x, p_y, p_z is at most ``tol`` times its evaluation
    scale ``sum |c_e| |P^e|``; and, in the chart of the largest coordinate,
    the constant and linear Taylor parts are at most ``tol`` times the larger
    of the quadratic and cubic parts, all measured in units of ``1 + |P|``.
    The second test is the discriminating one at high degree, where
    cancellation makes the coefficient scale alone too forgiving.
    """
    P = _as_projective(point)
    f = cp.projective
    if all(isinstance(c, (int, Fraction, GaussianRational)) for c in P):
        vals = [f.evaluate(P)] + [f.partial(v).evaluate(P) for v in ("x", "y", "z")]
        res = [0.0 if not v else float("inf") for v in vals]
        return SingularityCheck(all(r == 0 for r in res), res[0], tuple(res[1:]))
    return _check_with_jet(cp, P, tol)[0]


def _kind_from_jet(jet: _LocalJet, tol: float) -> str:
    if jet.order2 <= tol * jet.order3:
        raise HigherMultiplicityError("higher multiplicity (non-generic): quadratic part vanishes")
    a, b, c = jet.hessian
    disc = b * b - a * c
    size = abs(a) ** 2 + 2 * abs(b) ** 2 + abs(c) ** 2
    return "node" if abs(disc) > tol * size else "cusp"


def classify_node(cp: CurvePoly | MultiPoly, point, tol: float = 1e-7) -> str:
    """``"node"`` if the quadratic Taylor part at a singular point has two distinct tangents.

    ``cp`` may also be a bare affine polynomial (for model curves). Returns
    ``"cusp"`` when the quadratic part is a nonzero square; raises
    :class:`HigherMultiplicityError` when it is negligible next to the cubic
    part and ``ValueError`` when the point is not singular.
    """
    f = cp.projective if isinstance(cp, CurvePoly) else homogenize(cp)
    for dps in (CHECK_DPS, WORK_DPS, 2 * WORK_DPS):
        with mpmath.workdps(dps):
            jet = _local_jet(f, _mp_point(_as_projective(point)))
            ref = jet.reference
            singular = ref > 0 and jet.value <= tol * ref and jet.gradient <= tol * ref
        if singular:
            return _kind_from_jet(jet, tol)
    raise ValueError("point is not a singular point of the curve")


# -- affine intersections -----------------------------------------------------------


def _shear(p: MultiPoly, s: Fraction) -> MultiPoly:
    """``p(x - s*y, y)``."""
    if s == 0:
        return p
    x = MultiPoly.monomial((1, 0, 0), 1, ("x", "y"))
    y = MultiPoly.monomial((0, 1, 0), 1, ("x", "y"))
    lin = x - y.scale(s)
    xp = [MultiPoly.constant(1, ("x", "y"))]
    yp = [MultiPoly.constant(1, ("x", "y"))]
    out = MultiPoly({}, ("x", "y"))
    for e, c in p.terms.items():
        while len(xp) <= e[0]:
            xp.append(xp[-1] * lin)
        while len(yp) <= e[1]:
            yp.append(yp[-1] * y)
        out = out + (xp[e[0]] * yp[e[1]]).scale(c)
    return out


def _mp_coeffs(u: UniPoly) -> list:
    return [_mp_point((c,))[0] for c in u.coeffs]


def _mp_horner(coeffs, t):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _univariate_roots(u: UniPoly) -> list:
    """Roots of an exact squarefree polynomial, found and polished in mpmath.

    Double precision is not enough here: resultant roots can be packed so
    tightly that float root finders merge them.
    """
    mp = _mp_coeffs(u)
    try:
        roots = mpmath.polyroots(mp[::-1], maxsteps=500, extraprec=6 * mpmath.mp.prec)
    except mpmath.libmp.NoConvergence as exc:
        raise ConvergenceError("resultant roots did not converge") from exc
    dmp = [c * i for i, c in enumerate(mp)][1:]
    out = []
    for z in roots:
        z = mpmath.mpc(z)
        for _ in range(60):
            step = _mp_horner(mp, z) / _mp_horner(dmp, z)
            z -= step
            if abs(step) <= mpmath.mpf(10) ** (-WORK_DPS + 8) * max(1, abs(z)):
                break
        out.append(z)
    return out


def _newton2(g, h, start, maxiter: int = 80):
    gx, gy, hx, hy = g.partial("x"), g.partial("y"), h.partial("x"), h.partial("y")
    x, y = start
    eps = mpmath.mpf(10) ** (-WORK_DPS + 10)
    floor = mpmath.mpf(10) ** (-(WORK_DPS // 2))
    prev = None
    for _ in range(maxiter):
        P = (x, y, 1)
        F1, F2 = g.evaluate(P), h.evaluate(P)
        a, b, c, d = gx.evaluate(P), gy.evaluate(P), hx.evaluate(P), hy.evaluate(P)
        det = a * d - b * c
        if det == 0:
            raise ConvergenceError("singular Jacobian while refining an intersection point")
        dx = (d * F1 - b * F2) / det
        dy = (a * F2 - c * F1) / det
        x, y = x - dx, y - dy
        step = (abs(dx) + abs(dy)) / (1 + abs(x) + abs(y))
        if step <= eps:
            return x, y
        # rounding floor: converged well past double precision, no longer shrinking
        if prev is not None and step <= floor and step >= prev:
            return x, y
        prev = step
    raise ConvergenceError("Newton refinement of an intersection point did not converge")


def _lift_y(g: MultiPoly, h: MultiPoly, x0):
    """The y with g(x0, y) = h(x0, y) = 0, chosen among roots of the lower-degree one."""
    cands = []
    for p in (g, h):
        parts = p.as_univariate("y")
        deg = max(parts)
        coeffs = [parts[j].evaluate((x0, 0, 1)) if j in parts else mpmath.mpc(0) for j in range(deg + 1)]
        cands.append((deg, coeffs))
    (_, cg), (_, ch) = cands
    base, other = (cg, ch) if len(cg) <= len(ch) else (ch, cg)
    scale = max(abs(c) for c in base)
    ys = np.roots([complex(c / scale) for c in reversed(base)])
    oscale = max(abs(c) for c in other)
    best = min(ys, key=lambda t: abs(_mp_horner(other, mpmath.mpc(t))) / (oscale * max(1, abs(t)) ** (len(other) - 1)))
    return mpmath.mpc(best)


def intersect_partition(cfg: EllipseConfig, subset: Sequence[int]) -> PartitionIntersection:
    """Affine intersection points of the J-degenerate curve and the complementary ellipse.

    ``subset`` holds 0-based focus indices. A rational shear ``x -> x - s*y``
    is applied until the exact resultant in x is squarefree, so every root
    lifts to exactly one point.
    """
    subset = tuple(sorted(subset))
    k = cfg.k
    comp = tuple(i for i in range(k) if i not in subset)
    j = len(subset)
    g = degenerate_polynomial(cfg.subset(subset, radius=0)).affine
    h = ellipse_polynomial(cfg.subset(comp)).affine
    expected = expected_partition_count(j, k)
    bezout = int(g.degree() * h.degree())
    deficit = 2 * (circular_multiplicity(j) // 2) * circular_multiplicity(k - j)
    with mpmath.workdps(WORK_DPS):
        for s in _SHEARS:
            gs, hs = _shear(g, s), _shear(h, s)
            try:
                R = resultant(gs, hs, eliminate="y")
            except CommonComponentError as exc:
                raise NonGenericError(f"shared component (non-generic) for J={subset}") from exc
            if R.degree() >= 1 and not R.is_squarefree():
                continue
            xs = _univariate_roots(R) if R.degree() >= 1 else []
            pts = []
            for X in xs:
                Y = _lift_y(gs, hs, X)
                X, Y = _newton2(gs, hs, (X, Y))
                x, y = X - mpmath.mpf(s.numerator) / s.denominator * Y, Y
                x, y = _newton2(g, h, (x, y))
                pts.append((x, y))
            pts.sort(key=lambda t: (round(float(t[0].real), 9), round(float(t[0].imag), 9), round(float(t[1].real), 9), round(float(t[1].imag), 9)))
            return PartitionIntersection(
                subset=tuple(i + 1 for i in subset),
                g=g,
                h=h,
                points=tuple((complex(a), complex(b)) for a, b in pts),
                expected=expected,
                bezout=bezout,
                infinity_deficit=deficit,
                shear=s,
                precise=tuple(pts),
            )
    raise NonGenericError(f"non-generic: no shear separates the intersection points for J={subset}")


def _intersect_job(args):
    cfg, subset = args
    return intersect_partition(cfg, subset)


def enumerate_affine_singularities(cfg: EllipseConfig, workers: int | None = None) -> list[PartitionIntersection]:
    """Intersections for every subset J with ``2 <= |J| <= k-1`` (colex order)."""
    if cfg.radius <= 0:
        raise ValueError("affine singularities need a positive radius")
    jobs = [(cfg, J) for J in partition_subsets(cfg.k)]
    nw = worker_count(workers)
    if nw > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=nw) as pool:
            return list(pool.map(_intersect_job, jobs))
    return [_intersect_job(j) for j in jobs]


def gradient_zero_search(
    cp: CurvePoly, starts: Sequence[complex | tuple], tol: float = 1e-7, maxiter: int = 60
) -> list[tuple[complex, complex]]:
    """Newton on ``(p_x, p_y) = 0`` from many starts; keep converged points lying on the curve.

    An independent sweep used to check that a census is complete.
    """
    p = cp.affine
    px, py = p.partial("x"), p.partial("y")
    pxx, pxy, pyy = p.partial("x", "x"), p.partial("x", "y"), p.partial("y", "y")
    found: list[tuple[complex, complex]] = []
    for s in starts:
        x, y = (complex(s[0]), complex(s[1])) if isinstance(s, tuple) else (complex(s.real), complex(s.imag))
        ok = False
        for _ in range(maxiter):
            P = (x, y, 1)
            f1, f2 = px.evaluate(P), py.evaluate(P)
            a, b, d = pxx.evaluate(P), pxy.evaluate(P), pyy.evaluate(P)
            det = a * d - b * b
            if det == 0 or not np.isfinite(abs(det)):
                break
            dx = (d * f1 - b * f2) / det
            dy = (a * f2 - b * f1) / det
            x, y = x - dx, y - dy
            if abs(x) + abs(y) > 1e8:
                break
            if abs(dx) + abs(dy) <= 1e-13 * (1 + abs(x) + abs(y)):
                ok = True
                break
        if not ok:
            continue
        with mpmath.workdps(WORK_DPS):
            Pm = _mp_point((x, y, 1))
            try:
                xm, ym = _newton_grad(px, py, pxx, pxy, pyy, Pm[0], Pm[1])
            except ConvergenceError:
                continue
            Pm = (xm, ym, mpmath.mpf(1))
            # Newton-polished, so a genuine singular point has p at working-precision noise
            if _scaled_value(p, Pm) > 10.0 ** (-(WORK_DPS // 2)):
                continue
        pt = (complex(xm), complex(ym))
        if not any(abs(pt[0] - q[0]) + abs(pt[1] - q[1]) <= DEDUP_RADIUS * (1 + abs(pt[0]) + abs(pt[1])) for q in found):
            found.append(pt)
    return found


def _newton_grad(px, py, pxx, pxy, pyy, x, y, maxiter: int = 40):
    eps = mpmath.mpf(10) ** (-WORK_DPS + 10)
    floor = mpmath.mpf(10) ** (-(WORK_DPS // 2))
    prev = None
    for _ in range(maxiter):
        P = (x, y, 1)
        f1, f2 = px.evaluate(P), py.evaluate(P)
        a, b, d = pxx.evaluate(P), pxy.evaluate(P), pyy.evaluate(P)
        det = a * d - b * b
        if det == 0:
            raise ConvergenceError("degenerate Hessian")
        dx = (d * f1 - b * f2) / det
        dy = (a * f2 - b * f1) / det
        x, y = x - dx, y - dy
        if abs(dx) + abs(dy) <= eps * (1 + abs(x) + abs(y)):
            return x, y
    raise ConvergenceError("gradient Newton did not converge")


# -- census -----------------------------------------------------------------------------


@dataclass
class Census:
    """All singular points found for one curve, plus the diagnostics behind them."""

    points: list[SingularPoint]
    circular: list[CircularPointData]
    partitions: list[PartitionIntersection]
    infinity: InfinityFactorization | None
    issues: list[str]

    @property
    def affine(self) -> list[SingularPoint]:
        return [p for p in self.points if p.kind != "circular_point"]


def build_census(cp: CurvePoly, tol: float = 1e-7, workers: int | None = None) -> Census:
    """Circular points, affine nodes and infinity-line data; problems are collected, not raised."""
    k = cp.k
    issues: list[str] = []
    points: list[SingularPoint] = []
    circular: list[CircularPointData] = []
    partitions: list[PartitionIntersection] = []
    infinity = None
    try:
        infinity = infinity_line_factorization(cp, tol)
        if not infinity.matches_prediction:
            issues.append("line at infinity: " + (infinity.note or "factorization mismatch"))
        elif not infinity.other_points_smooth:
            issues.append("line at infinity: " + infinity.note)
    except Exception as exc:  # noqa: BLE001 - reported, never fatal
        issues.append(f"line at infinity: {exc}")
    if k >= 3:
        for which in (1, -1):
            try:
                data = circular_point_analysis(cp, which)
                circular.append(data)
                points.append(data.point)
            except NonGenericError as exc:
                issues.append(str(exc))
    if k >= 3 and cp.config.radius > 0:
        try:
            partitions = enumerate_affine_singularities(cp.config, workers)
        except (NonGenericError, ConvergenceError) as exc:
            issues.append(str(exc))
        for part in partitions:
            if not part.count_ok:
                issues.append(f"{part.label()}: {len(part.points)} points, expected {part.expected}")
            for pt, hp in zip(part.points, part.precise):
                dup = next(
                    (
                        q
                        for q in points
                        if q.kind == "node"
                        and abs(q.coords[0] - pt[0]) + abs(q.coords[1] - pt[1])
                        <= DEDUP_RADIUS * (1 + abs(pt[0]) + abs(pt[1]))
                    ),
                    None,
                )
                if dup is not None:
                    issues.append(f"{part.label()}: point shared with {dup.provenance} (non-generic)")
                    continue
                check, jet = _check_with_jet(cp, (hp[0], hp[1], 1), tol)
                if not check.passed:
                    issues.append(f"{part.label()}: intersection point fails the singularity test")
                    continue
                try:
                    kind = _kind_from_jet(jet, tol)
                except HigherMultiplicityError as exc:
                    issues.append(f"{part.label()}: {exc}")
                    continue
                if kind != "node":
                    issues.append(f"{part.label()}: singular point is not a node")
                    continue
                points.append(
                    SingularPoint(
                        coords=(pt[0], pt[1], 1 + 0j),
                        multiplicity=2,
                        branches=2,
                        delta=1,
                        kind="node",
                        provenance=part.label(),
                        precise=(hp[0], hp[1], mpmath.mpf(1)),
                    )
                )
    return Census(points, circular, partitions, infinity, issues)
