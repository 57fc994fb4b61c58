"""Univariate polynomials, exact interpolation and complex root finding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ConvergenceError
from .gaussian import GaussianRational, as_gaussian, is_exact

__all__ = [
    "UniPoly",
    "complex_roots",
    "newton_interpolate",
    "poly_gcd",
    "squarefree_decomposition",
]


def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial, coefficients ordered from degree 0 upwards.

    Coefficients are either all exact (GaussianRational) or all Python
    complex numbers. ``var`` only labels the indeterminate.
    """

    coeffs: tuple
    var: str = "t"

    def __post_init__(self):
        cs = list(self.coeffs)
        if cs and all(is_exact(c) for c in cs):
            cs = [as_gaussian(c) for c in cs]
        else:
            cs = [complex(c) for c in cs]
        object.__setattr__(self, "coeffs", tuple(_trim(cs)))

    @property
    def exact(self) -> bool:
        return not self.coeffs or isinstance(self.coeffs[0], GaussianRational)

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1]

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(c * k for k, c in enumerate(self.coeffs) if k), self.var)

    def to_complex(self) -> "UniPoly":
        return UniPoly(tuple(complex(c) for c in self.coeffs), self.var)

    def monic(self) -> "UniPoly":
        lead = self.leading()
        return UniPoly(tuple(c / lead for c in self.coeffs), self.var)

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [GaussianRational(0) if self.exact else 0j] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading()
        dv = len(other.coeffs) - 1
        for k in range(len(rem) - 1, dv - 1, -1):
            c = rem[k] / lead
            if not c:
                continue
            q[k - dv] = c
            for j, oc in enumerate(other.coeffs):
                rem[k - dv + j] = rem[k - dv + j] - c * oc
        return UniPoly(tuple(q), self.var), UniPoly(tuple(rem[:dv]) if dv else (), self.var)

    def is_squarefree(self) -> bool:
        """Exact test: gcd with the derivative is a nonzero constant."""
        if self.degree() <= 1:
            return True
        return poly_gcd(self, self.derivative()).degree() == 0


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q(i) by the Euclidean algorithm (exact inputs only)."""
    if not (a.exact and b.exact):
        raise TypeError("poly_gcd requires exact coefficients")
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: ``p = lc * prod(a_i ** i)`` with squarefree, coprime ``a_i``."""
    if p.degree() < 1:
        return []
    a = poly_gcd(p, p.derivative())
    b = p.divmod(a)[0]
    c = p.derivative().divmod(a)[0]
    d = _sub(c, b.derivative())
    out = []
    i = 1
    while b.degree() > 0:
        a = poly_gcd(b, d)
        b = b.divmod(a)[0]
        c = d.divmod(a)[0]
        d = _sub(c, b.derivative())
        if a.degree() > 0:
            out.append((a, i))
        i += 1
    return out


def _sub(a: UniPoly, b: UniPoly) -> UniPoly:
    n = max(len(a.coeffs), len(b.coeffs))
    zero = GaussianRational(0)
    ca = list(a.coeffs) + [zero] * (n - len(a.coeffs))
    cb = list(b.coeffs) + [zero] * (n - len(b.coeffs))
    return UniPoly(tuple(x - y for x, y in zip(ca, cb)), a.var)


def newton_interpolate(xs: Sequence, ys: Sequence, var: str = "t") -> UniPoly:
    """Exact interpolating polynomial through ``(xs[i], ys[i])`` by divided differences."""
    return UniPoly(tuple(newton_coefficients(xs, ys)), var)


def newton_coefficients(xs: Sequence, ys: Sequence) -> list:
    """Monomial coefficients (degree 0 upwards) of the interpolant, in the input number type.

    Passing Fractions rather than GaussianRationals for real data is
    several times faster.
    """
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae")
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form into monomial coefficients
    poly = [coef[n - 1]]
    for i in range(n - 2, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        new = [0] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] - c * xs[i]
        new[0] = new[0] + coef[i]
        poly = new
    return poly


# -- root finding ------------------------------------------------------------


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    """Points on a circle of radius given by the Fujiwara bound (slightly rotated)."""
    n = len(c) - 1
    lead = abs(c[-1])
    ratios = [(abs(c[n - j]) / lead) ** (1.0 / j) for j in range(1, n + 1) if c[n - j] != 0]
    radius = 2 * max(ratios) if ratios else 1.0
    radius = max(radius, 1e-12)
    k = np.arange(n)
    return radius * np.exp(1j * (2 * np.pi * k / n + 0.4))


def _aberth(c: np.ndarray, maxiter: int) -> tuple[np.ndarray, bool]:
    n = len(c) - 1
    dc = c[1:] * np.arange(1, n + 1)
    z = _initial_guesses(c)
    eps = np.finfo(float).eps
    abs_c = np.abs(c)
    for _ in range(maxiter):
        p = np.polyval(c[::-1], z)
        dp = np.polyval(dc[::-1], z)
        err = np.polyval(abs_c[::-1], np.abs(z)) * eps * 4
        done = np.abs(p) <= err
        if done.all():
            return z, True
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0)
        w[done] = 0
        z = z - w
        if np.all(np.abs(w) <= 4 * eps * np.abs(z)):
            return z, True
    return z, False


def complex_roots(p, tol: float = 1e-8, maxiter: int = 500) -> list[tuple[complex, int]]:
    """All complex roots of ``p`` with multiplicities.

    Roots are found simultaneously by the Aberth-Ehrlich iteration, then
    grouped: two roots belong to the same cluster when they are within
    ``tol`` relative to their magnitude, when their inclusion disks
    (``n |p(z)| / |lc * prod(z - z_j)|``) overlap, or when they are close and
    ``p`` is still at rounding-noise level at their midpoint (the signature
    of a multiple root smeared out by rounding). Each cluster is reported
    once, at its centroid, with multiplicity equal to the cluster size.

    Exact input (a UniPoly with GaussianRational coefficients) is first split
    by an exact squarefree decomposition, so multiplicities are exact and the
    clustering only ever sees simple roots.

    Raises :class:`ConvergenceError` when the iteration cap is hit and some
    root fails the residual test ``|p(z)| <= tol * sum |a_j| |z|^j``.
    """
    if isinstance(p, UniPoly) and p.exact and p.degree() >= 1:
        out = []
        for factor, mult in squarefree_decomposition(p):
            for root, k in complex_roots(factor.to_complex(), tol, maxiter):
                out.append((root, k * mult))
        out.sort(key=lambda t: (round(t[0].real, 12), round(t[0].imag, 12)))
        return out
    if isinstance(p, UniPoly):
        coeffs = p.coeffs
    else:
        coeffs = tuple(p)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
    if not coeffs:
        raise ValueError("the zero polynomial has no well-defined roots")
    c = np.array([complex(v) for v in coeffs], dtype=complex)
    n = len(c) - 1
    if n == 0:
        return []
    # factor out roots at zero exactly
    nz = 0
    while c[nz] == 0:
        nz += 1
    core = c[nz:]
    if len(core) - 1 == 0:
        z = np.zeros(0, dtype=complex)
        converged = True
    elif len(core) - 1 == 1:
        z = np.array([-core[0] / core[1]])
        converged = True
    else:
        scale = np.max(np.abs(core))
        z, converged = _aberth(core / scale, maxiter)
    roots = np.concatenate([np.zeros(nz, dtype=complex), z])

    abs_c = np.abs(c)
    resid = np.abs(np.polyval(c[::-1], roots))
    bound = np.polyval(abs_c[::-1], np.abs(roots))
    if not converged and np.any(resid > tol * bound):
        worst = float(np.max(resid / np.where(bound > 0, bound, 1)))
        raise ConvergenceError(
            f"Aberth iteration did not converge in {maxiter} steps (worst scaled residual {worst:.3e})"
        )

    # inclusion radii; zero roots get radius 0 so they only merge with each other
    radii = np.zeros(n)
    lead = abs(c[-1])
    for i in range(n):
        d = roots[i] - np.delete(roots, i)
        prod = lead * np.prod(np.abs(d)) if n > 1 else lead
        radii[i] = n * resid[i] / prod if prod > 0 else np.inf

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    noise = 64 * np.finfo(float).eps
    window = tol**0.25
    for i in range(n):
        for j in range(i + 1, n):
            gap = abs(roots[i] - roots[j])
            mag = max(1.0, abs(roots[i]), abs(roots[j]))
            merge = gap <= tol * mag or gap <= radii[i] + radii[j]
            if not merge and gap <= window * mag:
                # a multiple root smeared out by rounding: p stays at noise
                # level across the whole cluster, not only at the members
                mid = (roots[i] + roots[j]) / 2
                merge = abs(np.polyval(c[::-1], mid)) <= noise * np.polyval(abs_c[::-1], abs(mid))
            if merge:
                parent[find(i)] = find(j)
    clusters: dict[int, list[int]] = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)
    out = []
    for members in clusters.values():
        centre = complex(np.mean(roots[members]))
        out.append((centre, len(members)))
    out.sort(key=lambda t: (round(t[0].real, 12), round(t[0].imag, 12)))
    return out


def scalar_resultant(f: Sequence, g: Sequence, det) -> object:
    """Resultant of two univariate polynomials given by *formal* coefficient lists.

    ``f`` and ``g`` list coefficients from degree 0 up to their formal degree;
    leading entries may be zero (the Sylvester matrix is still formed with the
    formal degrees, which makes this a specialisation of the generic resultant).
    """
    m = len(f) - 1
    n = len(g) - 1
    if m < 0 or n < 0:
        raise ValueError("empty coefficient list")
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    zero = f[0] * 0
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(n):
        rows.append([zero] * i + fr + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gr + [zero] * (size - n - 1 - i))
    return det(rows)
