"""Resultants and bivariate interpolation, both by exact evaluation/interpolation."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import CommonComponentError
from .gaussian import GaussianRational, as_gaussian
from .linalg import bareiss_det
from .multipoly import VARS, MultiPoly
from .univariate import UniPoly, newton_coefficients, newton_interpolate, scalar_resultant

__all__ = ["resultant", "interpolate", "univariate_coefficients"]


def univariate_coefficients(p: MultiPoly, var: str, formal_degree: int, at: dict) -> list:
    """Coefficients of ``p`` in ``var`` (degree 0 up to ``formal_degree``) after substituting ``at``."""
    idx = VARS.index(var)
    out = [GaussianRational(0)] * (formal_degree + 1)
    vals = {VARS.index(v): as_gaussian(a) for v, a in at.items()}
    powers: dict = {}
    for e, c in p.terms.items():
        term = c
        for i, a in vals.items():
            k = e[i]
            if k:
                key = (i, k)
                if key not in powers:
                    powers[key] = a**k
                term = term * powers[key]
        out[e[idx]] = out[e[idx]] + term
    return out


def resultant(g: MultiPoly, h: MultiPoly, eliminate: str = "y", strict: bool = True) -> UniPoly:
    """Sylvester resultant of ``g`` and ``h`` with respect to ``eliminate``.

    Both polynomials may involve at most one other variable (the kept one).
    The kept variable is sampled at the integers ``0..B`` with
    ``B = deg(g) * deg(h)``, each specialisation's resultant is an exact
    Sylvester determinant formed with the *formal* degrees in ``eliminate``,
    and the values are interpolated back. An identically zero result means
    a common component; it raises :class:`CommonComponentError` unless
    ``strict`` is false, in which case the zero polynomial is returned.
    """
    if g.is_zero() or h.is_zero():
        raise ValueError("resultant of a zero polynomial")
    others = sorted(set(g.active_variables() + h.active_variables()) - {eliminate})
    if len(others) > 1:
        raise ValueError(f"expected at most one kept variable, found {others}")
    kept = others[0] if others else next(v for v in ("x", "y") if v != eliminate)
    m = g.degree_in(eliminate)
    n = h.degree_in(eliminate)
    bound = int(g.degree() * h.degree())
    xs = list(range(bound + 1))
    values = []
    for x0 in xs:
        fc = univariate_coefficients(g, eliminate, m, {kept: x0})
        gc = univariate_coefficients(h, eliminate, n, {kept: x0})
        values.append(scalar_resultant(fc, gc, bareiss_det))
    values = [as_gaussian(v) for v in values]
    if all(v.im == 0 for v in values):
        res = UniPoly(tuple(newton_coefficients([Fraction(x) for x in xs], [v.re for v in values])), kept)
    else:
        res = newton_interpolate([Fraction(x) for x in xs], values, var=kept)
    if res.is_zero():
        if strict:
            raise CommonComponentError("common component: resultant vanishes identically")
    return res


def interpolate(samples: Sequence, degree_bound: int, variables=("x", "y")) -> MultiPoly:
    """Recover a bivariate polynomial from its values on a tensor grid.

    ``samples`` is a sequence of ``((a, b), value)`` with exact entries on a
    grid of ``(degree_bound + 1)**2`` points built from ``degree_bound + 1``
    distinct abscissae per axis. Interpolation runs along the second axis for
    every fixed first coordinate, then along the first axis coefficient by
    coefficient.
    """
    v1, v2 = variables
    n = degree_bound + 1
    table: dict = {}
    for (a, b), val in samples:
        key = (as_gaussian(a), as_gaussian(b))
        if key in table:
            raise ValueError(f"duplicate sample point {key}")
        table[key] = as_gaussian(val)
    xs = sorted({k[0] for k in table}, key=lambda q: (q.re, q.im))
    ys = sorted({k[1] for k in table}, key=lambda q: (q.re, q.im))
    if len(xs) != n or len(ys) != n or len(table) != n * n:
        raise ValueError(
            f"samples do not form a {n}x{n} tensor grid "
            f"({len(xs)} x-values, {len(ys)} y-values, {len(table)} points)"
        )
    # real data (the usual case) runs on plain Fractions
    real = all(a.im == 0 and b.im == 0 and v.im == 0 for (a, b), v in table.items())
    num = (lambda g: g.re) if real else (lambda g: g)
    nx, ny = [num(a) for a in xs], [num(b) for b in ys]
    rows = []
    for a in xs:
        try:
            col = [num(table[(a, b)]) for b in ys]
        except KeyError as exc:
            raise ValueError(f"missing grid point {exc}") from None
        rows.append(newton_coefficients(ny, col))
    i1, i2 = VARS.index(v1), VARS.index(v2)
    terms = {}
    for j in range(n):
        for i, c in enumerate(newton_coefficients(nx, [r[j] for r in rows])):
            if c:
                e = [0, 0, 0]
                e[i1] = i
                e[i2] = j
                terms[tuple(e)] = c
    return MultiPoly(terms, variables)
