"""Fraction-free determinants."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .gaussian import GaussianRational

__all__ = ["bareiss_det", "rational_det"]


def bareiss_det(matrix: Sequence[Sequence]):
    """Determinant by Bareiss fraction-free elimination.

    For integer matrices every intermediate division is exact, so only
    integer arithmetic is used. Other exact entries (Fraction,
    GaussianRational) go through :func:`rational_det` or plain field
    division.
    """
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    flat = [v for row in matrix for v in row]
    if all(isinstance(v, int) for v in flat):
        return _bareiss_int([list(row) for row in matrix])
    if all(isinstance(v, (int, Fraction)) for v in flat):
        return rational_det(matrix)
    return _bareiss_field([list(row) for row in matrix])


def rational_det(matrix: Sequence[Sequence]) -> Fraction:
    """Clear denominators, then run integer Bareiss."""
    n = len(matrix)
    den = 1
    for row in matrix:
        for v in row:
            d = v.denominator if isinstance(v, Fraction) else 1
            den = den * d // math.gcd(den, d)
    M = [[int(v * den) for v in row] for row in matrix]
    return Fraction(_bareiss_int(M), den**n)


def _bareiss_int(M: list[list[int]]) -> int:
    n = len(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            aik = ri[k]
            if aik == 0:
                if pk != prev:
                    for j in range(k + 1, n):
                        ri[j] = ri[j] * pk // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * pk - aik * rk[j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


def _bareiss_field(M: list[list]):
    n = len(M)
    sign = 1
    prev = GaussianRational(1)
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return M[0][0] * 0
        pk = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - aik * rk[j]) / prev
        prev = pk
    return M[n - 1][n - 1] * sign
