"""Sparse multivariate polynomials in x, y, z over Q(i).

Terms are stored as a dict mapping exponent triples ``(ex, ey, ez)`` to nonzero
:class:`GaussianRational` coefficients. The canonical term order is graded
lexicographic with ``x > y > z``; it drives printing, ``leading_term`` and
:func:`poly_sqrt`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from ..errors import NotOnCurveError, NotPerfectSquareError
from .gaussian import GaussianRational, as_gaussian, is_exact

__all__ = [
    "VARS",
    "ZERO_DEGREE",
    "MultiPoly",
    "gens",
    "homogenize",
    "initial_form",
    "poly_sqrt",
    "parse_poly",
    "grlex_key",
]

VARS = ("x", "y", "z")
_INDEX = {v: i for i, v in enumerate(VARS)}

#: Degree of the zero polynomial. ``-inf`` compares below every integer and
#: is never produced by integer arithmetic, so it cannot be mistaken for -1.
ZERO_DEGREE = float("-inf")

_ONE = GaussianRational(1)


def grlex_key(e):
    """Sort key; larger keys come first in the canonical (descending) order."""
    return (e[0] + e[1] + e[2], e[0], e[1], e[2])


def _canon_vars(names: Iterable[str]) -> tuple[str, ...]:
    s = set(names)
    bad = s - set(VARS)
    if bad:
        raise ValueError(f"unknown variables {sorted(bad)}; only x, y, z are supported")
    return tuple(v for v in VARS if v in s)


class MultiPoly:
    """Exact polynomial in (a subset of) the variables x, y, z.

    Parameters
    ----------
    terms : mapping, optional
        Exponent triple -> coefficient. Coefficients may be ints, Fractions or
        GaussianRationals; zeros are dropped.
    variables : iterable of str
        The declared variable set. Exponents of undeclared variables must be 0.
    """

    __slots__ = ("terms", "variables", "_numeric_cache")

    def __init__(self, terms: Mapping | None = None, variables: Iterable[str] = VARS):
        self.variables = _canon_vars(variables)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(v) for v in e)
                if len(e) != 3 or min(e) < 0:
                    raise ValueError(f"bad exponent {e}")
                c = as_gaussian(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        for e in clean:
            for name, k in zip(VARS, e):
                if k and name not in self.variables:
                    raise ValueError(f"term {e} uses undeclared variable {name}")
        self.terms = clean
        self._numeric_cache = {}

    @classmethod
    def _raw(cls, terms: dict, variables: tuple[str, ...]) -> "MultiPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj.variables = variables
        obj._numeric_cache = {}
        return obj

    @classmethod
    def constant(cls, c, variables: Iterable[str] = VARS) -> "MultiPoly":
        c = as_gaussian(c)
        return cls._raw({(0, 0, 0): c} if c else {}, _canon_vars(variables))

    @classmethod
    def monomial(cls, exponent, coeff=1, variables: Iterable[str] = VARS) -> "MultiPoly":
        return cls({tuple(exponent): coeff}, variables)

    # -- basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self):
        """Total degree; :data:`ZERO_DEGREE` for the zero polynomial."""
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str):
        if not self.terms:
            return ZERO_DEGREE
        i = _INDEX[var]
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.terms.values())

    def active_variables(self) -> tuple[str, ...]:
        used = {VARS[i] for e in self.terms for i in range(3) if e[i]}
        return tuple(v for v in VARS if v in used)

    def coefficient(self, exponent) -> GaussianRational:
        return self.terms.get(tuple(exponent), GaussianRational(0))

    def sorted_terms(self) -> list[tuple[tuple[int, int, int], GaussianRational]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        """``(exponent, coefficient)`` of the grlex-largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def max_abs_coefficient(self) -> float:
        if not self.terms:
            return 0.0
        return max(math.hypot(float(c.re), float(c.im)) for c in self.terms.values())

    def homogeneous_part(self, degree: int) -> "MultiPoly":
        return MultiPoly._raw(
            {e: c for e, c in self.terms.items() if sum(e) == degree}, self.variables
        )

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if is_exact(other):
            return MultiPoly.constant(other, self.variables)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return MultiPoly._raw(terms, _canon_vars(self.variables + o.variables))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.variables)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        variables = _canon_vars(self.variables + o.variables)
        if len(o.terms) == 1 and (0, 0, 0) in o.terms:
            out = self.scale(o.terms[(0, 0, 0)])
            out.variables = variables
            return out
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly._raw({e: c for e, c in terms.items() if c}, variables)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MultiPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        c = as_gaussian(c)
        if not c:
            return MultiPoly._raw({}, self.variables)
        return MultiPoly._raw({e: v * c for e, v in self.terms.items()}, self.variables)

    def __truediv__(self, c):
        if isinstance(c, MultiPoly):
            return NotImplemented
        return self.scale(1 / as_gaussian(c))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- normalisations ----------------------------------------------------
    def monic(self) -> "MultiPoly":
        """Scale so the grlex leading coefficient is 1."""
        if not self.terms:
            return self
        return self / self.leading_term()[1]

    def primitive(self) -> "MultiPoly":
        """Primitive integer multiple with positive leading coefficient.

        Only defined for real (rational) polynomials; for Gaussian ones the
        monic normalisation is returned instead.
        """
        if not self.terms:
            return self
        if not self.is_real():
            return self.monic()
        coeffs = [c.re for c in self.terms.values()]
        den = 1
        for q in coeffs:
            den = den * q.denominator // math.gcd(den, q.denominator)
        nums = [int(q * den) for q in coeffs]
        g = 0
        for n in nums:
            g = math.gcd(g, n)
        factor = Fraction(den, g)
        if self.leading_term()[1].re < 0:
            factor = -factor
        return self.scale(factor)

    # -- calculus and substitution -----------------------------------------
    def diff(self, var: str) -> "MultiPoly":
        i = _INDEX[var]
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MultiPoly._raw(terms, self.variables)

    def partial(self, *vars_: str) -> "MultiPoly":
        """Cached iterated derivative, e.g. ``p.partial("x", "y")``."""
        key = ("partial",) + tuple(sorted(vars_))
        out = self._numeric_cache.get(key)
        if out is None:
            out = self
            for v in sorted(vars_):
                out = out.diff(v)
            self._numeric_cache[key] = out
        return out

    def abs_poly(self) -> "MultiPoly":
        """Cached polynomial with coefficients ``|re| + |im|`` (an exact majorant of ``|c|``)."""
        out = self._numeric_cache.get("abs")
        if out is None:
            out = MultiPoly._raw(
                {e: GaussianRational(abs(c.re) + abs(c.im)) for e, c in self.terms.items()}, self.variables
            )
            self._numeric_cache["abs"] = out
        return out

    def specialize(self, var: str, value) -> "MultiPoly":
        """Substitute an exact constant for ``var`` and drop it from the variables."""
        i = _INDEX[var]
        value = as_gaussian(value)
        powers = {}
        terms: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            v = c * powers[k]
            terms[ne] = terms.get(ne, 0) + v
        variables = tuple(v for v in self.variables if v != var)
        return MultiPoly._raw({e: c for e, c in terms.items() if c}, variables)

    def dehomogenize(self, var: str = "z") -> "MultiPoly":
        return self.specialize(var, 1)

    def translate(self, shifts: Mapping[str, object]) -> "MultiPoly":
        """Return ``p(v + shifts[v], ...)``, i.e. move the point ``shifts`` to the origin."""
        result = self
        for var, a in shifts.items():
            a = as_gaussian(a)
            if not a:
                continue
            i = _INDEX[var]
            apow = [GaussianRational(1)]
            for _ in range(result.degree_in(var) if result.terms else 0):
                apow.append(apow[-1] * a)
            terms: dict = {}
            for e, c in result.terms.items():
                n = e[i]
                for j in range(n + 1):
                    ne = list(e)
                    ne[i] = j
                    ne = tuple(ne)
                    v = c * (math.comb(n, j) * apow[n - j])
                    terms[ne] = terms.get(ne, 0) + v
            result = MultiPoly._raw({e: c for e, c in terms.items() if c}, result.variables)
        return result

    def as_univariate(self, var: str) -> dict[int, "MultiPoly"]:
        """Split into ``{power: coefficient polynomial}`` with respect to ``var``."""
        i = _INDEX[var]
        rest = tuple(v for v in self.variables if v != var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] = 0
            out.setdefault(e[i], {})[tuple(ne)] = c
        return {k: MultiPoly._raw(t, rest) for k, t in out.items()}

    # -- evaluation ----------------------------------------------------------
    def _point_map(self, point) -> list:
        if isinstance(point, Mapping):
            vals = [point.get(v) for v in VARS]
        else:
            point = list(point)
            if len(point) == 3:
                vals = point
            elif len(point) == len(self.variables):
                vals = [None, None, None]
                for name, v in zip(self.variables, point):
                    vals[_INDEX[name]] = v
            else:
                raise ValueError(
                    f"point has {len(point)} coordinates; expected 3 or {len(self.variables)}"
                )
        for name in self.active_variables():
            if vals[_INDEX[name]] is None:
                raise ValueError(f"no value supplied for variable {name}")
        return [0 if v is None else v for v in vals]

    def evaluate(self, point):
        """Evaluate at a point.

        ``point`` is a triple (x, y, z), a tuple matching ``self.variables``,
        or a mapping from variable names. Exact inputs (int, Fraction,
        GaussianRational) give an exact GaussianRational. Anything else is
        treated as floating point: Python ``complex`` or ``mpmath`` numbers,
        evaluated with a nested Horner scheme.
        """
        vals = self._point_map(point)
        if all(is_exact(v) for v in vals):
            return self._evaluate_exact([as_gaussian(v) for v in vals])
        if any(isinstance(v, (mpmath.mpf, mpmath.mpc)) for v in vals):
            return self._horner([mpmath.mpmathify(v) for v in vals], _mp_coeff, ("mp", mpmath.mp.prec))
        return self._horner([complex(v) for v in vals], complex, "complex")

    def _evaluate_exact(self, vals):
        total = GaussianRational(0)
        cache = [{0: GaussianRational(1)} for _ in range(3)]
        for e, c in self.terms.items():
            term = c
            for i in range(3):
                k = e[i]
                if k:
                    pw = cache[i].get(k)
                    if pw is None:
                        pw = vals[i] ** k
                        cache[i][k] = pw
                    term = term * pw
            total = total + term
        return total

    def _nested(self, convert, key):
        nested = self._numeric_cache.get(key)
        if nested is None:
            nested = {}
            for (a, b, c), coef in self.terms.items():
                nested.setdefault(a, {}).setdefault(b, {})[c] = convert(coef)
            nested = _freeze_nested(nested)
            self._numeric_cache[key] = nested
        return nested

    def _horner(self, vals, convert, key):
        nested = self._nested(convert, key)
        if not nested:
            return convert(GaussianRational(0))
        x, y, z = vals

        def eval_z(d):
            acc = 0
            prev = None
            for k, c in d:
                if prev is not None:
                    acc = acc * z ** (prev - k)
                acc = acc + c
                prev = k
            return acc * z ** prev

        def eval_yz(d):
            acc = 0
            prev = None
            for k, inner in d:
                if prev is not None:
                    acc = acc * y ** (prev - k)
                acc = acc + eval_z(inner)
                prev = k
            return acc * y ** prev

        acc = 0
        prev = None
        for k, inner in nested:
            if prev is not None:
                acc = acc * x ** (prev - k)
            acc = acc + eval_yz(inner)
            prev = k
        return acc * x ** prev

    # -- text ------------------------------------------------------------------
    def to_text(self) -> str:
        """Canonical text: grlex-descending terms, coefficients as ``a/b+c/d*i``."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(VARS, e) if k
            )
            if not mono:
                s = str(c)
                if not c.is_real() and c.re:
                    s = f"({s})"
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            elif c.is_real() or not c.re:
                s = f"{c}*{mono}"
            else:
                s = f"({c})*{mono}"
            if parts and not s.startswith("-"):
                s = "+" + s
            parts.append(s)
        return "".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r}, variables={self.variables})"


def _freeze_nested(d):
    if not isinstance(d, dict):
        return d
    return tuple((k, _freeze_nested(v)) for k, v in sorted(d.items(), reverse=True))


def _mp_coeff(c: GaussianRational):
    re_ = mpmath.mpf(c.re.numerator) / c.re.denominator
    if not c.im:
        return re_
    return mpmath.mpc(re_, mpmath.mpf(c.im.numerator) / c.im.denominator)


def gens(variables: Iterable[str] = VARS) -> tuple[MultiPoly, ...]:
    """Generator polynomials, e.g. ``x, y, z = gens()``."""
    variables = _canon_vars(variables)
    out = []
    for v in variables:
        e = [0, 0, 0]
        e[_INDEX[v]] = 1
        out.append(MultiPoly._raw({tuple(e): _ONE}, variables))
    return tuple(out)


def homogenize(p: MultiPoly, var: str = "z") -> MultiPoly:
    """Homogenize an affine polynomial in the other two variables using ``var``."""
    if p.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    i = _INDEX[var]
    if any(e[i] for e in p.terms):
        raise ValueError(f"polynomial already involves {var}")
    d = p.degree()
    terms = {}
    for e, c in p.terms.items():
        ne = list(e)
        ne[i] = d - sum(e)
        terms[tuple(ne)] = c
    return MultiPoly._raw(terms, _canon_vars(p.variables + (var,)))


def initial_form(p: MultiPoly, center) -> MultiPoly:
    """Lowest-degree homogeneous part of ``p`` after moving ``center`` to the origin.

    ``p`` must live in two variables (a chart of the projective plane);
    ``center`` is a pair matching ``p.variables`` or a mapping. The degree of
    the result is the multiplicity of the curve at ``center``.
    """
    if len(p.variables) != 2:
        raise ValueError("initial_form needs a polynomial in exactly two variables")
    if isinstance(center, Mapping):
        shifts = {v: as_gaussian(center[v]) for v in p.variables}
    else:
        shifts = {v: as_gaussian(c) for v, c in zip(p.variables, center)}
    if p.evaluate(shifts):
        raise NotOnCurveError("not on curve: polynomial does not vanish at the center")
    q = p.translate(shifts)
    if q.is_zero():
        return q
    m = min(sum(e) for e in q.terms)
    return q.homogeneous_part(m)


def poly_sqrt(F: MultiPoly) -> MultiPoly:
    """Square root of a polynomial that is a constant multiple of a square.

    Returns ``G`` with grlex leading coefficient 1 and ``G**2 == F / lc(F)``.
    The root is built one term at a time from the leading term of the
    residual ``F/lc(F) - G**2``; each new term is that leading term divided
    by ``2*LT(G)``.
    """
    if F.is_zero():
        return F
    lm, lc = F.leading_term()
    if any(k % 2 for k in lm):
        raise NotPerfectSquareError("not a perfect square: leading monomial has an odd exponent")
    target = F / lc
    lead = tuple(k // 2 for k in lm)
    G = MultiPoly._raw({lead: GaussianRational(1)}, F.variables)
    R = target - G * G
    last = lead
    two = GaussianRational(2)
    while R.terms:
        m, c = R.leading_term()
        q = (m[0] - lead[0], m[1] - lead[1], m[2] - lead[2])
        if min(q) < 0 or grlex_key(q) >= grlex_key(last):
            raise NotPerfectSquareError("not a perfect square: nonzero residual")
        t = MultiPoly._raw({q: c / two}, F.variables)
        R = R - (G * t).scale(two) - t * t
        G = G + t
        last = q
    return G


# -- parsing ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyzi])|(\*\*|[-+*/^()]))")


def parse_poly(text: str, variables: Iterable[str] = VARS) -> MultiPoly:
    """Parse polynomial text such as the output of :meth:`MultiPoly.to_text`.

    Accepts integers, ``/`` between constants, ``i``, the variables x, y, z,
    ``^`` or ``**`` for powers, ``*``, ``+``, ``-`` and parentheses.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    variables = _canon_vars(variables)
    it = _Parser(tokens, variables)
    result = it.expr()
    if it.i != len(tokens):
        raise ValueError(f"trailing tokens in {text!r}")
    return result


class _Parser:
    def __init__(self, tokens, variables):
        self.t = tokens
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.power()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.power()
            if op == "*":
                acc = acc * rhs
            else:
                if rhs.degree() not in (0, ZERO_DEGREE):
                    raise ValueError("division by a non-constant")
                acc = acc / rhs.coefficient((0, 0, 0))
        return acc

    def power(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            return base ** int(tok)
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ValueError("unexpected end of input")
        if tok.isdigit():
            return MultiPoly.constant(int(tok), self.variables)
        if tok == "i":
            return MultiPoly.constant(GaussianRational(0, 1), self.variables)
        if tok in VARS:
            e = [0, 0, 0]
            e[_INDEX[tok]] = 1
            return MultiPoly({tuple(e): 1}, _canon_vars(self.variables + (tok,)))
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise ValueError("missing ')'")
            return inner
        if tok == "-":
            return -self.power()
        raise ValueError(f"unexpected token {tok!r}")
