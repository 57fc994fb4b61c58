from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gaussians, nonzero, polys
from kellipse.errors import CommonComponentError, NotOnCurveError, NotPerfectSquareError
from kellipse.exactalg import (
    GaussianRational,
    I,
    MultiPoly,
    UniPoly,
    bareiss_det,
    complex_roots,
    gens,
    homogenize,
    initial_form,
    interpolate,
    parse_poly,
    poly_gcd,
    poly_sqrt,
    rational_det,
    resultant,
    univariate_coefficients,
)
from kellipse.exactalg.univariate import scalar_resultant, squarefree_decomposition

CASES = settings(max_examples=100, deadline=None)
x, y = gens(("x", "y"))


class TestGaussian:
    def test_i_squared(self):
        assert I * I == -1

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            GaussianRational(0.5)

    @CASES
    @given(gaussians, gaussians)
    def test_division_inverts_multiplication(self, a, b):
        if b:
            assert (a * b) / b == a

    def test_norm_and_conjugate(self):
        z = GaussianRational(3, 4)
        assert z.norm() == 25
        assert z * z.conjugate() == 25


class TestRingAxioms:
    @CASES
    @given(polys(), polys(), polys())
    def test_associative_commutative(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a

    @CASES
    @given(polys(), polys(), polys())
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @CASES
    @given(polys())
    def test_identities(self, a):
        assert a + 0 == a
        assert a * 1 == a
        assert (a - a).is_zero()
        assert a**2 == a * a


class TestPolySqrt:
    @CASES
    @given(nonzero(polys(max_deg=6, max_terms=4, variables=("x", "y", "z"))), gaussians.filter(bool))
    def test_round_trip(self, g, c):
        root = poly_sqrt((g * g).scale(c))
        assert root == g.monic()

    def test_rejects_non_square(self):
        with pytest.raises(NotPerfectSquareError):
            poly_sqrt(x**2 + y)

    def test_known_square(self):
        assert poly_sqrt((2 * x + 4 * y - 5) ** 2) == (2 * x + 4 * y - 5).monic()


class TestInterpolation:
    @CASES
    @given(polys(max_deg=4, max_terms=6), st.integers(4, 6), st.integers(-3, 3))
    def test_round_trip(self, p, bound, offset):
        pts = [Fraction(offset + i) for i in range(bound + 1)]
        samples = [((a, b), p.evaluate((a, b))) for a in pts for b in pts]
        assert interpolate(samples, bound) == p

    def test_rejects_incomplete_grid(self):
        samples = [((a, b), 0) for a in range(3) for b in range(3)][:-1]
        with pytest.raises(ValueError):
            interpolate(samples, 2)


class TestResultant:
    @CASES
    @given(
        nonzero(polys(max_deg=2, max_terms=4, complex_coeffs=False)),
        nonzero(polys(max_deg=2, max_terms=4, complex_coeffs=False)),
        st.fractions(min_value=-5, max_value=5, max_denominator=7),
    )
    def test_specialization(self, g, h, x0):
        # the interpolated resultant, evaluated off the sample grid, must equal the
        # Sylvester determinant of the specialised formal coefficient lists
        g = g + y**2
        h = h + x * y + 1
        try:
            res = resultant(g, h, "y", strict=False)
        except ValueError:
            return
        fc = univariate_coefficients(g, "y", g.degree_in("y"), {"x": x0})
        hc = univariate_coefficients(h, "y", h.degree_in("y"), {"x": x0})
        assert res(GaussianRational(x0)) == scalar_resultant(fc, hc, bareiss_det)

    def test_circle_line(self):
        res = resultant(x**2 + y**2 - 1, y - x, "y")
        assert res == UniPoly((-1, 0, 2), "x")

    def test_common_component(self):
        with pytest.raises(CommonComponentError):
            resultant((x - y) * (x + 1), (x - y) * (y + 2), "y")


class TestHomogenize:
    @CASES
    @given(nonzero(polys()))
    def test_idempotent(self, p):
        H = homogenize(p)
        assert H.is_homogeneous()
        assert H.dehomogenize() == p
        assert homogenize(H.dehomogenize()) == H

    def test_rejects_z(self):
        with pytest.raises(ValueError):
            homogenize(homogenize(x + 1))


class TestUnivariate:
    def test_squarefree_decomposition(self):
        u = UniPoly((-1, 1))  # t - 1
        v = UniPoly((2, 0, 1))  # t^2 + 2
        prod = _mul(_mul(u, u), _mul(u, v))
        dec = squarefree_decomposition(prod)
        assert {m for _, m in dec} == {1, 3}
        assert not prod.is_squarefree()
        assert poly_gcd(prod, prod.derivative()).degree() == 2

    def test_complex_roots_multiplicity(self):
        u = UniPoly((-1, 1))
        roots = complex_roots(_mul(_mul(u, u), UniPoly((1, 0, 1))))
        mults = sorted(m for _, m in roots)
        assert mults == [1, 1, 2]
        assert any(abs(r - 1) < 1e-12 and m == 2 for r, m in roots)


def _mul(a: UniPoly, b: UniPoly) -> UniPoly:
    out = [GaussianRational(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, p in enumerate(a.coeffs):
        for j, q in enumerate(b.coeffs):
            out[i + j] = out[i + j] + p * q
    return UniPoly(tuple(out))


class TestComplexRoots:
    @CASES
    @given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=1, max_size=8))
    def test_multiplicities_and_residuals(self, roots):
        coeffs = [1 + 0j]
        for r in roots:
            # multiply by (t - r); coefficients run from degree 0 upwards
            coeffs = [lo - r * hi for lo, hi in zip([0j] + coeffs, coeffs + [0j])]
        p = UniPoly(tuple(coeffs))
        found = complex_roots(p)
        assert sum(m for _, m in found) == len(roots)
        scale = sum(abs(c) for c in coeffs)
        for z, _ in found:
            assert abs(p(z)) <= 1e-8 * scale * max(1.0, abs(z)) ** len(roots)

    def test_examples(self):
        assert sorted(m for _, m in complex_roots(UniPoly((1, 0, 1)))) == [1, 1]
        (r, m), = complex_roots(UniPoly((4, -4, 1)))
        assert m == 2 and abs(r - 2) < 1e-12
        assert all(abs(abs(z) - 1) < 1e-12 for z, _ in complex_roots(UniPoly((-1, 0, 0, 1))))


class TestSpecExamples:
    def test_resultant_examples(self):
        assert resultant(x - 1, x + 1, "x").degree() == 0
        with pytest.raises(CommonComponentError):
            resultant(x + y, x + y, "y")

    def test_interpolate_examples(self):
        g = [((a, b), a * a + b * b) for a in range(3) for b in range(3)]
        assert interpolate(g, 2) == x**2 + y**2
        assert interpolate([((a, b), 7) for a in range(3) for b in range(3)], 2) == 7

    def test_interpolate_duplicates(self):
        with pytest.raises(ValueError):
            interpolate([((0, 0), 1), ((0, 0), 1)], 1)

    def test_zero_degree_sentinel(self):
        zero = x - x
        assert zero.degree() != -1 and zero.degree() < 0


class TestMisc:
    def test_bareiss_matches_rational_det(self):
        M = [[Fraction(2), Fraction(1, 3), 0], [1, 1, Fraction(-1, 2)], [0, 4, 5]]
        assert rational_det(M) == Fraction(2 * (5 + 2) - Fraction(1, 3) * 5)

    def test_initial_form_node(self):
        assert initial_form(y**2 - x**2 - x**3, (0, 0)) == y**2 - x**2

    def test_initial_form_off_curve(self):
        with pytest.raises(NotOnCurveError):
            initial_form(x**2 + y**2 - 1, (0, 0))

    @CASES
    @given(polys())
    def test_parse_round_trip(self, p):
        assert parse_poly(p.to_text()) == p if not p.is_zero() else True

    def test_evaluate_exact_and_float(self):
        p = x**2 + I * y
        assert p.evaluate((1, 2)) == GaussianRational(1, 2)
        assert abs(p.evaluate((1.0, 2.0)) - (1 + 2j)) < 1e-15
