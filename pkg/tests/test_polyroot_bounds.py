import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

import polyroot_bounds as pr
from errors import BadSpec
from polyroot_bounds import PolySpec
from radius_oracles import numerical_radius


coefficient = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


class TestPolySpec:
    """Tests for polynomial specifications"""

    def test_from_high_to_low(self):
        p = PolySpec.from_high_to_low([2, 0, 2, 2])
        assert p.coeffs == (1, 1, 0)
        assert p.n == 3
        assert p.a(1) == 1 and p.a(3) == 0

    def test_evaluation(self):
        p = PolySpec.from_high_to_low([1, 0, 1, 1])
        assert p(1.0) == pytest.approx(3.0)
        assert np.allclose(p.high_to_low(), [1, 0, 1, 1])

    def test_degree_too_small(self):
        with pytest.raises(BadSpec):
            PolySpec((1.0,))

    def test_zero_constant_term(self):
        with pytest.raises(BadSpec):
            PolySpec((0.0, 1.0))

    def test_zero_leading_coefficient(self):
        with pytest.raises(BadSpec):
            PolySpec.from_high_to_low([0, 1, 1])

    def test_non_finite(self):
        with pytest.raises(BadSpec):
            PolySpec((1.0, float("inf")))


class TestCompanion:

    def test_layout(self):
        C = pr.companion(PolySpec.from_high_to_low([1, 2, 3, 4]))
        assert np.allclose(C, [[-2, -3, -4], [1, 0, 0], [0, 1, 0]])

    def test_roots_are_eigenvalues(self):
        p = PolySpec.from_high_to_low([1, -6, 11, -6])
        assert np.allclose(np.sort(pr.roots(p).real), [1, 2, 3])
        assert pr.max_root_modulus(p) == pytest.approx(3.0)


class TestRootBounds:
    """Tests for estpoly, abd and the companion operator-matrix bound"""

    def test_cubic_example(self):
        p = PolySpec.from_high_to_low([1, 0, 1, 1])
        assert pr.bound_estpoly(p) == pytest.approx(1.46154, abs=1e-4)
        assert pr.bound_abd(p) == pytest.approx(1.4827, abs=1e-4)
        assert pr.max_root_modulus(p) == pytest.approx(1.2106, abs=1e-4)

    def test_square_example(self):
        p = PolySpec.from_high_to_low([1, 0, -1])
        assert pr.alpha(p) == pytest.approx(0.0)
        assert pr.bound_estpoly(p) == pytest.approx(1.0)
        assert pr.bound_estpoly(p) == pr.bound_abd(p)

    def test_lower_norm_and_alpha(self):
        p = PolySpec((3.0, 4.0, 1.0))
        assert pr.lower_norm(p) == pytest.approx(5.0)
        assert pr.alpha(p) == pytest.approx(0.5)

    def test_companion_bound_matches_estimate(self, cgauss):
        p = PolySpec(tuple(cgauss(7)))
        assert pr.bound_companion_cor1(p) == pytest.approx(pr.bound_estpoly(p), rel=1e-10)

    def test_numerical_radius_of_companion(self, cgauss):
        p = PolySpec(tuple(cgauss(5)))
        assert numerical_radius(pr.companion(p)) <= pr.bound_estpoly(p) * (1 + 1e-9)

    @seed(2024)
    @settings(max_examples=40, deadline=None)
    @given(st.lists(coefficient, min_size=2, max_size=9).filter(lambda c: abs(c[0]) > 1e-3))
    def test_chain(self, coeffs):
        p = PolySpec(tuple(coeffs))
        est, abd = pr.bound_estpoly(p), pr.bound_abd(p)
        assert pr.alpha(p) >= -1e-12
        assert pr.max_root_modulus(p) <= est * (1 + 1e-8) + 1e-12
        assert est <= abd + 1e-12

    def test_strict_improvement(self):
        p = PolySpec.from_high_to_low([1, 0, 0, 1, 1])
        assert pr.alpha(p) > 0
        assert pr.bound_estpoly(p) < pr.bound_abd(p)

    def test_cosine_term(self):
        # z^n + a_1 with a single nonzero coefficient
        p = PolySpec((1.0,) + (0.0,) * 4)
        expected = 0.5 * (math.cos(math.pi / 5) + math.sqrt(math.cos(math.pi / 5) ** 2 + 4 - 0.5))
        assert pr.bound_estpoly(p) == pytest.approx(expected)
