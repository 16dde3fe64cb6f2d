import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

import radius_oracles
from errors import NegativeEntry, ShapeMismatch
from radius_oracles import ThetaScanConfig


class TestNumericalRadius:
    """Tests for the theta-scan numerical radius oracle"""

    def test_nilpotent(self, nilpotent):
        assert radius_oracles.numerical_radius(nilpotent) == pytest.approx(0.5, abs=1e-12)

    def test_one_by_one(self):
        assert radius_oracles.numerical_radius([[3 - 4j]]) == pytest.approx(5.0)

    def test_zero_matrix(self):
        assert radius_oracles.numerical_radius(np.zeros((3, 3))) == 0.0

    def test_normal_matrix_equals_spectral_radius(self, rng):
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
        A = q @ np.diag([1.0, -2.0, 0.5j, 1.5 + 1j, 0.1]) @ q.T
        assert radius_oracles.spectral_radius(A) == pytest.approx(2.0)
        assert radius_oracles.numerical_radius(A) == pytest.approx(2.0, rel=1e-10)

    def test_peak_between_grid_points_beats_many_grid_peaks(self):
        h = 2.0 * np.pi / radius_oracles.DEFAULT_SCAN.coarse_points
        near = (1.0 - 1e-6) * np.exp(-1j * h * 90 * np.arange(1, 5))
        A = np.diag(np.concatenate([[np.exp(-0.5j * h)], near]))
        assert radius_oracles.numerical_radius(A) == pytest.approx(1.0, abs=1e-9)
        assert radius_oracles.spectral_radius(A) <= radius_oracles.numerical_radius(A) + 1e-12

    def test_repeated_matrix_is_served_from_cache(self, cgauss):
        A = cgauss(3, 3)
        first = radius_oracles.numerical_radius(A)
        hits = radius_oracles._cached_numerical_radius.cache_info().hits
        assert radius_oracles.numerical_radius(A.copy()) == first
        assert radius_oracles._cached_numerical_radius.cache_info().hits == hits + 1

    def test_rotation_invariance(self, cgauss):
        A = cgauss(4, 4)
        w = radius_oracles.numerical_radius(A)
        assert radius_oracles.numerical_radius(np.exp(0.7j) * A) == pytest.approx(w, rel=1e-10)

    def test_between_half_norm_and_norm(self, cgauss):
        A = cgauss(6, 6)
        w = radius_oracles.numerical_radius(A)
        norm = np.linalg.norm(A, 2)
        assert 0.5 * norm - 1e-12 <= w <= norm + 1e-12
        assert radius_oracles.spectral_radius(A) <= w + 1e-10

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 13, 20])
    def test_lower_shift_closed_form(self, n):
        w = radius_oracles.numerical_radius(radius_oracles.lower_shift(n))
        assert w == pytest.approx(radius_oracles.shift_radius(n), abs=1e-8)

    def test_coarse_scan_still_refines(self, nilpotent):
        cfg = ThetaScanConfig(coarse_points=16)
        assert radius_oracles.numerical_radius(nilpotent * 2, cfg) == pytest.approx(1.0, abs=1e-10)

    def test_scan_config_validation(self):
        with pytest.raises(ValueError):
            ThetaScanConfig(coarse_points=8)
        with pytest.raises(ValueError):
            ThetaScanConfig(refine_tol=0.0)
        with pytest.raises(ValueError):
            ThetaScanConfig(max_refines=0)

    def test_rejects_rectangular(self):
        with pytest.raises(ShapeMismatch):
            radius_oracles.numerical_radius(np.zeros((2, 3)))


class TestSpectralRadius:

    def test_spectral_radius(self):
        assert radius_oracles.spectral_radius([[0, 4], [1, 0]]) == pytest.approx(2.0)

    def test_nilpotent_has_zero_spectral_radius(self, nilpotent):
        assert radius_oracles.spectral_radius(nilpotent) == pytest.approx(0.0, abs=1e-12)


class TestNonnegativeOracle:
    """Tests for numrad_nonneg"""

    def test_matches_theta_scan(self, rng):
        T = rng.uniform(0, 1, (5, 5))
        assert radius_oracles.numrad_nonneg(T) == pytest.approx(radius_oracles.numerical_radius(T), rel=1e-9)

    def test_rejects_negative_entries(self):
        with pytest.raises(NegativeEntry):
            radius_oracles.numrad_nonneg([[1.0, -0.5], [0.0, 1.0]])

    def test_rejects_complex_entries(self):
        with pytest.raises(NegativeEntry):
            radius_oracles.numrad_nonneg([[1.0, 1j], [0.0, 1.0]])

    @seed(4321)
    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.floats(min_value=0, max_value=5, allow_nan=False), min_size=4, max_size=4),
           st.floats(min_value=0, max_value=1))
    def test_monotone_in_entries(self, entries, scale):
        T = np.array(entries).reshape(2, 2)
        S = T * scale
        assert radius_oracles.numrad_nonneg(S) <= radius_oracles.numrad_nonneg(T) + 1e-12


class TestClosedForms:
    """Tests for the sup-theta norm and the closed-form radii"""

    def test_sup_theta_norm_of_equal_pair(self, cgauss):
        S = cgauss(3, 3)
        w = radius_oracles.numerical_radius(S)
        assert radius_oracles.sup_theta_norm(S, S) == pytest.approx(2 * w, rel=1e-8)

    def test_sup_theta_norm_shape_check(self):
        with pytest.raises(ShapeMismatch):
            radius_oracles.sup_theta_norm(np.zeros((2, 3)), np.zeros((2, 3)))

    def test_sup_theta_norm_of_zeros(self):
        assert radius_oracles.sup_theta_norm(np.zeros((2, 3)), np.zeros((3, 2))) == 0.0

    def test_rank_one_row(self, cgauss):
        row = cgauss(5)
        R = np.zeros((5, 5), dtype=complex)
        R[0] = row
        expected = radius_oracles.rank_one_row_radius(row)
        assert expected == pytest.approx(0.5 * (abs(row[0]) + np.linalg.norm(row)))
        assert radius_oracles.numerical_radius(R) == pytest.approx(expected, rel=1e-8)

    def test_shift_radius_values(self):
        assert radius_oracles.shift_radius(2) == pytest.approx(0.5)
        assert radius_oracles.shift_radius(3) == pytest.approx(math.sqrt(2) / 2)
