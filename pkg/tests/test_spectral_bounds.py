import numpy as np
import pytest

import spectral_bounds as sb
from errors import ShapeMismatch
from radius_oracles import spectral_radius


def relaxed(value, scale=1.0):
    return value * (1 + 1e-9) + 1e-12 * scale


class TestFactorPair:
    """Tests for FactorPair validation"""

    def test_shapes(self, cgauss):
        pair = sb.FactorPair(cgauss(3, 2), cgauss(2, 3))
        assert pair.outer_dim == 3
        assert pair.product().shape == (3, 3)

    def test_mismatched_shapes(self, cgauss):
        with pytest.raises(ShapeMismatch):
            sb.FactorPair(cgauss(3, 2), cgauss(3, 2))

    def test_pairs_must_share_outer_space(self, cgauss):
        with pytest.raises(ShapeMismatch):
            sb.bound_th3([sb.FactorPair(cgauss(3, 2), cgauss(2, 3)),
                          sb.FactorPair(cgauss(2, 2), cgauss(2, 2))])

    def test_needs_a_pair(self):
        with pytest.raises(ShapeMismatch):
            sb.bound_th3([])


class TestSumsOfProducts:
    """Tests for r(A1 B1 + A2 B2) bounds"""

    @pytest.mark.parametrize("p,q", [(1, 1), (2, 3), (4, 2)])
    def test_chain(self, cgauss, p, q):
        A1, B1, A2, B2 = cgauss(3, p), cgauss(p, 3), cgauss(3, q), cgauss(q, 3)
        r = spectral_radius(A1 @ B1 + A2 @ B2)
        cor_s1 = sb.bound_cor_s1(A1, B1, A2, B2)
        stud = sb.aok_stud(A1, B1, A2, B2)
        assert r <= relaxed(cor_s1)
        assert cor_s1 <= relaxed(stud)
        assert stud <= relaxed(sb.kittaneh_ams(A1, B1, A2, B2))
        assert cor_s1 <= relaxed(sb.bound_th3([(A1, B1), (A2, B2)]))

    def test_optimal_scaling_reaches_closed_form(self, cgauss):
        A1, B1, A2, B2 = cgauss(3, 2), cgauss(2, 3), cgauss(3, 2), cgauss(2, 3)
        t = np.sqrt(np.linalg.norm(B1 @ A2, 2) / np.linalg.norm(B2 @ A1, 2))
        assert sb.scaled_th3_pair(A1, B1, A2, B2, t) == pytest.approx(sb.bound_cor_s1(A1, B1, A2, B2), rel=1e-9)

    def test_scaling_must_be_positive(self, cgauss):
        with pytest.raises(ValueError):
            sb.scaled_th3_pair(cgauss(2, 2), cgauss(2, 2), cgauss(2, 2), cgauss(2, 2), 0.0)

    def test_vanishing_cross_term(self):
        A1 = np.array([[1.0, 0.0], [0.0, 0.0]])
        A2 = np.array([[0.0, 0.0], [0.0, 2.0]])
        # both cross products vanish, leaving max(w(B1 A1), w(B2 A2))
        assert sb.bound_cor_s1(A1, A1, A2, A2) == pytest.approx(4.0)

    def test_three_pairs(self, cgauss):
        pairs = [(cgauss(3, d), cgauss(d, 3)) for d in (1, 2, 4)]
        total = sum(A @ B for A, B in pairs)
        assert spectral_radius(total) <= relaxed(sb.bound_th3(pairs))


class TestSumsAndCommutators:
    """Tests for r(A + B), r(AB +/- BA) and r(AB)"""

    def test_sum(self, cgauss):
        A, B = cgauss(4, 4), cgauss(4, 4)
        s2 = sb.bound_sum_s2(A, B)
        assert spectral_radius(A + B) <= relaxed(s2)
        assert s2 <= relaxed(sb.aok_sum_baseline(A, B))

    def test_commutators(self, cgauss):
        A, B = cgauss(4, 4), cgauss(4, 4)
        s3 = sb.bound_commutator_s3(A, B)
        assert sb.bound_commutator_s3(A, B, sign=-1) == s3
        assert spectral_radius(A @ B + B @ A) <= relaxed(s3)
        assert spectral_radius(A @ B - B @ A) <= relaxed(s3)
        assert s3 <= relaxed(sb.aok_commutator_baseline(A, B))

    def test_commutator_sign(self):
        with pytest.raises(ValueError):
            sb.bound_commutator_s3(np.eye(2), np.eye(2), sign=2)

    def test_commutator_pair(self, cgauss):
        A, B = cgauss(3, 3), cgauss(3, 3)
        first, second = sb.bound_commutator_s4(A, B)
        base_first, base_second = sb.aok_commutator_pair_baseline(A, B)
        r = max(spectral_radius(A @ B + B @ A), spectral_radius(A @ B - B @ A))
        assert r <= relaxed(first) and r <= relaxed(second)
        assert first <= relaxed(base_first)
        assert second <= relaxed(base_second)

    def test_product_identity(self):
        assert sb.bound_product_s5(np.eye(3), np.eye(3)) == pytest.approx(1.0)

    def test_product(self, cgauss):
        A, B = cgauss(5, 5), cgauss(5, 5)
        s5 = sb.bound_product_s5(A, B)
        assert spectral_radius(A @ B) <= relaxed(s5)
        assert s5 <= relaxed(sb.aok_product_baseline(A, B))

    def test_square_pair_check(self):
        with pytest.raises(ShapeMismatch):
            sb.bound_sum_s2(np.eye(2), np.eye(3))
