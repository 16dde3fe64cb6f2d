import math

import numpy as np
import pytest

import bound_engine as be
from bound_engine import BoundMatrixKind
from errors import NotCommuting, ShapeMismatch, UnsupportedKind
from matrix_core import BlockMatrix, flatten, kron, operator_norm
from radius_oracles import numerical_radius


def random_blocks(cgauss, dims):
    return BlockMatrix.from_grid([[cgauss(di, dj) for dj in dims] for di in dims])


class TestBoundMatrix:
    """Tests for the n x n bound recipes"""

    @pytest.mark.parametrize("dims", [[2, 2], [1, 3, 2], [3, 3, 3], [2, 1, 4, 2]])
    def test_chain_and_validity(self, cgauss, dims):
        M = random_blocks(cgauss, dims)
        w = numerical_radius(flatten(M))
        thm2 = be.bound_blockmatrix(M, BoundMatrixKind.THM2)
        aok_b = be.bound_blockmatrix(M, BoundMatrixKind.AOK_B)
        hou_du = be.bound_blockmatrix(M, BoundMatrixKind.HOU_DU)
        assert w <= thm2 * (1 + 1e-9)
        assert thm2 <= aok_b * (1 + 1e-9)
        assert aok_b <= hou_du * (1 + 1e-9)

    def test_aok_a_equals_aok_b(self, cgauss):
        M = random_blocks(cgauss, [2, 3, 1])
        assert be.bound_blockmatrix(M, BoundMatrixKind.AOK_A) == pytest.approx(
            be.bound_blockmatrix(M, BoundMatrixKind.AOK_B), rel=1e-10)

    def test_thm2_matrix_is_upper_triangular(self, cgauss):
        c = be.bound_matrix(random_blocks(cgauss, [2, 2, 2]), BoundMatrixKind.THM2)
        assert np.all(np.tril(c, -1) == 0)
        assert np.all(c >= 0)

    def test_bhunia_on_equal_spaces(self, cgauss):
        M = random_blocks(cgauss, [3, 3])
        bound = be.bound_blockmatrix(M, BoundMatrixKind.BHUNIA_ADM)
        assert numerical_radius(flatten(M)) <= bound * (1 + 1e-9)

    def test_bhunia_needs_square_blocks(self, cgauss):
        with pytest.raises(UnsupportedKind):
            be.bound_matrix(random_blocks(cgauss, [2, 3]), BoundMatrixKind.BHUNIA_ADM)

    def test_unknown_kind(self, cgauss):
        with pytest.raises(ValueError):
            be.bound_matrix(random_blocks(cgauss, [2, 2]), "NOPE")

    def test_zero_off_diagonal_blocks(self, cgauss):
        A, D = cgauss(2, 2), cgauss(3, 3)
        M = BlockMatrix.from_grid([[A, np.zeros((2, 3))], [np.zeros((3, 2)), D]])
        expected = max(numerical_radius(A), numerical_radius(D))
        assert be.bound_blockmatrix(M, BoundMatrixKind.THM2) == pytest.approx(expected, rel=1e-9)


class TestTwoByTwo:
    """Tests for the closed-form 2 x 2 bound"""

    def test_cor1_matches_thm2(self, cgauss):
        A, B, C, D = cgauss(2, 2), cgauss(2, 3), cgauss(3, 2), cgauss(3, 3)
        M = BlockMatrix.from_grid([[A, B], [C, D]])
        assert be.bound_cor1(A, B, C, D) == pytest.approx(
            be.bound_blockmatrix(M, BoundMatrixKind.THM2), rel=1e-10)

    def test_cor1_refines_paul_bag(self, cgauss):
        A, B, C, D = cgauss(3, 3), cgauss(3, 2), cgauss(2, 3), cgauss(2, 2)
        cor1 = be.bound_cor1(A, B, C, D)
        assert numerical_radius(flatten(BlockMatrix.from_grid([[A, B], [C, D]]))) <= cor1 * (1 + 1e-9)
        assert cor1 <= be.paul_bag_bound(A, B, C, D) * (1 + 1e-12)

    def test_cor1_closed_form_values(self):
        assert be.cor1_closed_form(1.0, 1.0, 1.0, 0.5, 0.0) == pytest.approx((4 + math.sqrt(7)) / 4)

    def test_shape_check(self):
        with pytest.raises(ShapeMismatch):
            be.bound_cor1(np.eye(2), np.zeros((2, 2)), np.zeros((3, 2)), np.eye(3))


class TestSingleOperator:

    def test_nilpotent(self, nilpotent):
        assert be.bound_single(nilpotent) == pytest.approx(math.sqrt(3) / 2)

    def test_between_radius_and_norm(self, cgauss):
        B = cgauss(5, 5)
        value = be.bound_single(B)
        assert numerical_radius(B) <= value * (1 + 1e-9)
        assert value <= operator_norm(B) * (1 + 1e-12)


class TestSums:
    """Tests for the off-diagonal sum chain and positive sums"""

    def test_cor6_chain(self, cgauss):
        B, C = cgauss(3, 2), cgauss(2, 3)
        norm_sum = operator_norm(B + C.conj().T)
        cor6 = be.bound_sum_cor6(B, C)
        assert norm_sum <= cor6 * (1 + 1e-9)
        assert cor6 <= be.hizliyel_bound(B, C) * (1 + 1e-12)

    def test_cor6_shape_check(self):
        with pytest.raises(ShapeMismatch):
            be.bound_sum_cor6(np.zeros((3, 2)), np.zeros((3, 2)))

    def test_positive_sum(self, cgauss):
        G, H = cgauss(4, 4), cgauss(4, 4)
        P, Q = G.conj().T @ G, H.conj().T @ H
        norm_sum = operator_norm(P + Q)
        for alpha, t in [(0.0, 0.0), (0.3, 0.8), (1.0, 1.0)]:
            assert norm_sum <= be.bound_positive_sum(P, Q, alpha, t) * (1 + 1e-9)

    def test_positive_sum_at_half_is_kittaneh(self, cgauss):
        G, H = cgauss(3, 3), cgauss(3, 3)
        P, Q = G.conj().T @ G, H.conj().T @ H
        assert be.bound_positive_sum(P, Q, 0.5, 0.5) == pytest.approx(be.kittaneh_positive_sum(P, Q), rel=1e-9)

    def test_positive_sum_parameter_range(self):
        with pytest.raises(ValueError):
            be.bound_positive_sum(np.eye(2), np.eye(2), 1.5, 0.5)

    def test_positive_sum_shape_check(self):
        with pytest.raises(ShapeMismatch):
            be.bound_positive_sum(np.eye(2), np.eye(3), 0.5, 0.5)


class TestProducts:
    """Tests for product and Aluthge bounds"""

    def test_nilpotent_pair(self, nilpotent):
        assert be.bound_product(nilpotent, nilpotent) == pytest.approx(math.sqrt(3) / 4)

    def test_commuting_pair(self, nilpotent):
        assert be.bound_product(nilpotent, nilpotent, commuting=True) == pytest.approx(math.sqrt(3) / 2)

    def test_product_bound_holds(self, cgauss):
        A, B = cgauss(4, 4), cgauss(4, 4)
        assert numerical_radius(A @ B) <= be.bound_product(A, B) * (1 + 1e-9)

    def test_commuting_check(self, cgauss):
        with pytest.raises(NotCommuting):
            be.bound_product(cgauss(3, 3), cgauss(3, 3), commuting=True)

    def test_aluthge_of_normal_is_itself(self):
        A = np.diag([2.0, -1.0, 0.5j])
        assert np.allclose(be.aluthge(A), A)

    def test_aluthge_bounds(self, cgauss):
        A = cgauss(4, 4)
        w = numerical_radius(A)
        assert w <= be.aluthge_upper(A, 0.3) * (1 + 1e-9)
        assert numerical_radius(be.aluthge(A, 0.3)) <= be.aluthge_transform_bound(A, 0.3) * (1 + 1e-9)


class TestKronecker:
    """Tests for Kronecker product bounds"""

    def test_chain(self, rng, cgauss):
        A, B = rng.uniform(0, 1, (3, 3)), cgauss(2, 2)
        w = numerical_radius(kron(A, B))
        cor3 = be.bound_kron_cor3(A, B)
        assert w <= cor3 * (1 + 1e-9)
        assert cor3 <= be.khare_bound(A, B) * (1 + 1e-9)
        assert cor3 <= be.holbrook(A, B) * (1 + 1e-9)

    def test_bound_matrix_diagonal(self, cgauss):
        B = cgauss(2, 2)
        c = be.kron_bound_matrix(np.diag([2.0, 3.0]), B)
        w_b = numerical_radius(B)
        assert c[0, 0] == pytest.approx(2 * w_b)
        assert c[1, 1] == pytest.approx(3 * w_b)
        assert c[0, 1] == 0.0


class TestInnerProductLemma:

    def test_lemma4_on_random_vectors(self, rng, cgauss):
        A, B = cgauss(3, 2), cgauss(2, 3)
        rhs = be.lemma4_rhs(A, B)
        for _ in range(50):
            x = cgauss(2)
            y = cgauss(3)
            x, y = x / np.linalg.norm(x), y / np.linalg.norm(y)
            assert abs(np.vdot(y, A @ x)) + abs(np.vdot(x, B @ y)) <= rhs + 1e-10

    def test_lemma4_shape_check(self):
        with pytest.raises(ShapeMismatch):
            be.lemma4_rhs(np.zeros((3, 2)), np.zeros((3, 2)))
