"""Spectral radius bounds for sums of products, operator sums, commutators and products.

All of them go through r(AB) = r(BA) <= w(BA): the spectral radius of
sum A_i B_i equals that of the operator matrix [B_i A_j], whose numerical
radius is bounded with the refined two-operator entries of bound_engine.
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from errors import ShapeMismatch
from matrix_core import CMatrix, as_cmatrix, as_square, operator_norm
from radius_oracles import DEFAULT_SCAN, ThetaScanConfig, numerical_radius, numrad_nonneg

logger = logging.getLogger('spectral_bounds')


@dataclass(frozen=True)
class FactorPair:
    """A: H_i -> H_1 (d_1 x d_i) and B: H_1 -> H_i (d_i x d_1)."""

    A: CMatrix
    B: CMatrix

    def __post_init__(self):
        A = as_cmatrix(self.A, "A")
        B = as_cmatrix(self.B, "B")
        if A.shape[1] != B.shape[0] or A.shape[0] != B.shape[1]:
            raise ShapeMismatch(f"factor shapes {A.shape} and {B.shape} do not form a pair")
        object.__setattr__(self, 'A', A)
        object.__setattr__(self, 'B', B)

    @property
    def outer_dim(self) -> int:
        return self.A.shape[0]

    def product(self) -> CMatrix:
        return as_cmatrix(self.A @ self.B)


def _check_pairs(pairs: Sequence[FactorPair]) -> Tuple[FactorPair, ...]:
    pairs = tuple(p if isinstance(p, FactorPair) else FactorPair(*p) for p in pairs)
    if not pairs:
        raise ShapeMismatch("at least one factor pair is required")
    d1 = pairs[0].outer_dim
    for k, p in enumerate(pairs):
        if p.outer_dim != d1:
            raise ShapeMismatch(f"pair {k} acts on a space of dimension {p.outer_dim}, expected {d1}")
    return pairs


def _two_by_two(w1: float, w2: float, discriminant: float) -> float:
    return 0.5 * (w1 + w2) + 0.5 * math.sqrt(max((w1 - w2) ** 2 + discriminant, 0.0))


def th3_matrix(pairs: Sequence[FactorPair], cfg: ThetaScanConfig = DEFAULT_SCAN) -> np.ndarray:
    pairs = _check_pairs(pairs)
    n = len(pairs)
    out = np.zeros((n, n))
    for i, p in enumerate(pairs):
        out[i, i] = numerical_radius(p.B @ p.A, cfg)
    for i in range(n):
        for j in range(i + 1, n):
            bi_aj = pairs[i].B @ pairs[j].A
            bj_ai = pairs[j].B @ pairs[i].A
            x, y = operator_norm(bi_aj), operator_norm(bj_ai)
            w = numerical_radius(bj_ai @ bi_aj, cfg)
            out[i, j] = math.sqrt(max((x + y) ** 2 - (x * y - w), 0.0))
    return out


def bound_th3(pairs: Sequence[FactorPair], cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Upper bound for r(sum A_i B_i)."""
    return numrad_nonneg(th3_matrix(pairs, cfg))


def scaled_th3_pair(A1, B1, A2, B2, t: float, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """bound_th3 after A1 -> t A1, B1 -> B1 / t; A1 B1 is unchanged."""
    if not t > 0:
        raise ValueError(f"scaling t must be positive, got {t}")
    A1, B1 = as_cmatrix(A1, "A1"), as_cmatrix(B1, "B1")
    return bound_th3([FactorPair(t * A1, B1 / t), FactorPair(A2, B2)], cfg)


def _quadruple(A1, B1, A2, B2):
    p1, p2 = _check_pairs([FactorPair(A1, B1), FactorPair(A2, B2)])
    return p1.B @ p1.A, p2.B @ p2.A, p1.B @ p2.A, p2.B @ p1.A


def bound_cor_s1(A1, B1, A2, B2, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Two-pair bound with the scaling t = sqrt(||B1 A2|| / ||B2 A1||) already optimised.

    A vanishing ||B2 A1|| makes the cross term 3 ||B1 A2|| * 0 = 0; the formula
    needs no special case.
    """
    b1a1, b2a2, b1a2, b2a1 = _quadruple(A1, B1, A2, B2)
    cross = 3.0 * operator_norm(b1a2) * operator_norm(b2a1) + numerical_radius(b2a1 @ b1a2, cfg)
    return _two_by_two(numerical_radius(b1a1, cfg), numerical_radius(b2a2, cfg), cross)


def kittaneh_ams(A1, B1, A2, B2) -> float:
    b1a1, b2a2, b1a2, b2a1 = _quadruple(A1, B1, A2, B2)
    return _two_by_two(operator_norm(b1a1), operator_norm(b2a2),
                       4.0 * operator_norm(b1a2) * operator_norm(b2a1))


def aok_stud(A1, B1, A2, B2, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    b1a1, b2a2, b1a2, b2a1 = _quadruple(A1, B1, A2, B2)
    return _two_by_two(numerical_radius(b1a1, cfg), numerical_radius(b2a2, cfg),
                       4.0 * operator_norm(b1a2) * operator_norm(b2a1))


def _square_pair(A, B):
    A, B = as_square(A, "A"), as_square(B, "B")
    if A.shape != B.shape:
        raise ShapeMismatch(f"A and B must have the same shape, got {A.shape} and {B.shape}")
    return A, B


def bound_sum_s2(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Upper bound for r(A + B)."""
    A, B = _square_pair(A, B)
    ab, ba = A @ B, B @ A
    cross = min(3.0 * operator_norm(ab) + numerical_radius(ab, cfg),
                3.0 * operator_norm(ba) + numerical_radius(ba, cfg))
    return _two_by_two(numerical_radius(A, cfg), numerical_radius(B, cfg), cross)


def aok_sum_baseline(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    A, B = _square_pair(A, B)
    cross = 4.0 * min(operator_norm(A @ B), operator_norm(B @ A))
    return _two_by_two(numerical_radius(A, cfg), numerical_radius(B, cfg), cross)


def bound_commutator_s3(A, B, sign: int = 1, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Upper bound for r(AB + sign * BA).

    The bound is the same for sign = +1 and sign = -1; ``sign`` is only
    validated, so one call covers both the anticommutator and the commutator.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    A, B = _square_pair(A, B)
    a2, b2 = A @ A, B @ B
    cross = 3.0 * operator_norm(a2) * operator_norm(b2) + min(numerical_radius(a2 @ b2, cfg),
                                                              numerical_radius(b2 @ a2, cfg))
    return _two_by_two(numerical_radius(A @ B, cfg), numerical_radius(B @ A, cfg), cross)


def aok_commutator_baseline(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    A, B = _square_pair(A, B)
    cross = 4.0 * operator_norm(A @ A) * operator_norm(B @ B)
    return _two_by_two(numerical_radius(A @ B, cfg), numerical_radius(B @ A, cfg), cross)


def _s4_minima(A, B) -> Tuple[float, float]:
    na, nb = operator_norm(A), operator_norm(B)
    m_ab = min(na * operator_norm(A @ B @ B), nb * operator_norm(A @ A @ B))
    m_ba = min(na * operator_norm(B @ B @ A), nb * operator_norm(B @ A @ A))
    return m_ab, m_ba


def bound_commutator_s4(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> Tuple[float, float]:
    """Two upper bounds for r(AB +/- BA), one led by w(AB) and one by w(BA)."""
    A, B = _square_pair(A, B)
    m_ab, m_ba = _s4_minima(A, B)
    a2b2, b2a2 = A @ A @ B @ B, B @ B @ A @ A
    first = numerical_radius(A @ B, cfg) + 0.5 * math.sqrt(3.0 * m_ab + numerical_radius(a2b2, cfg))
    second = numerical_radius(B @ A, cfg) + 0.5 * math.sqrt(3.0 * m_ba + numerical_radius(b2a2, cfg))
    return first, second


def aok_commutator_pair_baseline(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> Tuple[float, float]:
    A, B = _square_pair(A, B)
    m_ab, m_ba = _s4_minima(A, B)
    return (numerical_radius(A @ B, cfg) + math.sqrt(m_ab),
            numerical_radius(B @ A, cfg) + math.sqrt(m_ba))


def _quarter_form(w_ab: float, w_ba: float, gamma: float) -> float:
    return 0.25 * (w_ab + w_ba) + 0.25 * math.sqrt(max((w_ab - w_ba) ** 2 + gamma, 0.0))


def bound_product_s5(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Upper bound for r(AB)."""
    A, B = _square_pair(A, B)
    bab, aba = B @ A @ B, A @ B @ A
    gamma = min(3.0 * operator_norm(A) * operator_norm(bab) + numerical_radius(A @ bab, cfg),
                3.0 * operator_norm(B) * operator_norm(aba) + numerical_radius(B @ aba, cfg))
    return _quarter_form(numerical_radius(A @ B, cfg), numerical_radius(B @ A, cfg), gamma)


def aok_product_baseline(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    A, B = _square_pair(A, B)
    gamma = 4.0 * min(operator_norm(A) * operator_norm(B @ A @ B),
                      operator_norm(B) * operator_norm(A @ B @ A))
    return _quarter_form(numerical_radius(A @ B, cfg), numerical_radius(B @ A, cfg), gamma)
