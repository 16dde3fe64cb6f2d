"""Numerical radius upper bounds for operator matrices and their corollaries.

Every n x n recipe produces a nonnegative scalar matrix whose numerical radius
(evaluated with :func:`radius_oracles.numrad_nonneg`) bounds w of the
operator matrix.
"""

import logging
import math
from enum import Enum

import numpy as np

from errors import NotCommuting, ShapeMismatch, UnsupportedKind
from matrix_core import (BlockMatrix, as_cmatrix, as_square, frac_power, operator_norm,
                         polar)
from radius_oracles import DEFAULT_SCAN, ThetaScanConfig, numerical_radius, numrad_nonneg

logger = logging.getLogger('bound_engine')

COMMUTATOR_TOL = 1e-10


class BoundMatrixKind(str, Enum):
    HOU_DU = "HOU_DU"          # [||A_ij||]
    AOK_A = "AOK_A"            # w(A_ii) on the diagonal, ||A_ij|| elsewhere
    AOK_B = "AOK_B"            # upper triangular ||A_ij|| + ||A_ji||
    THM2 = "THM2"              # upper triangular, refined by w(A_ji A_ij)
    BHUNIA_ADM = "BHUNIA_ADM"  # square blocks only, built from |A_ij| and |A_ji*|


def _refined_entry(norm_ij: float, norm_ji: float, w_product: float) -> float:
    """sqrt((x + y)^2 - (x y - w)), clamped at zero against rounding."""
    value = (norm_ij + norm_ji) ** 2 - (norm_ij * norm_ji - w_product)
    return math.sqrt(max(value, 0.0))


def _modulus(X) -> np.ndarray:
    """|X| = sqrt(X* X)."""
    X = as_cmatrix(X)
    return frac_power(X.conj().T @ X, 0.5)


def bound_matrix(M: BlockMatrix, kind: BoundMatrixKind,
                 cfg: ThetaScanConfig = DEFAULT_SCAN) -> np.ndarray:
    """The n x n nonnegative matrix of the chosen recipe."""
    kind = BoundMatrixKind(kind)
    if kind is BoundMatrixKind.BHUNIA_ADM and not M.has_square_blocks:
        raise UnsupportedKind("BHUNIA_ADM needs square blocks on equal spaces (row_dims == col_dims)")
    n = M.n
    out = np.zeros((n, n))
    norms = np.array([[operator_norm(M.block(i, j)) for j in range(n)] for i in range(n)])

    for i in range(n):
        if kind is BoundMatrixKind.HOU_DU:
            out[i, i] = norms[i, i]
        else:
            out[i, i] = numerical_radius(M.block(i, i), cfg)

    for i in range(n):
        for j in range(i + 1, n):
            if kind in (BoundMatrixKind.HOU_DU, BoundMatrixKind.AOK_A):
                out[i, j] = norms[i, j]
                out[j, i] = norms[j, i]
            elif kind is BoundMatrixKind.AOK_B:
                out[i, j] = norms[i, j] + norms[j, i]
            elif kind is BoundMatrixKind.THM2:
                # A_ji A_ij acts on H_j
                w_product = numerical_radius(M.block(j, i) @ M.block(i, j), cfg)
                out[i, j] = _refined_entry(norms[i, j], norms[j, i], w_product)
            else:
                a_ij, a_ji = M.block(i, j), M.block(j, i)
                left = operator_norm(_modulus(a_ij) + _modulus(a_ji.conj().T))
                right = operator_norm(_modulus(a_ij.conj().T) + _modulus(a_ji))
                out[i, j] = math.sqrt(left * right)
    return out


def bound_blockmatrix(M: BlockMatrix, kind: BoundMatrixKind,
                      cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Upper bound for w(flatten(M))."""
    value = numrad_nonneg(bound_matrix(M, kind, cfg))
    logger.debug(f"{BoundMatrixKind(kind).value} bound for n={M.n}: {value:.15g}")
    return value


def cor1_closed_form(w_a: float, w_d: float, norm_b: float, norm_c: float, w_cb: float) -> float:
    """1/2(w_a + w_d) + 1/2 sqrt((w_a - w_d)^2 + (nb + nc)^2 - (nb nc - w_cb))."""
    disc = (w_a - w_d) ** 2 + (norm_b + norm_c) ** 2 - (norm_b * norm_c - w_cb)
    return 0.5 * (w_a + w_d) + 0.5 * math.sqrt(max(disc, 0.0))


def _check_two_by_two(A, B, C, D):
    A, B, C, D = (as_cmatrix(X, name) for X, name in zip((A, B, C, D), "ABCD"))
    if A.shape[0] != A.shape[1] or D.shape[0] != D.shape[1]:
        raise ShapeMismatch("diagonal blocks A and D must be square")
    if B.shape != (A.shape[0], D.shape[0]) or C.shape != (D.shape[0], A.shape[0]):
        raise ShapeMismatch(
            f"off-diagonal blocks must be {(A.shape[0], D.shape[0])} and {(D.shape[0], A.shape[0])}, "
            f"got {B.shape} and {C.shape}")
    return A, B, C, D


def bound_cor1(A, B, C, D, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Closed-form bound for w([[A, B], [C, D]])."""
    A, B, C, D = _check_two_by_two(A, B, C, D)
    return cor1_closed_form(numerical_radius(A, cfg), numerical_radius(D, cfg),
                            operator_norm(B), operator_norm(C), numerical_radius(C @ B, cfg))


def paul_bag_bound(A, B, C, D, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """The earlier 2 x 2 bound that :func:`bound_cor1` refines."""
    A, B, C, D = _check_two_by_two(A, B, C, D)
    w_a, w_d = numerical_radius(A, cfg), numerical_radius(D, cfg)
    nb, nc = operator_norm(B), operator_norm(C)
    return 0.5 * (w_a + w_d) + 0.5 * math.sqrt((w_a - w_d) ** 2 + (nb + nc) ** 2)


def bound_single(B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """sqrt(||B||^2 - 1/4(||B||^2 - w(B^2)))."""
    B = as_square(B, "B")
    norm = operator_norm(B)
    return math.sqrt(max(norm ** 2 - 0.25 * (norm ** 2 - numerical_radius(B @ B, cfg)), 0.0))


def _check_pair(B, C):
    B, C = as_cmatrix(B, "B"), as_cmatrix(C, "C")
    if C.shape != (B.shape[1], B.shape[0]):
        raise ShapeMismatch(f"C must have shape {(B.shape[1], B.shape[0])}, got {C.shape}")
    return B, C


def bound_sum_cor6(B, C, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Upper end of ||B + C*|| <= 2 w([[0, B], [C, 0]]) <= sqrt(...)."""
    B, C = _check_pair(B, C)
    return _refined_entry(operator_norm(B), operator_norm(C), numerical_radius(C @ B, cfg))


def hizliyel_bound(B, C) -> float:
    """||B|| + ||C||, the triangle-inequality bound for 2 w([[0, B], [C, 0]])."""
    B, C = _check_pair(B, C)
    return operator_norm(B) + operator_norm(C)


def bound_positive_sum(A, B, alpha: float, t: float, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Upper bound for ||A + B|| with A, B positive semidefinite."""
    if not (0.0 <= alpha <= 1.0 and 0.0 <= t <= 1.0):
        raise ValueError(f"alpha and t must lie in [0, 1], got alpha={alpha}, t={t}")
    A, B = as_square(A, "A"), as_square(B, "B")
    if A.shape != B.shape:
        raise ShapeMismatch(f"A and B must have the same shape, got {A.shape} and {B.shape}")
    upper = operator_norm(frac_power(A, 1.0 - t) @ frac_power(B, 1.0 - alpha))
    lower = operator_norm(frac_power(B, alpha) @ frac_power(A, t))
    w_mid = numerical_radius(frac_power(B, alpha) @ A @ frac_power(B, 1.0 - alpha), cfg)
    return cor1_closed_form(operator_norm(A), operator_norm(B), upper, lower, w_mid)


def kittaneh_positive_sum(A, B) -> float:
    """1/2(||A|| + ||B||) + 1/2 sqrt((||A|| - ||B||)^2 + 4 ||A^1/2 B^1/2||^2)."""
    A, B = as_square(A, "A"), as_square(B, "B")
    na, nb = operator_norm(A), operator_norm(B)
    cross = operator_norm(frac_power(A, 0.5) @ frac_power(B, 0.5))
    return 0.5 * (na + nb) + 0.5 * math.sqrt((na - nb) ** 2 + 4.0 * cross ** 2)


def bound_product(A, B, commuting: bool = False, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Upper bound for w(AB)."""
    A, B = as_square(A, "A"), as_square(B, "B")
    if A.shape != B.shape:
        raise ShapeMismatch(f"A and B must have the same shape, got {A.shape} and {B.shape}")
    na, nb = operator_norm(A), operator_norm(B)
    if commuting:
        defect = operator_norm(A @ B - B @ A)
        if defect > COMMUTATOR_TOL * na * nb:
            raise NotCommuting(f"||AB - BA|| = {defect:.3e} exceeds {COMMUTATOR_TOL:g} * ||A|| ||B||")
    # |A|^2 = A*A and |B*|^2 = BB*
    root = math.sqrt(3.0 * na ** 2 * nb ** 2
                     + numerical_radius((A.conj().T @ A) @ (B @ B.conj().T), cfg))
    if commuting:
        return 0.5 * root
    return 0.5 * numerical_radius(B @ A, cfg) + 0.25 * root


def aluthge(A, t: float = 0.5) -> np.ndarray:
    """Generalized Aluthge transform |A|^t U |A|^(1-t)."""
    factors = polar(as_square(A, "A"))
    return as_cmatrix(frac_power(factors.modulus, t) @ factors.unitary_part
                      @ frac_power(factors.modulus, 1.0 - t))


def aluthge_upper(A, t: float = 0.5, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """1/2 w(A_t) + 1/2 ||A||, an upper bound for w(A)."""
    return 0.5 * numerical_radius(aluthge(A, t), cfg) + 0.5 * operator_norm(A)


def aluthge_transform_bound(A, t: float = 0.5, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """1/2 w(A) + 1/4 sqrt(3||A||^2 + w(|A|^2t |A*|^2(1-t))), an upper bound for w(A_t)."""
    A = as_square(A, "A")
    norm = operator_norm(A)
    mixed = frac_power(A.conj().T @ A, t) @ frac_power(A @ A.conj().T, 1.0 - t)
    return 0.5 * numerical_radius(A, cfg) + 0.25 * math.sqrt(3.0 * norm ** 2 + numerical_radius(mixed, cfg))


def kron_bound_matrix(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> np.ndarray:
    """The c-matrix for w(A kron B): the THM2 recipe with blocks A_ij = a_ij B."""
    A, B = as_square(A, "A"), as_square(B, "B")
    n = A.shape[0]
    w_b, norm_b = numerical_radius(B, cfg), operator_norm(B)
    defect = norm_b ** 2 - numerical_radius(B @ B, cfg)
    moduli = np.abs(A)
    c = np.diag(moduli.diagonal() * w_b)
    for i in range(n):
        for j in range(i + 1, n):
            value = (moduli[i, j] + moduli[j, i]) ** 2 * norm_b ** 2 - moduli[i, j] * moduli[j, i] * defect
            c[i, j] = math.sqrt(max(value, 0.0))
    return c


def bound_kron_cor3(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    return numrad_nonneg(kron_bound_matrix(A, B, cfg))


def holbrook(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """w(A) ||B||."""
    return numerical_radius(A, cfg) * operator_norm(B)


def khare_bound(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """w(C) with c_ii = |a_ii| w(B) and c_ij = |a_ij| ||B|| off the diagonal."""
    A, B = as_square(A, "A"), as_square(B, "B")
    moduli = np.abs(A)
    c = moduli * operator_norm(B)
    np.fill_diagonal(c, moduli.diagonal() * numerical_radius(B, cfg))
    return numrad_nonneg(c)


def lemma4_rhs(A, B, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """Coefficient bounding |<Ax, y>| + |<By, x>| for unit x, y; A: H1 -> H2, B: H2 -> H1."""
    A, B = as_cmatrix(A, "A"), as_cmatrix(B, "B")
    if B.shape != (A.shape[1], A.shape[0]):
        raise ShapeMismatch(f"B must have shape {(A.shape[1], A.shape[0])}, got {B.shape}")
    return _refined_entry(operator_norm(A), operator_norm(B), numerical_radius(B @ A, cfg))
