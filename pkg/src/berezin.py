"""Berezin radius and Berezin norm on finite sections of reproducing kernel spaces.

Suprema over the domain are replaced by maxima over a fixed grid of sample
points, so every computed quantity is a lower approximation. Bounds and the
quantities they are compared with always share the same grid.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from bound_engine import cor1_closed_form
from errors import DimMismatch, GridTooLarge, ShapeMismatch
from matrix_core import BlockMatrix, CMatrix, as_cmatrix, as_square, operator_norm
from models import BoundReport
from radius_oracles import numrad_nonneg, shift_radius

logger = logging.getLogger('berezin')

KERNEL_UNIT_TOL = 1e-12
MAX_PRODUCT_POINTS = 2_000_000

# Default Hardy grid
RADIAL_LEVELS = 10
ANGULAR_COUNT = 64
SWEEP_STEPS = 32
SWEEP_ANGLES = 8


@dataclass(frozen=True)
class KernelSpace:
    """A truncated reproducing kernel space: C^dim sampled at a fixed set of domain points.

    kernel_fn maps an array of points to the dim x P matrix of unnormalised
    kernel coordinates, one column per point.
    """

    dim: int
    sample_points: np.ndarray
    kernel_fn: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise DimMismatch(f"kernel space dimension must be positive, got {self.dim}")
        points = np.array(self.sample_points, dtype=np.complex128).ravel()
        if points.size == 0:
            raise ShapeMismatch("a kernel space needs at least one sample point")
        points.setflags(write=False)
        object.__setattr__(self, 'sample_points', points)

    def kernels(self) -> np.ndarray:
        K = np.asarray(self.kernel_fn(self.sample_points), dtype=np.complex128)
        if K.shape != (self.dim, self.sample_points.size):
            raise DimMismatch(f"kernel_fn returned shape {K.shape}, expected {(self.dim, self.sample_points.size)}")
        return K

    def kernel_norms(self) -> np.ndarray:
        return np.linalg.norm(self.kernels(), axis=0)

    def normalized_kernels(self) -> np.ndarray:
        K = self.kernels()
        return K / np.linalg.norm(K, axis=0)

    def unit_norm_error(self) -> float:
        """Largest deviation of a normalized kernel's norm from 1; at most KERNEL_UNIT_TOL."""
        return float(np.max(np.abs(np.linalg.norm(self.normalized_kernels(), axis=0) - 1.0)))

    def refined(self, extra_points) -> "KernelSpace":
        """Same space sampled at additional points."""
        points = np.concatenate([self.sample_points, np.asarray(extra_points, dtype=np.complex128).ravel()])
        return KernelSpace(self.dim, points, self.kernel_fn)


def hardy_grid(levels: int = RADIAL_LEVELS, angles: int = ANGULAR_COUNT,
               sweep_steps: int = SWEEP_STEPS, sweep_angles: int = SWEEP_ANGLES) -> np.ndarray:
    """lambda = 0, radii 1 - 2^-k with `angles` points each, and a uniform radial sweep."""
    radii = 1.0 - 2.0 ** -np.arange(1, levels + 1)
    phases = np.exp(2j * np.pi * np.arange(angles) / angles)
    geometric = np.outer(radii, phases).ravel()
    sweep = np.arange(1, sweep_steps) / sweep_steps
    sweep_phases = np.exp(2j * np.pi * np.arange(sweep_angles) / max(sweep_angles, 1))
    radial = np.outer(sweep, sweep_phases).ravel()
    return np.concatenate([[0.0], geometric, radial])


def hardy_space(N: int, points: Optional[np.ndarray] = None) -> KernelSpace:
    """H^2 of the unit disk cut to the monomials 1, z, ..., z^(N-1)."""
    if N < 1:
        raise DimMismatch(f"truncation dimension must be positive, got {N}")
    points = hardy_grid() if points is None else np.asarray(points, dtype=np.complex128)
    if np.any(np.abs(points) >= 1.0):
        raise ShapeMismatch("Hardy sample points must lie in the open unit disk")

    def kernel_fn(lam):
        # k_lambda = (1, conj(lambda), ..., conj(lambda)^(N-1))
        return np.vander(np.conj(lam), N, increasing=True).T

    return KernelSpace(N, points, kernel_fn)


def hardy_kernel_norm_sq(N: int, lam) -> np.ndarray:
    """(1 - |lambda|^2N) / (1 - |lambda|^2) for |lambda| < 1."""
    r2 = np.abs(np.asarray(lam)) ** 2
    return (1.0 - r2 ** N) / (1.0 - r2)


def kernel_norm_identity_error(K: KernelSpace) -> float:
    """Largest relative gap between computed Hardy kernel norms and the closed form."""
    computed = K.kernel_norms() ** 2
    expected = hardy_kernel_norm_sq(K.dim, K.sample_points)
    return float(np.max(np.abs(computed - expected) / expected))


def hardy_shift(N: int, power: int = 1) -> CMatrix:
    """Compression of multiplication by z^power to the first N monomials."""
    return as_cmatrix(np.eye(N, k=-power))


def hardy_projection(N: int, index: int) -> CMatrix:
    """Rank-one projection onto the monomial z^index."""
    P = np.zeros((N, N))
    P[index, index] = 1.0
    return as_cmatrix(P)


def _check_domain(A: np.ndarray, K: KernelSpace, name: str):
    if A.shape[1] != K.dim:
        raise DimMismatch(f"{name} acts on C^{A.shape[1]} but the kernel space has dimension {K.dim}")


def berezin_symbol(A, K: KernelSpace) -> np.ndarray:
    """The Berezin transform <A k_lambda, k_lambda> at every sample point."""
    A = as_square(A, "A")
    _check_domain(A, K, "A")
    kh = K.normalized_kernels()
    return np.einsum('ip,ip->p', np.conj(kh), A @ kh)


def berezin_radius(A, K: KernelSpace) -> float:
    return float(np.max(np.abs(berezin_symbol(A, K))))


def berezin_norm(A, K: KernelSpace) -> float:
    """max ||A k_lambda|| over normalized kernels of the domain space K."""
    A = as_cmatrix(A, "A")
    _check_domain(A, K, "A")
    return float(np.max(np.linalg.norm(A @ K.normalized_kernels(), axis=0)))


def _check_spaces(M: BlockMatrix, spaces: Sequence[KernelSpace]):
    if len(spaces) != M.n:
        raise DimMismatch(f"{M.n} block rows need {M.n} kernel spaces, got {len(spaces)}")
    for i, K in enumerate(spaces):
        if M.row_dims[i] != K.dim or M.col_dims[i] != K.dim:
            raise DimMismatch(f"block row/column {i} has dimensions {M.row_dims[i]}/{M.col_dims[i]}, "
                              f"kernel space {i} has dimension {K.dim}")


def ber_lemma_rhs(A_ij, A_ji, K_j: KernelSpace) -> float:
    """sqrt((x + y)^2 - (x y - ber(A_ji A_ij))) with x = ||A_ij||_ber and y = ||A_ji*||_ber.

    Every norm is taken over the kernels of H_j, the domain of A_ij and of A_ji*.
    """
    x = berezin_norm(A_ij, K_j)
    y = berezin_norm(np.conj(A_ji).T, K_j)
    b = berezin_radius(A_ji @ A_ij, K_j)
    return math.sqrt(max((x + y) ** 2 - (x * y - b), 0.0))


def thm_ber_matrix(M: BlockMatrix, spaces: Sequence[KernelSpace]) -> np.ndarray:
    _check_spaces(M, spaces)
    n = M.n
    out = np.zeros((n, n))
    for i in range(n):
        out[i, i] = berezin_radius(M.block(i, i), spaces[i])
        for j in range(i + 1, n):
            out[i, j] = ber_lemma_rhs(M.block(i, j), M.block(j, i), spaces[j])
    return out


def bound_thm_ber(M: BlockMatrix, spaces: Sequence[KernelSpace]) -> float:
    """Upper bound for the Berezin radius of the operator matrix M."""
    return numrad_nonneg(thm_ber_matrix(M, spaces))


def bakherad_bound(M: BlockMatrix, spaces: Sequence[KernelSpace]) -> float:
    """w of [ber(A_ii) on the diagonal, ||A_ij|| elsewhere]."""
    _check_spaces(M, spaces)
    n = M.n
    out = np.array([[operator_norm(M.block(i, j)) for j in range(n)] for i in range(n)])
    for i in range(n):
        out[i, i] = berezin_radius(M.block(i, i), spaces[i])
    return numrad_nonneg(out)


def block_berezin_radius(M: BlockMatrix, spaces: Sequence[KernelSpace],
                         max_points: int = MAX_PRODUCT_POINTS) -> float:
    """ber(M) over the product grid with kernels (k_1, ..., k_n) / ||(k_1, ..., k_n)||."""
    _check_spaces(M, spaces)
    sizes = [K.sample_points.size for K in spaces]
    total = math.prod(sizes)
    if total > max_points:
        raise GridTooLarge(f"product grid has {total} points, cap is {max_points}")
    n = M.n
    kh = [K.normalized_kernels() for K in spaces]
    s = [K.kernel_norms() for K in spaces]

    def along(axis, values):
        shape = [1] * n
        shape[axis] = values.size
        return values.reshape(shape)

    numerator = np.zeros(sizes, dtype=np.complex128)
    denominator = np.zeros(sizes)
    for i in range(n):
        denominator = denominator + along(i, s[i] ** 2)
        for j in range(n):
            # G[l_i, l_j] = <A_ij k_j, k_i>
            G = np.conj(kh[i]).T @ M.block(i, j) @ kh[j]
            if i == j:
                term = along(i, s[i] ** 2 * np.diagonal(G))
            else:
                shape = [1] * n
                shape[i], shape[j] = sizes[i], sizes[j]
                weighted = np.outer(s[i], s[j]) * G
                term = (weighted if i < j else weighted.T).reshape(shape)
            numerator = numerator + term
    logger.debug(f"product Berezin grid with {total} points over {n} spaces")
    return float(np.max(np.abs(numerator / denominator)))


def _two_by_two(A, B, C, D):
    M = BlockMatrix.from_grid([[A, B], [C, D]])
    return M.block(0, 0), M.block(0, 1), M.block(1, 0), M.block(1, 1)


def bound_cor1b(A, B, C, D, spaces: Sequence[KernelSpace]) -> float:
    """Closed form of the Berezin bound for [[A, B], [C, D]]."""
    A, B, C, D = _two_by_two(A, B, C, D)
    _check_spaces(BlockMatrix.from_grid([[A, B], [C, D]]), spaces)
    K1, K2 = spaces
    return cor1_closed_form(berezin_radius(A, K1), berezin_radius(D, K2),
                            berezin_norm(B, K2), berezin_norm(np.conj(C).T, K2),
                            berezin_radius(C @ B, K2))


def _baseline_form(ber_a: float, ber_d: float, norm_b: float, norm_c: float) -> float:
    return 0.5 * (ber_a + ber_d) + 0.5 * math.sqrt((ber_a - ber_d) ** 2 + (norm_b + norm_c) ** 2)


def bakherad_baseline(A, B, C, D, spaces: Sequence[KernelSpace]) -> float:
    """1/2(ber(A) + ber(D)) + 1/2 sqrt((ber(A) - ber(D))^2 + (||B|| + ||C||)^2)."""
    A, B, C, D = _two_by_two(A, B, C, D)
    _check_spaces(BlockMatrix.from_grid([[A, B], [C, D]]), spaces)
    return _baseline_form(berezin_radius(A, spaces[0]), berezin_radius(D, spaces[1]),
                          operator_norm(B), operator_norm(C))


HARDY_BOUND = (4.0 + math.sqrt(7.0)) / 4.0
HARDY_BASELINE = 2.0


def hardy_example(N: int = 200, K: Optional[KernelSpace] = None, slack_rel: float = 1e-8,
                  product_check: bool = True) -> BoundReport:
    """The operator matrix [[M_z, P_C], [P_z, M_z^2]] on H^2 + H^2, truncated to N monomials.

    The limiting values ber(M_z) = ber(M_z^2) = ||P_C||_ber = 1 and
    ||P_z*||_ber = 1/2 give the bound (4 + sqrt 7)/4 against the baseline 2.

    Truncation keeps the shift symbols below their limits by about k/N for
    M_z^k (ber(M_z) is 0.9949 at N = 200, under a fixed 0.995 floor), so the
    grid values are checked within k/N + 1e-3 of 1. The limits themselves are
    checked from the closed form.
    """
    if N < 16:
        raise DimMismatch(f"the Hardy example needs N >= 16, got {N}")
    K = hardy_space(N) if K is None else K
    if K.dim != N:
        raise DimMismatch(f"kernel space dimension {K.dim} does not match N={N}")
    Mz, Mz2 = hardy_shift(N, 1), hardy_shift(N, 2)
    Pc, Pz = hardy_projection(N, 0), hardy_projection(N, 1)
    spaces = (K, K)

    ber_mz, ber_mz2 = berezin_radius(Mz, K), berezin_radius(Mz2, K)
    norm_pc, norm_pz_adj = berezin_norm(Pc, K), berezin_norm(np.conj(Pz).T, K)
    product = Pz @ Pc
    grid_bound = bound_cor1b(Mz, Pc, Pz, Mz2, spaces)
    limit_bound = cor1_closed_form(1.0, 1.0, 1.0, 0.5, 0.0)
    baseline = bakherad_baseline(Mz, Pc, Pz, Mz2, spaces)
    limit_baseline = _baseline_form(1.0, 1.0, 1.0, 1.0)

    report = BoundReport(case_id=f"hardy-N{N}", oracle_value=HARDY_BOUND, suite="berezin",
                         slack_rel=slack_rel, inputs={"kind": "hardy", "N": N})
    report.agrees("cor1b_limit", limit_bound, HARDY_BOUND, 1e-9)
    report.agrees("bakherad_baseline", limit_baseline, HARDY_BASELINE, 1e-9)
    report.at_most("cor1b_limit<=baseline", limit_bound, limit_baseline)
    report.agrees("ber(M_z)", ber_mz, 1.0, 1.0 / N + 1e-3)
    report.at_most("ber(M_z)<=w(M_z)", ber_mz, shift_radius(N))
    report.agrees("ber(M_z^2)", ber_mz2, 1.0, 2.0 / N + 1e-3)
    report.agrees("||P_C||_ber", norm_pc, 1.0, 1e-6)
    report.agrees("||P_z||_ber", berezin_norm(Pz, K), 0.5, 1e-3)
    report.agrees("||P_z*||_ber", norm_pz_adj, 0.5, 1e-3)
    report.agrees("ber(P_z P_C)", berezin_radius(product, K), 0.0, 0.0)
    report.agrees("P_z P_C == 0", float(np.max(np.abs(product))), 0.0, 0.0)
    report.at_most("cor1b_grid<=baseline", grid_bound, baseline)
    report.at_most("cor1b_grid<=cor1b_limit", grid_bound, limit_bound)
    M = BlockMatrix.from_grid([[Mz, Pc], [Pz, Mz2]])
    report.agrees("thm_ber==cor1b", bound_thm_ber(M, spaces), grid_bound, 1e-9)
    if product_check:
        report.at_most("ber(M)<=cor1b_grid", block_berezin_radius(M, spaces), grid_bound, slack=1e-6)
    logger.info(f"Hardy example at N={N}: grid bound {grid_bound:.12f}, limit {limit_bound:.12f}")
    return report
