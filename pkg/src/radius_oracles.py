"""Desk-scale oracles for the numerical radius, spectral radius and friends.

The numerical radius is evaluated through its support-function form

    w(A) = max over theta of lambda_max((e^{i theta} A + e^{-i theta} A*) / 2),

scanned on a coarse grid and refined around every grid peak that could hide
the global maximum. f(theta) is Lipschitz with constant ||A||, so any peak
within ||A|| * h of the best grid value is refined.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from errors import NegativeEntry, NoConvergence, ShapeMismatch
from matrix_core import as_cmatrix, as_square, eigenvalues, herm_eigen_max, operator_norm

logger = logging.getLogger('radius_oracles')

NONNEG_FLOOR = -1e-14
PLATEAU_TOL = 1e-13
CACHE_MAX_DIM = 32
CACHE_SIZE = 1024


@dataclass(frozen=True)
class ThetaScanConfig:
    coarse_points: int = 720
    refine_tol: float = 1e-12
    max_refines: int = 200

    def __post_init__(self):
        if self.coarse_points < 16:
            raise ValueError(f"coarse_points must be at least 16, got {self.coarse_points}")
        if not self.refine_tol > 0:
            raise ValueError(f"refine_tol must be positive, got {self.refine_tol}")
        if self.max_refines < 1:
            raise ValueError(f"max_refines must be positive, got {self.max_refines}")


DEFAULT_SCAN = ThetaScanConfig()


def _theta_scan(batch: Callable[[np.ndarray], np.ndarray],
                single: Callable[[float], float],
                lipschitz: float,
                cfg: ThetaScanConfig) -> float:
    """Maximise a 2*pi-periodic function: coarse grid, then bounded refinement.

    Grid peaks are refined highest first until the next one cannot beat the
    current best by the Lipschitz slack ``lipschitz * h``. A run of equal grid
    values counts as one peak; its first point is refined.
    """
    thetas = np.linspace(0.0, 2.0 * np.pi, cfg.coarse_points, endpoint=False)
    values = batch(thetas)
    h = 2.0 * np.pi / cfg.coarse_points
    slack = lipschitz * h
    best = float(values.max())

    is_peak = (values >= np.roll(values, 1)) & (values >= np.roll(values, -1))
    flat = np.abs(values - np.roll(values, 1)) <= PLATEAU_TOL * max(abs(best), 1e-300)
    candidates = np.flatnonzero(is_peak & ~flat & (values >= best - slack))
    candidates = candidates[np.argsort(values[candidates], kind='stable')[::-1]]

    refined = 0
    for i in candidates:
        if values[i] + slack < best:
            break
        centre = thetas[i]
        res = minimize_scalar(lambda theta: -single(theta),
                              bounds=(centre - h, centre + h),
                              method='bounded',
                              options={'xatol': cfg.refine_tol, 'maxiter': cfg.max_refines})
        logger.debug(f"refined peak at theta={centre:.6f}: {values[i]:.15g} -> {-res.fun:.15g}")
        best = max(best, float(-res.fun))
        refined += 1
    logger.debug(f"theta scan refined {refined} of {candidates.size} candidate peaks")
    return best


def _hermitian_parts(A: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    phase = np.exp(1j * thetas)[:, None, None]
    return 0.5 * (phase * A[None] + np.conj(phase) * A.conj().T[None])


def _scan_numerical_radius(A: np.ndarray, cfg: ThetaScanConfig) -> float:
    def batch(thetas):
        try:
            return np.linalg.eigvalsh(_hermitian_parts(A, thetas))[:, -1]
        except np.linalg.LinAlgError as e:
            raise NoConvergence(str(e)) from e

    def single(theta):
        return float(batch(np.array([theta]))[0])

    return _theta_scan(batch, single, operator_norm(A), cfg)


@lru_cache(maxsize=CACHE_SIZE)
def _cached_numerical_radius(shape: Tuple[int, int], data: bytes, cfg: ThetaScanConfig) -> float:
    return _scan_numerical_radius(np.frombuffer(data, dtype=np.complex128).reshape(shape), cfg)


def numerical_radius(A, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """w(A) = sup |<Ax, x>| over unit vectors x.

    Results for matrices up to CACHE_MAX_DIM are memoised on the exact bytes of
    A, so the bounds of one trial share the scans of their common products.
    """
    A = as_square(A, "A")
    if A.shape[0] == 1:
        return float(abs(A[0, 0]))
    if not A.any():
        return 0.0
    if A.shape[0] > CACHE_MAX_DIM:
        return _scan_numerical_radius(A, cfg)
    return _cached_numerical_radius(A.shape, np.ascontiguousarray(A).tobytes(), cfg)


def spectral_radius(A) -> float:
    """r(A) = max |lambda| over the spectrum."""
    return float(np.max(np.abs(eigenvalues(A))))


def numrad_nonneg(T) -> float:
    """Numerical radius of an entrywise nonnegative matrix, as 1/2 lambda_max(T + T^T)."""
    T = as_square(T, "T")
    if np.any(np.abs(T.imag) > 0) or np.any(T.real < NONNEG_FLOOR):
        raise NegativeEntry("numrad_nonneg needs real entries that are all >= 0")
    real = np.maximum(T.real, 0.0)
    return 0.5 * herm_eigen_max(real + real.T)


def sup_theta_norm(B, C, cfg: ThetaScanConfig = DEFAULT_SCAN) -> float:
    """sup over theta of ||e^{i theta} B + e^{-i theta} C*||, with B p x q and C q x p."""
    B = as_cmatrix(B, "B")
    C = as_cmatrix(C, "C")
    if C.shape != (B.shape[1], B.shape[0]):
        raise ShapeMismatch(f"C must have shape {(B.shape[1], B.shape[0])}, got {C.shape}")
    Cs = C.conj().T
    if not B.any() and not C.any():
        return 0.0

    def batch(thetas):
        phase = np.exp(1j * thetas)[:, None, None]
        stack = phase * B[None] + np.conj(phase) * Cs[None]
        try:
            return np.linalg.svd(stack, compute_uv=False)[:, 0]
        except np.linalg.LinAlgError as e:
            raise NoConvergence(str(e)) from e

    def single(theta):
        return float(batch(np.array([theta]))[0])

    return _theta_scan(batch, single, operator_norm(B) + operator_norm(C), cfg)


def rank_one_row_radius(row) -> float:
    """Closed form for w of a matrix whose only nonzero row is the first: 1/2(|a_1| + ||a||)."""
    row = np.asarray(row, dtype=np.complex128).ravel()
    return 0.5 * (abs(row[0]) + float(np.linalg.norm(row)))


def shift_radius(n: int) -> float:
    """Closed form w(L_n) = cos(pi / (n + 1)) for the n x n lower shift."""
    return float(np.cos(np.pi / (n + 1)))


def lower_shift(n: int):
    """L_n: ones on the first subdiagonal."""
    return as_cmatrix(np.eye(n, k=-1))
