"""Dense complex linear algebra used by every bound and oracle.

Matrices are plain read-only ``numpy`` arrays of dtype complex128. Every
function returns a fresh array and never writes to its arguments, so values
can be shared between threads without copying.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np
import numpy.typing as npt
import scipy.linalg

from errors import NoConvergence, NonFinite, NonHermitian, NotPositive, ShapeMismatch

logger = logging.getLogger('matrix_core')

CMatrix = npt.NDArray[np.complex128]

TOL_HERM = 1e-10  # relative Hermitian defect accepted by herm_eigen_max
TOL_EIG = 1e-9  # relative eigenpair residual
PSD_CLAMP = 1e-10  # relative negative eigenvalue tolerated in a PSD matrix
RANK_TOL = 1e-10  # relative singular/eigen value treated as zero


def as_cmatrix(data, name: str = "matrix") -> CMatrix:
    """Return a read-only complex128 copy of ``data`` as a 2-D matrix."""
    arr = np.array(data, dtype=np.complex128, copy=True)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ShapeMismatch(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"{name} has NaN or infinite entries")
    arr.setflags(write=False)
    return arr


def as_square(data, name: str = "matrix") -> CMatrix:
    """Like :func:`as_cmatrix` but also require a square shape."""
    arr = as_cmatrix(data, name)
    if arr.shape[0] != arr.shape[1]:
        raise ShapeMismatch(f"{name} must be square, got shape {arr.shape}")
    return arr


def adjoint(A) -> CMatrix:
    return as_cmatrix(np.conj(np.asarray(A)).T)


def identity(n: int) -> CMatrix:
    return as_cmatrix(np.eye(n))


def herm_eigen_max(H) -> float:
    """Largest eigenvalue of a Hermitian matrix."""
    H = as_square(H, "H")
    scale = np.linalg.norm(H)
    defect = np.linalg.norm(H - H.conj().T)
    if defect > TOL_HERM * scale:
        raise NonHermitian(f"Hermitian defect {defect:.3e} exceeds {TOL_HERM:g} * {scale:.3e}")
    try:
        return float(np.linalg.eigvalsh(0.5 * (H + H.conj().T))[-1])
    except np.linalg.LinAlgError as e:
        logger.error(f"Hermitian eigensolver failed: {e}")
        raise NoConvergence(str(e)) from e


def eigenvalues(A) -> npt.NDArray[np.complex128]:
    """All eigenvalues of a square matrix, with multiplicity.

    LAPACK's ``zgeev`` reduces to Hessenberg form and runs shifted QR with
    deflation; companion matrices are already Hessenberg.
    """
    A = as_square(A, "A")
    try:
        return np.linalg.eigvals(A)
    except np.linalg.LinAlgError as e:
        logger.error(f"QR iteration did not converge on a {A.shape[0]}x{A.shape[0]} matrix: {e}")
        raise NoConvergence(str(e)) from e


def eigenpairs(A) -> Tuple[npt.NDArray[np.complex128], CMatrix]:
    """Eigenvalues and unit eigenvectors (as columns), residual-checked.

    Raises NoConvergence if some pair has ||Av - lambda v|| > TOL_EIG * ||A||.
    """
    A = as_square(A, "A")
    try:
        vals, vecs = np.linalg.eig(A)
    except np.linalg.LinAlgError as e:
        raise NoConvergence(str(e)) from e
    residual = float(np.max(np.linalg.norm(A @ vecs - vecs * vals, axis=0)))
    scale = operator_norm(A)
    if residual > TOL_EIG * scale:
        logger.error(f"eigenpair residual {residual:.3e} exceeds {TOL_EIG:g} * {scale:.3e}")
        raise NoConvergence(f"eigenpair residual {residual:.3e} exceeds {TOL_EIG:g} * ||A||")
    return vals, vecs


def singular_values(A) -> npt.NDArray[np.float64]:
    A = as_cmatrix(A, "A")
    try:
        return scipy.linalg.svdvals(A)
    except np.linalg.LinAlgError as e:
        raise NoConvergence(str(e)) from e


def operator_norm(A) -> float:
    """Largest singular value."""
    return float(singular_values(A)[0])


@dataclass(frozen=True)
class PolarFactors:
    """A = U|A| with U a partial isometry and |A| = sqrt(A*A)."""

    unitary_part: CMatrix
    modulus: CMatrix


def polar(A) -> PolarFactors:
    """Polar decomposition from the SVD A = W diag(s) V*.

    |A| = V diag(s) V* is the Hermitian eigendecomposition of sqrt(A*A);
    U = W_r V_r* keeps only the singular directions with s > RANK_TOL * s_max,
    so U is the partial isometry from range(|A|) onto range(A).
    """
    A = as_square(A, "A")
    try:
        w, s, vh = scipy.linalg.svd(A)
    except np.linalg.LinAlgError as e:
        raise NoConvergence(str(e)) from e
    rank = int(np.count_nonzero(s > RANK_TOL * s[0])) if s[0] > 0 else 0
    modulus = (vh.conj().T * s) @ vh
    unitary_part = w[:, :rank] @ vh[:rank]
    modulus = 0.5 * (modulus + modulus.conj().T)
    return PolarFactors(unitary_part=as_cmatrix(unitary_part), modulus=as_cmatrix(modulus))


def frac_power(P, t: float) -> CMatrix:
    """P**t for a positive semidefinite P and t in [0, 1].

    Eigenvalues below RANK_TOL * ||P|| are treated as zero, so t = 0 gives the
    spectral projection onto the range of P.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"exponent t must lie in [0, 1], got {t}")
    P = as_square(P, "P")
    scale = np.linalg.norm(P)
    if np.linalg.norm(P - P.conj().T) > TOL_HERM * max(scale, 1e-300):
        raise NonHermitian("frac_power needs a Hermitian matrix")
    try:
        vals, vecs = np.linalg.eigh(0.5 * (P + P.conj().T))
    except np.linalg.LinAlgError as e:
        raise NoConvergence(str(e)) from e
    top = max(abs(vals[0]), abs(vals[-1]))
    if vals[0] < -PSD_CLAMP * top:
        raise NotPositive(f"smallest eigenvalue {vals[0]:.3e} is below -{PSD_CLAMP:g} * {top:.3e}")
    kept = vals > RANK_TOL * top
    powered = np.zeros_like(vals)
    powered[kept] = vals[kept] ** t
    result = (vecs * powered) @ vecs.conj().T
    return as_cmatrix(0.5 * (result + result.conj().T))


def kron(A, B) -> CMatrix:
    """Kronecker product [a_ij B]."""
    return as_cmatrix(np.kron(as_cmatrix(A, "A"), as_cmatrix(B, "B")))


@dataclass(frozen=True)
class BlockMatrix:
    """An n x n grid of blocks; block (i, j) maps C^{col_dims[j]} to C^{row_dims[i]}."""

    blocks: Tuple[Tuple[CMatrix, ...], ...]
    row_dims: Tuple[int, ...] = field(init=False)
    col_dims: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.blocks)
        if n == 0:
            raise ShapeMismatch("a block matrix needs at least one block row")
        grid = []
        for i, row in enumerate(self.blocks):
            if len(row) != n:
                raise ShapeMismatch(f"block row {i} has {len(row)} blocks, expected {n}")
            grid.append(tuple(as_cmatrix(b, f"block ({i},{j})") for j, b in enumerate(row)))
        row_dims = tuple(grid[i][0].shape[0] for i in range(n))
        col_dims = tuple(grid[0][j].shape[1] for j in range(n))
        for i in range(n):
            for j in range(n):
                if grid[i][j].shape != (row_dims[i], col_dims[j]):
                    raise ShapeMismatch(
                        f"block ({i},{j}) has shape {grid[i][j].shape}, "
                        f"expected {(row_dims[i], col_dims[j])}")
        object.__setattr__(self, 'blocks', tuple(grid))
        object.__setattr__(self, 'row_dims', row_dims)
        object.__setattr__(self, 'col_dims', col_dims)

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence]) -> "BlockMatrix":
        return cls(tuple(tuple(row) for row in grid))

    @classmethod
    def partition(cls, matrix, row_dims: Sequence[int], col_dims: Sequence[int] = None) -> "BlockMatrix":
        """Cut a dense matrix into blocks along the given dimensions."""
        matrix = as_cmatrix(matrix)
        col_dims = list(row_dims) if col_dims is None else list(col_dims)
        row_dims = list(row_dims)
        if len(row_dims) != len(col_dims):
            raise ShapeMismatch("row and column partitions must have the same length")
        if any(d <= 0 for d in row_dims + col_dims):
            raise ShapeMismatch("block dimensions must be positive")
        if sum(row_dims) != matrix.shape[0] or sum(col_dims) != matrix.shape[1]:
            raise ShapeMismatch(
                f"partition {row_dims} x {col_dims} does not cover a matrix of shape {matrix.shape}")
        r = np.concatenate(([0], np.cumsum(row_dims)))
        c = np.concatenate(([0], np.cumsum(col_dims)))
        return cls.from_grid([[matrix[r[i]:r[i + 1], c[j]:c[j + 1]] for j in range(len(col_dims))]
                              for i in range(len(row_dims))])

    @property
    def n(self) -> int:
        return len(self.blocks)

    def block(self, i: int, j: int) -> CMatrix:
        return self.blocks[i][j]

    @property
    def has_square_blocks(self) -> bool:
        """Every block square and every space of the same dimension."""
        return self.row_dims == self.col_dims and len(set(self.row_dims)) == 1

    def flatten(self) -> CMatrix:
        return flatten(self)


def flatten(M: BlockMatrix) -> CMatrix:
    """Assemble the dense matrix whose (i, j) block region is M.blocks[i][j]."""
    return as_cmatrix(np.block([list(row) for row in M.blocks]))
