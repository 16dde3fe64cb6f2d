"""Root-modulus bounds for monic polynomials through their companion matrices.

Coefficients follow the indexing p(z) = z^n + a_n z^(n-1) + ... + a_2 z + a_1,
so ``coeffs[0]`` is the constant term a_1 and ``coeffs[-1]`` is a_n. Use
:meth:`PolySpec.from_high_to_low` for the usual highest-degree-first order.
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from bound_engine import bound_cor1
from errors import BadSpec
from matrix_core import BlockMatrix, CMatrix, as_cmatrix, eigenvalues
from radius_oracles import spectral_radius

logger = logging.getLogger('polyroot_bounds')


@dataclass(frozen=True)
class PolySpec:
    coeffs: Tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if len(coeffs) < 2:
            raise BadSpec(f"degree must be at least 2, got {len(coeffs)}")
        if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in coeffs):
            raise BadSpec("coefficients must be finite")
        if coeffs[0] == 0:
            raise BadSpec("the constant term a_1 must be nonzero")
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def from_high_to_low(cls, coeffs: Sequence[complex]) -> "PolySpec":
        """Build from [c_n, c_(n-1), ..., c_0], dividing through by the leading coefficient."""
        coeffs = [complex(c) for c in coeffs]
        if not coeffs or coeffs[0] == 0:
            raise BadSpec("the leading coefficient must be nonzero")
        lead = coeffs[0]
        return cls(tuple(c / lead for c in reversed(coeffs[1:])))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def a(self, j: int) -> complex:
        """a_j, 1-based."""
        return self.coeffs[j - 1]

    def __call__(self, z):
        """Evaluate p at z."""
        return np.polyval(self.high_to_low(), z)

    def high_to_low(self) -> np.ndarray:
        return np.concatenate([[1.0], np.asarray(self.coeffs[::-1], dtype=np.complex128)])


def companion(p: PolySpec) -> CMatrix:
    """Frobenius companion matrix: top row -a_n, ..., -a_1 and ones on the subdiagonal."""
    C = np.eye(p.n, k=-1, dtype=np.complex128)
    C[0, :] = -np.asarray(p.coeffs[::-1])
    return as_cmatrix(C)


def lower_norm(p: PolySpec) -> float:
    """S = sqrt(|a_1|^2 + ... + |a_(n-1)|^2)."""
    return float(np.linalg.norm(np.asarray(p.coeffs[:-1])))


def alpha(p: PolySpec) -> float:
    """1/2 (S - |a_(n-1)|); zero exactly when a_1, ..., a_(n-2) all vanish."""
    return 0.5 * (lower_norm(p) - abs(p.a(p.n - 1)))


def _estimate(p: PolySpec, alpha_term: float) -> float:
    lead = abs(p.a(p.n))
    c = math.cos(math.pi / p.n)
    s = lower_norm(p)
    return 0.5 * (lead + c + math.sqrt(max((lead - c) ** 2 + (1.0 + s) ** 2 - alpha_term, 0.0)))


def bound_estpoly(p: PolySpec) -> float:
    """Upper bound on the modulus of every root of p."""
    return _estimate(p, alpha(p))


def bound_abd(p: PolySpec) -> float:
    """The same estimate without the alpha correction."""
    return _estimate(p, 0.0)


def bound_companion_cor1(p: PolySpec) -> float:
    """The 2 x 2 operator-matrix bound applied to the companion matrix cut after its first row.

    The blocks are A = [-a_n], B = (-a_(n-1), ..., -a_1), C = e_1 and D = L_(n-1);
    for n = 2, D is the 1 x 1 zero matrix.
    """
    blocks = BlockMatrix.partition(companion(p), [1, p.n - 1])
    value = bound_cor1(blocks.block(0, 0), blocks.block(0, 1), blocks.block(1, 0), blocks.block(1, 1))
    logger.debug(f"companion bound for degree {p.n}: {value:.15g}")
    return value


def roots(p: PolySpec) -> np.ndarray:
    return eigenvalues(companion(p))


def max_root_modulus(p: PolySpec) -> float:
    return spectral_radius(companion(p))
