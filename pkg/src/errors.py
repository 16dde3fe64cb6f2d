"""Exception hierarchy shared by every radius-bounds module."""


class RadiusBoundsError(Exception):
    """Base class for all errors raised by this project."""


class NonFinite(RadiusBoundsError, ValueError):
    """A matrix contains NaN or infinite entries."""


class NonHermitian(RadiusBoundsError, ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class NotPositive(RadiusBoundsError, ValueError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue."""


class NegativeEntry(RadiusBoundsError, ValueError):
    """A matrix expected to be entrywise nonnegative has a negative entry."""


class ShapeMismatch(RadiusBoundsError, ValueError):
    """Operands are not conformable."""


class DimMismatch(RadiusBoundsError, ValueError):
    """An operator does not match the dimension of its kernel space."""


class UnsupportedKind(RadiusBoundsError, ValueError):
    """A bound recipe cannot be applied to the given block structure."""


class NotCommuting(RadiusBoundsError, ValueError):
    """Operators declared commuting have a large commutator."""


class BadSpec(RadiusBoundsError, ValueError):
    """An ensemble, polynomial or run specification is invalid."""


class UnknownSuite(RadiusBoundsError, KeyError):
    """The requested verification suite does not exist."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown suite"


class GridTooLarge(RadiusBoundsError, ValueError):
    """A product kernel grid exceeds the configured number of points."""


class NoConvergence(RadiusBoundsError, ArithmeticError):
    """An eigenvalue or singular value iteration failed to converge."""


class ReportIOError(RadiusBoundsError, OSError):
    """Reading or writing a report or matrix file failed."""
