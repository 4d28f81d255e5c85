"""Exception types shared across the library.

Precondition violations raise a specific subclass of :class:`QuasihermError`
so callers (and the CLI exit-code logic) can tell configuration mistakes,
numerically defective inputs, and invalid closed-form branches apart.
Matrix-exponential and power overflow reuse the builtin ``OverflowError``.
"""


class QuasihermError(Exception):
    """Base class for all library-specific errors."""


class NotSquareError(QuasihermError):
    """Operation requires a square matrix."""


class NotHermitianError(QuasihermError):
    """Matrix fails the Hermiticity tolerance of the operation."""


class NotPositiveDefiniteError(QuasihermError):
    """Matrix is not numerically positive definite (Cholesky failed)."""


class NoConvergenceError(QuasihermError):
    """The underlying eigensolver did not converge or missed its residual contract."""


class DefectiveMatrixError(QuasihermError):
    """Eigenvector basis is numerically defective (biorthogonality lost)."""


class DimensionOverflowError(QuasihermError):
    """Requested product dimension exceeds the configured dense-solver cap."""


class DimensionMismatchError(QuasihermError):
    """Operand dimensions are incompatible."""


class InvalidTruncationError(QuasihermError):
    """Fock truncation parameters are out of range."""


class NotParityPreservingError(QuasihermError):
    """Matrix couples even and odd Fock sectors."""


class ComplexSpectrumError(QuasihermError):
    """Spectrum is not real within tolerance; no positive metric at this truncation."""


class MissingRhoError(QuasihermError):
    """Operation requires a similarity root rho on the system."""


class InvalidParamsError(QuasihermError):
    """Model parameters violate a documented assumption."""


class BranchInvalidError(QuasihermError):
    """Closed-form expression is undefined at these parameters (non-positive base)."""


class InsufficientNodesError(QuasihermError):
    """Quadrature grid is too coarse for the requested level range."""


class LevelTooHighError(QuasihermError):
    """Requested level is too close to the truncation boundary."""


class InputNotQuasiHermitianError(QuasihermError):
    """Input system fails the intertwining residual precondition."""


class ConfigError(QuasihermError):
    """Experiment configuration failed to parse or validate."""
