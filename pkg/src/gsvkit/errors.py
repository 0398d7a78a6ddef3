"""Exception hierarchy shared by all gsvkit modules.

Every error raised on a documented contract violation derives from
:class:`GsvError`, so callers (notably the CLI) can map failure classes to
exit codes without string matching.
"""

from __future__ import annotations


class GsvError(Exception):
    """Base class for all gsvkit contract violations."""


# ---------------------------------------------------------------------------
# input / construction errors


class EmptyStack(GsvError):
    """An operator stack contained no matrices."""


class ShapeMismatch(GsvError):
    """Matrix or vector dimensions are inconsistent with the operation."""


class NonFiniteInput(GsvError):
    """An input array contains NaN or infinite entries."""


class AllZero(GsvError):
    """Every matrix in the stack is identically zero; the maximization is degenerate."""


class NotSymmetric(GsvError):
    """A matrix required to be symmetric deviates beyond round-off tolerance."""


class WrongShape(GsvError):
    """A matrix does not have the shape required by a closed-form solver."""


class ColumnNormMismatch(GsvError):
    """The two columns do not share the same Euclidean norm."""


class DimensionTooLarge(GsvError):
    """The sampling oracle only supports small ambient dimensions."""


class ZeroVector(GsvError):
    """A nonzero vector was required."""


class ParseError(GsvError):
    """A data file could not be parsed; carries file and line context."""

    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = int(line)


# ---------------------------------------------------------------------------
# solver errors


class ConvergenceFailure(GsvError):
    """The eigendecomposition backend failed within its iteration budget."""

    def __init__(self, message, iterations):
        super().__init__(f"{message} (iteration budget: {iterations})")
        self.iterations = int(iterations)


class NotSPD(GsvError):
    """Cholesky factorization failed; ``pivot`` is the 1-based failing pivot index."""

    def __init__(self, pivot):
        super().__init__(
            f"matrix is not symmetric positive definite (Cholesky pivot {pivot} failed)"
        )
        self.pivot = int(pivot)


# ---------------------------------------------------------------------------
# statistics errors


class ConstantVector(GsvError):
    """A vector (or column) has no variability, so it cannot be standardized."""

    def __init__(self, message="vector is constant", column=None):
        if column is not None:
            message = f"{message} (column {column!r})"
        super().__init__(message)
        self.column = column


class TooShort(GsvError):
    """Standardization needs at least two components."""


class NotStandardized(GsvError):
    """Input was required to be column-standardized (zero mean, unit population std)."""


class LengthMismatch(GsvError):
    """Two vectors that must share a length do not."""


# ---------------------------------------------------------------------------
# probability model errors


class NegativeProbability(GsvError):
    """A probability entry is negative."""


class MassExceedsOne(GsvError):
    """Probabilities sum to more than one beyond tolerance."""
