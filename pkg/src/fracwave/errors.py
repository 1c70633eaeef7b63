"""Exception and warning types shared across the package."""

from __future__ import annotations


class FracwaveError(Exception):
    """Base class for all package errors."""


class ValidationError(FracwaveError, ValueError):
    """A parameter violates its documented invariant."""


class PoleError(ValidationError):
    """Gamma function evaluated at a non-positive integer."""


class DomainError(ValidationError):
    """Evaluation point outside the sampled range or admissible domain."""


class ArityError(ValidationError):
    """Wrong number of initial derivatives for the requested order."""


class DegenerateRootsError(FracwaveError, ArithmeticError):
    """Quadratic y**2 + a*y + b has a double root, so the split formulas are invalid."""


class ConvergenceFailure(FracwaveError, ArithmeticError):
    """A series or contour evaluation could not meet its tolerance."""


class NonConvergentIntegral(ConvergenceFailure):
    """Adaptive quadrature reported failure."""


class ContourFailure(ConvergenceFailure):
    """Numerical Laplace inversion is unreliable on the chosen contour."""


class InsufficientResolution(FracwaveError, ArithmeticError):
    """Sampled data is too coarse for a stable derivative estimate."""


class InstabilityDetected(FracwaveError, ArithmeticError):
    """Time stepping blew up beyond the physically admissible growth."""


class ResolutionError(FracwaveError, ValueError):
    """The requested grid cannot represent the input (e.g. an unmollified delta)."""


class OverflowSignal(FracwaveError, OverflowError):
    """Result magnitude is beyond double precision; use the log form instead."""


class SingularityWarning(UserWarning):
    """Result is dominated by an integrable endpoint singularity."""


class TruncationWarning(UserWarning):
    """Estimated wavenumber-truncation error exceeds the requested tolerance."""
