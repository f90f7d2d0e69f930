"""
Error hierarchy for the Lindblad toolkit.

Every error carries the process exit code the CLI reports for it:
1 = parse / I/O, 2 = invalid model, 3 = infeasible steering, 4 = numerical guard.
"""


class LindbladControlError(Exception):
    """Base class for all toolkit errors."""
    exit_code: int = 1


# ============================================================================
# Model validity (exit 2)
# ============================================================================

class InvalidModelError(LindbladControlError):
    exit_code = 2


class NonTracelessError(InvalidModelError):
    """A matrix expected to be traceless has a non-negligible trace."""


class NotPsdError(InvalidModelError):
    """GKS matrix is not Hermitian positive semidefinite."""


class InvalidDensityError(InvalidModelError):
    """Matrix or Bloch vector does not describe a density matrix."""


class EmptyModelError(InvalidModelError):
    """Every Lindblad operator is (numerically) zero."""


# ============================================================================
# Argument / geometry errors (exit 1)
# ============================================================================

class NotUnitError(LindbladControlError):
    """Direction vector is not of unit length."""


class ZeroRadiusError(LindbladControlError):
    """Radius must be strictly positive."""


class DegenerateStateError(LindbladControlError):
    """Eigenvectors are undefined at the completely mixed state."""


class NotApplicableError(LindbladControlError):
    """A closed form was requested for a system outside its preconditions."""


class ModelFileError(LindbladControlError):
    """Model file is malformed; the message names the offending field."""


class UsageError(LindbladControlError):
    """Bad command-line arguments."""


# ============================================================================
# Steering (exit 3) and numerical guards (exit 4)
# ============================================================================

class InfeasibleSteeringError(LindbladControlError):
    exit_code = 3


class NumericalGuardError(LindbladControlError):
    exit_code = 4


class RadiusUnderflowError(NumericalGuardError):
    """Control synthesis requested below the radius floor."""


class BallViolationError(NumericalGuardError):
    """Integrated Bloch vector left the unit ball."""


class EnvelopeMismatchError(NumericalGuardError):
    """Analytic and numeric envelopes disagree."""
