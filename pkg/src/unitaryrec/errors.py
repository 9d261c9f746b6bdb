"""Exception and warning types shared across the package."""


class UnitaryRecError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(UnitaryRecError):
    """Operands have incompatible or non-square shapes."""


class NotHermitian(UnitaryRecError):
    """Matrix deviates from Hermiticity beyond the allowed tolerance."""


class NotUnitary(UnitaryRecError):
    """Matrix deviates from unitarity beyond the allowed tolerance."""


class NotPSD(UnitaryRecError):
    """Matrix has a negative eigenvalue beyond the allowed tolerance."""


class NumericalFailure(UnitaryRecError):
    """An underlying eigensolver or SVD did not converge."""


class TraceViolation(UnitaryRecError):
    """A map output drifted off unit trace; the map itself is broken."""


class DegenerateImage(UnitaryRecError):
    """Output-state spectrum has (near-)coinciding eigenvalues, so the
    eigenvector-to-basis association is meaningless."""

    def __init__(self, message: str, min_spectral_gap: float | None = None):
        super().__init__(message)
        self.min_spectral_gap = min_spectral_gap


class LinearDependence(UnitaryRecError):
    """Candidate basis vectors collapsed onto each other during
    orthonormalization."""

    def __init__(self, message: str, min_spectral_gap: float | None = None):
        super().__init__(message)
        self.min_spectral_gap = min_spectral_gap


class PhaseUndefined(UnitaryRecError):
    """A phase-recovery matrix element vanished, leaving the relative
    phase undetermined."""

    def __init__(self, message: str, min_spectral_gap: float | None = None):
        super().__init__(message)
        self.min_spectral_gap = min_spectral_gap


class NonRealResult(UnitaryRecError):
    """A quantity that must be real came out with a large imaginary part."""


class Unsupported(UnitaryRecError):
    """The requested combination of options has no defined answer."""


class InvalidRank(UnitaryRecError):
    """Output-state rank outside [1, d]."""


class ConfigInvalid(UnitaryRecError):
    """Sweep or CLI configuration failed validation."""


class IoFailure(UnitaryRecError):
    """Reading or writing a file failed."""


class DegenerateBranchWarning(UserWarning):
    """An eigenphase sits on the branch cut of the principal logarithm."""


class RankDeficientWarning(UserWarning):
    """Polar projection of a (nearly) singular matrix; the unitary factor
    is not unique."""
