"""Exception hierarchy for the twinspace package.

Every error raised by the library derives from :class:`TwinspaceError`, so
callers (in particular the CLI) can distinguish library failures from
programming errors.  Measurement validation errors carry the index of the
first offending projector (or pair of projectors).
"""

from __future__ import annotations


class TwinspaceError(Exception):
    """Base class for all twinspace errors."""


class DimensionMismatchError(TwinspaceError):
    """Operands live in spaces of different dimension."""


class ZeroVectorError(TwinspaceError):
    """A state or two-state vector is identically zero (or not finite)."""


class MeasurementValidationError(TwinspaceError):
    """Base class for projective-measurement validation failures."""

    def __init__(self, message: str, *, index: int | None = None,
                 pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.index = index
        self.pair = pair


class NotHermitianError(MeasurementValidationError):
    """A projector candidate is not Hermitian within tolerance."""


class NotIdempotentError(MeasurementValidationError):
    """A projector candidate does not satisfy P @ P == P within tolerance."""


class NotOrthogonalError(MeasurementValidationError):
    """Two projectors of one measurement do not annihilate each other."""


class NotCompleteError(MeasurementValidationError):
    """The projectors of a measurement do not sum to the identity."""


class NotAStoryError(TwinspaceError):
    """The pair (vector, measurement) forms no story: every outcome
    amplitude vanishes, so conditional probabilities are undefined."""


class NoWitnessError(TwinspaceError):
    """The story construction exhausted all three branches without finding
    a witness above tolerance (possible only for numerically degenerate
    input near the case boundaries)."""


class KernelDimensionError(TwinspaceError):
    """The numerically detected kernel dimension disagrees with the exact
    dimension formula dim^2 - k."""


class NoStoryInMixtureError(TwinspaceError):
    """No component of a mixture forms a story with the given measurement."""


class NoSuccessesError(TwinspaceError):
    """A simulated experiment post-selected zero trials, leaving the
    empirical distribution undefined."""


class ShapeMismatchError(TwinspaceError):
    """An array argument has the wrong shape."""


class SeparableInputError(TwinspaceError):
    """A certification routine was handed a separable vector; there is
    nothing to certify."""


class WorkspaceError(TwinspaceError):
    """A workspace file cannot be parsed, fails validation, or a name
    cannot be resolved."""
