"""Exception types shared across the package."""

from __future__ import annotations


class PinchcertError(Exception):
    """Base class for all package-specific errors."""


class ZeroDenominator(PinchcertError):
    """A rational function acquired an identically-zero denominator."""


class DimensionMismatch(PinchcertError):
    """Tensor operands have incompatible dimensions."""


class DimensionTooSmall(PinchcertError):
    """The requested operation needs a larger dimension."""


class SingularMetric(PinchcertError):
    """The metric tensor is not positive definite / not invertible."""


class DegeneratePlane(PinchcertError):
    """Two vectors fail to span a 2-plane (Gram determinant too small)."""


class NonTracelessInput(PinchcertError):
    """An input required to be traceless has a nonzero trace."""


class SOutOfRange(PinchcertError):
    """Interpolation weight s lies outside [0, 1]."""


class HypothesisUnverified(PinchcertError):
    """The lower-bound hypothesis Sec >= eps*R could not be confirmed."""


class NegativeRadicand(PinchcertError):
    """A square-root argument evaluated to a negative number."""


class CertificateError(PinchcertError):
    """An internal certificate consistency check failed."""


class TensorFormatError(PinchcertError):
    """A tensor fixture file is malformed or violates the symmetries."""
