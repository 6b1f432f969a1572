"""Exception types shared across the library."""


class PremetricError(Exception):
    """Base class for all library-specific errors."""


class NearNullCovector(PremetricError):
    """The Fresnel quartic is numerically zero at the given covector."""


class DegenerateInput(PremetricError):
    """Input lies in a region where the requested classification is ill posed."""


class ZeroMomentum(PremetricError):
    """A nonzero spatial momentum is required."""


class PolesMerged(PremetricError):
    """The two frequency poles are too close for separate contour residues."""


class NotPositive(PremetricError):
    """A positive (semi-)definite matrix was required.

    Carries the offending eigenvalues in ``.eigenvalues``.
    """

    def __init__(self, message, eigenvalues=None):
        super().__init__(message)
        self.eigenvalues = eigenvalues


class OnExtraordinaryCone(PremetricError):
    """Worldline parameters sit on the slow-light cone where the bound diverges."""


class NotSubluminal(PremetricError):
    """The worldline is not slower than all light rays; the bound does not apply."""


class NotTimelike(PremetricError):
    """A strictly timelike vector (for the selected metric) was required."""


class NewtonDiverged(PremetricError):
    """Newton iteration failed to converge.  Carries the last iterate."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class GridTooCoarse(PremetricError):
    """A sampled function or quadrature grid cannot resolve the integrand."""


class NonConvergent(PremetricError):
    """Contour quadrature did not converge under node doubling."""
