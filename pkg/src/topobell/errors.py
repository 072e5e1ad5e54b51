"""Exceptions raised by the numerical layers."""


class TopobellError(ValueError):
    """Base class for input-contract violations."""


class NonHermitianInput(TopobellError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class NonNormalizedState(TopobellError):
    """A state vector's norm deviates from one beyond tolerance."""


class NumericalResidue(TopobellError):
    """A quantity that must be real carries an imaginary part above tolerance."""
