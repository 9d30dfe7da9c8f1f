"""Exception hierarchy shared by the solvers and the CLI."""


class DiracSpectraError(Exception):
    """Base class for every error raised by this package."""


class NoDiscreteSpectrum(DiracSpectraError):
    """The admissibility conditions leave no discrete eigenvalue."""


class NoBoundState(DiracSpectraError):
    """The radial problem does not hold the requested state on the grid."""


class NumericalFailure(DiracSpectraError):
    """A root-find or integration did not converge."""


class DomainError(DiracSpectraError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateEnergy(DiracSpectraError):
    """Component reconstruction would divide by a vanishing m +/- E."""


class NotApplicable(DiracSpectraError):
    """Envelope construction requested for a transformation without definite convexity."""


class NotComparable(DiracSpectraError):
    """The two potentials are not pointwise ordered on the sample grid."""
