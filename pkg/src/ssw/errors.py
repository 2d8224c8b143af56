"""Exception types raised across the package."""


class SSWError(Exception):
    """Base class for all package errors."""


class NonConvergence(SSWError):
    """Quadrature hit its node budget before meeting the tolerance."""


class SizeLimit(SSWError):
    """Exact diagonalization requested on a chain that is too long."""


class DimensionMismatch(SSWError):
    pass


class EigensolverFailure(SSWError):
    pass


class InvalidDensityMatrix(SSWError):
    pass


class UnsupportedSeparation(SSWError):
    pass


class NegativeVy(SSWError):
    """The diagonal product entering the X-state concurrence went negative."""


class InvalidAxes(SSWError):
    pass


class EmptyGrid(SSWError):
    pass
