"""Exception hierarchy shared by every wedgespectra subpackage

"""

__all__ = [ "WedgeSpectraError", "DomainError", "IntegrandError", "DensityError",
            "OnCurveError", "QuadratureError", "SamplingError", "EigenvalueError" ]


class WedgeSpectraError(Exception):
    """Root of all errors raised by the package

    """


class DomainError(WedgeSpectraError, ValueError):
    """A parameter lies outside the domain where the quantity is defined

    """


class IntegrandError(DomainError):
    """An integrand produced a non-finite value

    """


class DensityError(DomainError):
    """A boundary density violates an operator precondition or its declared decay class

    """


class OnCurveError(DomainError):
    """A spectral point lies within the on-curve tolerance of a sampled curve

    """


class QuadratureError(WedgeSpectraError, ArithmeticError):
    """A flagged (non-converged) quadrature result was consumed

    """


class SamplingError(WedgeSpectraError, ArithmeticError):
    """A sampled curve is too coarse for the requested winding number

    """


class EigenvalueError(WedgeSpectraError, ArithmeticError):
    """The dense eigenvalue iteration failed or the matrix exceeds the size cap

    """
