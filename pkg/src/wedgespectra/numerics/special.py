"""Modified Bessel function of the second kind, order one

``bessel_k1`` is the production evaluator (Cephes Chebyshev expansions via
scipy.special). The oscillatory integral representation and the
large-argument series are exposed as independent cross-checks.
"""
from __future__ import annotations

import math

import numpy
import scipy.special

from ..errors import DomainError
from .quadrature import DEFAULT_RULE, QuadratureResult, QuadratureRule, integrate_cosine

__all__ = [ "bessel_k1", "bessel_k1_integral", "bessel_k1_asymptotic" ]


def _check_positive(R) -> numpy.ndarray:
    values = numpy.asarray(R, dtype=float)
    if not numpy.all(values > 0):
        raise DomainError(f'K1 is defined for R > 0 only, got {R!r}')
    return values


def bessel_k1(R):
    """K1(R) for R > 0, vectorised

    Underflows to 0.0 beyond R ~ 705.

    Args:
        R (float | array_like): positive argument(s)

    Raises:
        DomainError: some R <= 0 or NaN

    Returns:
        float | numpy.ndarray: K1(R), with the shape of R
    """
    values = scipy.special.k1(_check_positive(R))
    return float(values) if numpy.ndim(values) == 0 else values


def bessel_k1_integral(R: float, rule: QuadratureRule = DEFAULT_RULE) -> QuadratureResult:
    """K1(R) = R * int_0^inf cos(t) (R^2 + t^2)^(-3/2) dt

    Args:
        R (float): positive argument
        rule (QuadratureRule, optional): tolerances of the Fourier integral. Defaults to DEFAULT_RULE.

    Returns:
        QuadratureResult: K1(R) with its error estimate
    """
    R = float(_check_positive(R))
    R2 = R * R
    inner = integrate_cosine(lambda t: (R2 + t * t) ** -1.5, 1.0,
                             rule.refined(1.0 / max(R, 1.0)) if R > 1.0 else rule)
    return QuadratureResult(R * inner.value, R * inner.error, inner.converged, inner.evaluations, inner.message)


def bessel_k1_asymptotic(R: float, terms: int = 4) -> float:
    """Large-argument expansion sqrt(pi/2R) e^-R (1 + 3/8R - 15/128R^2 + ...)

    Args:
        R (float): positive argument
        terms (int, optional): number of series terms, >= 1. Defaults to 4.

    Returns:
        float: truncated series value
    """
    R = float(_check_positive(R))
    if terms < 1:
        raise DomainError(f'terms must be at least 1, got {terms}')
    coefficient = 1.0
    total = 1.0
    for k in range(1, terms):
        coefficient *= (4.0 - (2 * k - 1) ** 2) / (8.0 * k * R)
        total += coefficient
    return math.sqrt(math.pi / (2.0 * R)) * math.exp(-R) * total
