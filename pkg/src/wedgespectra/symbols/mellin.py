"""The truncated Mellin kernel, its symbol, and the closed-form norms

The dilation kernel is
    i(s) = -(sin alpha / pi) s^((3-a)/2) / (1 + s^2 - 2 s cos alpha),
with Mellin transform
    int i(s) s^(i xi) ds/s = -sin((c + i xi)(pi - alpha)) / sin((c + i xi) pi),  c = (1-a)/2.
"""
from __future__ import annotations

import cmath
import math

import numpy

from ..numerics import DEFAULT_RULE, QuadratureKind, QuadratureResult, QuadratureRule, integrate
from .params import WedgeParams, validate_alpha

__all__ = [ "mellin_kernel", "sigma_point", "norm_bound", "spectral_radius", "energy_norm_bound",
            "real_axis_crossings", "mellin_symbol_quadrature", "l1_norm_quadrature" ]

# below this frequency the degenerate symbol is its two-term Taylor series
_SERIES_XI = 1e-6


def mellin_kernel(p: WedgeParams, s):
    """i_{alpha,a}(s), vectorised over s > 0

    Args:
        p (WedgeParams): wedge parameters
        s (float | array_like): positive dilation(s)

    Returns:
        float | numpy.ndarray: kernel values
    """
    s = numpy.asarray(s, dtype=float)
    values = (-math.sin(p.alpha) / math.pi) * s ** (0.5 * (3.0 - p.a)) / (1.0 + s * s - 2.0 * s * math.cos(p.alpha))
    return float(values) if values.ndim == 0 else values


def _symbol_nonnegative(p: WedgeParams, xi: numpy.ndarray) -> numpy.ndarray:
    """Symbol for xi >= 0 from exponentially scaled sines"""
    beta = p.beta
    if p.degenerate:
        # -sign(beta) e^(xi(|beta| - pi)) expm1(-2 xi |beta|) / expm1(-2 pi xi) = -sinh(xi beta)/sinh(xi pi)
        b = abs(beta)
        small = xi < _SERIES_XI
        safe = numpy.where(small, 1.0, xi)
        ratio = numpy.exp(safe * (b - math.pi)) * numpy.expm1(-2.0 * b * safe) / numpy.expm1(-2.0 * math.pi * safe)
        series = (b / math.pi) * (1.0 + xi * xi * (b * b - math.pi * math.pi) / 6.0)
        return (-math.copysign(1.0, beta) * numpy.where(small, series, ratio)).astype(complex)
    c = p.c
    num = (numpy.exp(1j * c * beta - xi * (beta + math.pi))
           - numpy.exp(-1j * c * beta + xi * (beta - math.pi)))
    den = numpy.exp(1j * c * math.pi - 2.0 * math.pi * xi) - numpy.exp(-1j * c * math.pi)
    return -num / den


def sigma_point(p: WedgeParams, xi):
    """Mellin symbol of i_{alpha,a} at xi, vectorised

    Negative xi are obtained by conjugation, so the result is exactly
    conjugation-symmetric and never overflows.

    Args:
        p (WedgeParams): wedge parameters
        xi (float | array_like): real frequency

    Returns:
        complex | numpy.ndarray: symbol values
    """
    xi = numpy.asarray(xi, dtype=float)
    values = _symbol_nonnegative(p, numpy.abs(xi))
    values = numpy.where(xi < 0, numpy.conj(values), values)
    # real at xi = 0
    values = numpy.where(xi == 0, values.real + 0j, values)
    return complex(values) if values.ndim == 0 else values


def norm_bound(p: WedgeParams) -> float:
    """|sin((1-a)(pi-alpha)/2) / sin((1-a)pi/2)|, or |1 - alpha/pi| when a = 1

    This is the L1(G) norm of the convolution kernel, hence a bound for the
    norm of K_alpha on L^{2,a}, attained since the operator is normaloid.
    """
    if p.degenerate:
        return abs(1.0 - p.alpha / math.pi)
    return abs(math.sin(p.c * p.beta) / math.sin(p.c * math.pi))


def spectral_radius(p: WedgeParams) -> float:
    """Spectral radius of K_alpha on L^{2,a}, equal to its norm"""
    return norm_bound(p)


def energy_norm_bound(alpha: float) -> float:
    """Norm |1 - alpha/pi| of K_alpha on the energy space"""
    return abs(1.0 - validate_alpha(alpha) / math.pi)


def real_axis_crossings(p: WedgeParams):
    """The two real points of the spectral curve: (symbol at 0, 0)"""
    return (sigma_point(p, 0.0).real, 0.0)


def mellin_symbol_quadrature(p: WedgeParams, xi: float, rule: QuadratureRule = DEFAULT_RULE) -> QuadratureResult:
    """int_0^inf i_{alpha,a}(s) s^(i xi) ds/s by quadrature over s

    The semi-infinite rule maps s = e^u, so the integrand decays exponentially
    in u at both ends with rates (3 - a)/2 and (1 + a)/2.

    Args:
        p (WedgeParams): wedge parameters
        xi (float): real frequency
        rule (QuadratureRule, optional): tolerances; the kind is forced to semi-infinite. Defaults to DEFAULT_RULE.

    Returns:
        QuadratureResult: complex value with its error estimate
    """
    k = -math.sin(p.alpha) / math.pi
    cos_a = math.cos(p.alpha)
    e = 0.5 * (3.0 - p.a) - 1.0
    xi = float(xi)

    def integrand(s):
        return k * s ** e / (1.0 + s * s - 2.0 * s * cos_a) * cmath.exp(1j * xi * math.log(s))

    return integrate(integrand, (0.0, math.inf), rule.with_kind(QuadratureKind.SEMI_INFINITE))


def l1_norm_quadrature(p: WedgeParams, rule: QuadratureRule = DEFAULT_RULE) -> QuadratureResult:
    """Two-dimensional quadrature of || Delta^{-(a+1)/2} k_alpha ||_{L1(G)}

    The integrand |sin alpha|/(2 pi) s^((a+1)/2) (d(s) + t^2)^(-3/2), with
    d(s) = 1 + s^2 - 2 s cos alpha, is integrated against ds/s dt. Under
    t = sqrt(d) tau the t-integral becomes d^-1 int (1 + tau^2)^(-3/2) dtau,
    so the plane integral is the product of two one-dimensional quadratures
    and the error of each factor is carried into the product.
    """
    k = abs(math.sin(p.alpha)) / (2.0 * math.pi)
    cos_a = math.cos(p.alpha)
    e = 0.5 * (p.a + 1.0) - 1.0
    inner = integrate(lambda tau: (1.0 + tau * tau) ** -1.5, (-math.inf, math.inf),
                      rule.with_kind(QuadratureKind.DOUBLY_INFINITE).refined(0.01))
    outer = integrate(lambda s: k * s ** e / (1.0 + s * s - 2.0 * s * cos_a), (0.0, math.inf),
                      rule.with_kind(QuadratureKind.SEMI_INFINITE).refined(0.25))
    value = outer.value * inner.value
    error = outer.error * abs(inner.value) + abs(outer.value) * inner.error
    converged = outer.converged and inner.converged and error <= rule.tolerance(value)
    return QuadratureResult(value, error, converged, outer.evaluations + inner.evaluations,
                            '; '.join(m for m in (outer.message, inner.message) if m))
