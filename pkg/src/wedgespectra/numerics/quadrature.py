"""Adaptive quadrature on finite, semi-infinite and doubly-infinite domains

Every integral of the package goes through this module. One-dimensional
integrals are delegated to QUADPACK (scipy.integrate.quad), rectangle
integrals use a tensor Gauss-Legendre rule with node doubling. A result that
did not reach its tolerance is never returned silently: it carries
``converged=False`` and raises on ``require()``.
"""
from __future__ import annotations

import dataclasses
import enum
import functools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy
import scipy.integrate

from ..errors import DomainError, IntegrandError, QuadratureError

__all__ = [ "QuadratureKind", "QuadratureRule", "QuadratureResult", "DEFAULT_RULE",
            "integrate", "integrate_box", "integrate_cosine", "gauss_legendre", "box_rule" ]

logger = logging.getLogger(__name__)

# |u| cap of the exponential substitution s = a + e^u
_U_MAX = 300.0
_U_STEP = 0.5
_CLIP_RUN = 6
_MAX_BOX_NODES = 512


class QuadratureKind(enum.Enum):
    """Decay class of the integration domain"""
    FINITE = 'finite'
    SEMI_INFINITE = 'semi-infinite'
    DOUBLY_INFINITE = 'doubly-infinite'


@dataclass(frozen=True)
class QuadratureRule:
    """Tolerances and refinement budget of a quadrature

    Attributes:
        kind (QuadratureKind): decay class the integrand is declared to have
        abs_tol (float): absolute tolerance, > 0
        rel_tol (float): relative tolerance, > 0
        max_refinements (int): QUADPACK subinterval limit; for rectangle rules,
            the node count is doubled at most this many times
    """
    kind: QuadratureKind = QuadratureKind.FINITE
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_refinements: int = 200

    def __post_init__(self):
        if not isinstance(self.kind, QuadratureKind):
            raise DomainError(f'kind must be a QuadratureKind, got {self.kind!r}')
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise DomainError(f'abs_tol must be positive, got {self.abs_tol}')
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise DomainError(f'rel_tol must be positive, got {self.rel_tol}')
        if self.max_refinements < 1:
            raise DomainError(f'max_refinements must be at least 1, got {self.max_refinements}')

    def tolerance(self, value) -> float:
        """Accepted error for a given result

        Args:
            value (float | complex | numpy.ndarray): the integral value

        Returns:
            float: max(abs_tol, rel_tol * |value|)
        """
        return max(self.abs_tol, self.rel_tol * float(numpy.max(numpy.abs(value))))

    def with_kind(self, kind: QuadratureKind) -> QuadratureRule:
        return dataclasses.replace(self, kind=kind)

    def refined(self, factor: float = 0.5) -> QuadratureRule:
        """Same rule with both tolerances scaled by factor"""
        return dataclasses.replace(self, abs_tol=self.abs_tol * factor, rel_tol=self.rel_tol * factor)


DEFAULT_RULE = QuadratureRule()


@dataclass(frozen=True)
class QuadratureResult:
    """Value of a quadrature with its error estimate

    Attributes:
        value (float | complex | numpy.ndarray): the integral
        error (float): estimated absolute error
        converged (bool): whether error is within the rule tolerance
        evaluations (int): integrand evaluations spent
        message (str): QUADPACK diagnostic when not converged
    """
    value: object
    error: float
    converged: bool
    evaluations: int = 0
    message: str = ''

    def require(self):
        """Value of a converged result

        Raises:
            QuadratureError: the result is flagged as non-converged

        Returns:
            float | complex | numpy.ndarray: the value
        """
        if not self.converged:
            raise QuadratureError(f'quadrature did not converge (error estimate {self.error:.3e}): {self.message}')
        return self.value

    def __add__(self, other: QuadratureResult) -> QuadratureResult:
        return QuadratureResult(self.value + other.value, self.error + other.error,
                                self.converged and other.converged,
                                self.evaluations + other.evaluations,
                                '; '.join(m for m in (self.message, other.message) if m))


def _guard(f: Callable) -> Callable:
    @functools.wraps(f)
    def guarded(t):
        value = f(t)
        if not numpy.all(numpy.isfinite(value)):
            raise IntegrandError(f'integrand is not finite at t={t!r}: {value!r}')
        return value
    return guarded


def _quad(g: Callable, lower: float, upper: float, rule: QuadratureRule, **kwargs) -> QuadratureResult:
    out = scipy.integrate.quad(g, lower, upper, epsabs=rule.abs_tol / 2, epsrel=rule.rel_tol,
                               limit=rule.max_refinements, full_output=1, **kwargs)
    value, error, info = out[0], out[1], out[2]
    message = out[3] if len(out) > 3 else ''
    converged = error <= rule.tolerance(value)
    if not converged:
        logger.warning('quad on [%g, %g] flagged: error %.3e > tolerance %.3e (%s)',
                       lower, upper, error, rule.tolerance(value), message)
    return QuadratureResult(value, error, converged, int(info.get('neval', 0)), message)


def _clip(g: Callable, start: float, direction: float, threshold: float,
          relative: float = 0.0) -> Tuple[float, float]:
    """Walk from start until g stays below threshold, returning the clip point and a tail estimate

    With a relative factor, g must also stay below relative times the largest
    value met so far, so a slowly rising integrand is followed to its peak.

    The walk stops at the last finite evaluation if g overflows; the tail is
    then unknown and reported as infinite.
    """
    u = start
    run = 0
    previous = abs(g(u))
    peak = previous
    while abs(u) < _U_MAX:
        try:
            current = abs(g(u + direction * _U_STEP))
        except OverflowError:
            logger.warning('integrand overflows at u = %g before its tail fell below %.1e',
                           u + direction * _U_STEP, threshold)
            return u, math.inf
        u += direction * _U_STEP
        peak = max(peak, current)
        run = run + 1 if current <= threshold and current <= relative * peak else 0
        if run >= _CLIP_RUN:
            if 0 < current < previous:
                rate = math.log(previous / current) / _U_STEP
                return u, current / rate
            return u, current * _U_STEP
        previous = current
    logger.warning('tail of the exponential substitution not clipped before |u| = %g', _U_MAX)
    return u, previous


def _semi_infinite(f: Callable, lower: float, rule: QuadratureRule) -> QuadratureResult:
    def g(u):
        e = math.exp(u)
        return f(lower + e) * e

    threshold = rule.abs_tol / 100
    u_lo, tail_lo = _clip(g, 0.0, -1.0, threshold, rule.rel_tol / 100)
    u_hi, tail_hi = _clip(g, 0.0, +1.0, threshold, rule.rel_tol / 100)
    body = _quad(g, u_lo, u_hi, rule)
    error = body.error + tail_lo + tail_hi
    converged = body.converged and error <= rule.tolerance(body.value)
    return QuadratureResult(body.value, error, converged, body.evaluations, body.message)


def _integrate_real(f: Callable, lower: float, upper: float, rule: QuadratureRule) -> QuadratureResult:
    kind = rule.kind
    if kind is QuadratureKind.FINITE:
        if not (math.isfinite(lower) and math.isfinite(upper)):
            raise DomainError(f'finite rule on an unbounded domain [{lower}, {upper}]')
        return _quad(f, lower, upper, rule)
    if kind is QuadratureKind.SEMI_INFINITE:
        if math.isfinite(lower) and upper == math.inf:
            return _semi_infinite(f, lower, rule)
        if lower == -math.inf and math.isfinite(upper):
            return _semi_infinite(lambda t: f(-t), -upper, rule)
        raise DomainError(f'semi-infinite rule needs exactly one infinite end, got [{lower}, {upper}]')
    if not (lower == -math.inf and upper == math.inf):
        raise DomainError(f'doubly-infinite rule needs (-inf, inf), got [{lower}, {upper}]')
    return _semi_infinite(lambda t: f(t) + f(-t), 0.0, rule)


def integrate(f: Callable, domain: Tuple[float, float], rule: QuadratureRule = DEFAULT_RULE) -> QuadratureResult:
    """Integrate a real or complex function of one real variable

    Semi-infinite domains are mapped by s = a + e^u and the u-range is clipped
    where the integrand falls below abs_tol/100; the doubly-infinite case folds
    onto the half-line. The map suits integrands decaying algebraically or like
    a Gaussian in t; an integrand already written in a logarithmic variable
    should be integrated in the original variable with the semi-infinite rule.
    An overflow while clipping flags the result. Complex integrands are split
    into real and imaginary parts.

    Args:
        f (Callable): scalar integrand
        domain (Tuple[float, float]): integration bounds, possibly infinite
        rule (QuadratureRule, optional): tolerances and declared decay. Defaults to DEFAULT_RULE.

    Raises:
        DomainError: the bounds do not match rule.kind
        IntegrandError: f returned NaN or inf

    Returns:
        QuadratureResult: value, error estimate and convergence flag
    """
    lower, upper = float(domain[0]), float(domain[1])
    if lower > upper:
        result = integrate(f, (upper, lower), rule)
        return dataclasses.replace(result, value=-result.value)
    guarded = _guard(f)
    sample_at = 0.5 * (lower + upper) if math.isfinite(lower + upper) else (
        lower + 1.0 if math.isfinite(lower) else (upper - 1.0 if math.isfinite(upper) else 0.0))
    if not numpy.iscomplexobj(guarded(sample_at)):
        return _integrate_real(lambda t: float(guarded(t)), lower, upper, rule)
    real = _integrate_real(lambda t: complex(guarded(t)).real, lower, upper, rule)
    imag = _integrate_real(lambda t: complex(guarded(t)).imag, lower, upper, rule)
    value = complex(real.value, imag.value)
    error = math.hypot(real.error, imag.error)
    return QuadratureResult(value, error, real.converged and imag.converged,
                            real.evaluations + imag.evaluations,
                            '; '.join(m for m in (real.message, imag.message) if m))


def integrate_cosine(f: Callable, omega: float, rule: QuadratureRule = DEFAULT_RULE) -> QuadratureResult:
    """Fourier cosine integral over the half-line, through QUADPACK's QAWF

    Args:
        f (Callable): real integrand, decaying at infinity
        omega (float): angular frequency, > 0
        rule (QuadratureRule, optional): only abs_tol is honoured by QAWF. Defaults to DEFAULT_RULE.

    Raises:
        DomainError: omega is not positive

    Returns:
        QuadratureResult: value of the integral of f(t) cos(omega t) on [0, inf)
    """
    if not omega > 0:
        raise DomainError(f'omega must be positive, got {omega}')
    out = scipy.integrate.quad(_guard(f), 0.0, numpy.inf, weight='cos', wvar=omega,
                               epsabs=rule.abs_tol / 2, limlst=max(50, rule.max_refinements // 4),
                               limit=rule.max_refinements, full_output=1)
    value, error, info = out[0], out[1], out[2]
    message = out[3] if len(out) > 3 else ''
    converged = error <= rule.tolerance(value)
    if not converged:
        logger.warning('QAWF flagged at omega=%g: error %.3e (%s)', omega, error, message)
    return QuadratureResult(value, error, converged, int(info.get('neval', 0)) if isinstance(info, dict) else 0, message)


@functools.lru_cache(maxsize=32)
def gauss_legendre(n: int) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1], cached and read-only"""
    nodes, weights = numpy.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def box_rule(f: Callable, box, n: int):
    """Fixed-order tensor Gauss-Legendre rule with n nodes per axis, leading axes carried through

    Raises:
        IntegrandError: f produced a non-finite value
    """
    (x0, x1), (y0, y1) = box
    t, w = gauss_legendre(n)
    hx, hy = 0.5 * (x1 - x0), 0.5 * (y1 - y0)
    xs = x0 + hx * (t + 1.0)
    ys = y0 + hy * (t + 1.0)
    X, Y = numpy.meshgrid(xs, ys, indexing='ij')
    values = numpy.asarray(f(X, Y))
    if not numpy.all(numpy.isfinite(values)):
        raise IntegrandError('rectangle integrand is not finite on the quadrature grid')
    return numpy.einsum('...ij,i,j->...', values, w, w) * (hx * hy)


def integrate_box(f: Callable, box, rule: QuadratureRule = DEFAULT_RULE,
                  start_nodes: int = 16, max_nodes: int = _MAX_BOX_NODES) -> QuadratureResult:
    """Tensor Gauss-Legendre integral over a rectangle

    The integrand receives two (n, n) grids and may return an array of shape
    (..., n, n); leading axes are carried through, so many targets can be
    integrated against the same grid at once. The node count doubles until
    two successive levels agree within the rule tolerance.

    Args:
        f (Callable): vectorised integrand f(X, Y)
        box (tuple): ((x0, x1), (y0, y1)), finite
        rule (QuadratureRule, optional): tolerances. Defaults to DEFAULT_RULE.
        start_nodes (int, optional): nodes per axis on the first level. Defaults to 16.
        max_nodes (int, optional): cap on nodes per axis. Defaults to 512.

    Raises:
        DomainError: the box is not finite or start_nodes < 2
        IntegrandError: f produced a non-finite value

    Returns:
        QuadratureResult: value (scalar or array), max error estimate and convergence flag
    """
    (x0, x1), (y0, y1) = box
    if not all(math.isfinite(float(v)) for v in (x0, x1, y0, y1)):
        raise DomainError(f'box must be finite, got {box!r}')
    if start_nodes < 2:
        raise DomainError(f'start_nodes must be at least 2, got {start_nodes}')
    n = start_nodes
    coarse = box_rule(f, box, n)
    evaluations = n * n
    error = math.inf
    refinements = 0
    while refinements < rule.max_refinements and 2 * n <= max_nodes:
        n *= 2
        refinements += 1
        fine = box_rule(f, box, n)
        evaluations += n * n
        error = float(numpy.max(numpy.abs(fine - coarse)))
        coarse = fine
        if error <= rule.tolerance(fine):
            return QuadratureResult(fine, error, True, evaluations)
    logger.warning('rectangle rule flagged at %d nodes per axis: error %.3e', n, error)
    return QuadratureResult(coarse, error, False, evaluations, f'no agreement at {n} nodes per axis')
