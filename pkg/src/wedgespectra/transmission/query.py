"""Well-posedness of the transmission problems on the wedge

For the permittivity ratio epsilon != 1, the transmission problem is
equivalent to inverting lambda - K_alpha with lambda = (1 + eps)/(1 - eps).
Problem L asks for L^{2,a} boundary data, problem E for finite energy; the
latter is ill-posed exactly on the real interval [-m, m], m = |1 - alpha/pi|.
"""
from __future__ import annotations

import cmath
import enum
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy

from .. import config
from ..errors import DomainError
from ..symbols import (Classification, WedgeParams, classify, classify_interval, energy_norm_bound,
                       sample_curve, validate_alpha)

__all__ = [ "Problem", "TransmissionQuery", "Verdict", "mobius", "mobius_inverse", "illposed_interval_E",
            "check", "epsilon_boundary", "bisect_threshold" ]

logger = logging.getLogger(__name__)


class Problem(enum.Enum):
    """Function space of the boundary data"""
    L = 'L'
    E = 'E'

    @classmethod
    def parse(cls, value) -> Problem:
        if isinstance(value, Problem):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise DomainError(f'problem must be L or E, got {value!r}') from None


def mobius(epsilon: complex) -> complex:
    """lambda = (1 + eps)/(1 - eps)

    Raises:
        DomainError: eps = 1 or eps is not finite
    """
    epsilon = complex(epsilon)
    if not cmath.isfinite(epsilon):
        raise DomainError(f'epsilon must be finite, got {epsilon}')
    if epsilon == 1:
        raise DomainError('epsilon = 1 has no spectral parameter')
    return (1.0 + epsilon) / (1.0 - epsilon)


def mobius_inverse(lam: complex) -> complex:
    """eps = (lambda - 1)/(lambda + 1), inverse of mobius

    Raises:
        DomainError: lambda = -1 or lambda is not finite
    """
    lam = complex(lam)
    if not cmath.isfinite(lam):
        raise DomainError(f'lambda must be finite, got {lam}')
    if lam == -1:
        raise DomainError('lambda = -1 is the image of epsilon = infinity')
    return (lam - 1.0) / (lam + 1.0)


@dataclass(frozen=True)
class TransmissionQuery:
    """One well-posedness question

    Attributes:
        epsilon (complex): permittivity ratio, not 1
        alpha (float): opening angle of the wedge
        problem (Problem): L or E
        a (float): weight exponent of problem L
    """
    epsilon: complex
    alpha: float
    problem: Problem = Problem.L
    a: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'epsilon', complex(self.epsilon))
        object.__setattr__(self, 'problem', Problem.parse(self.problem))
        object.__setattr__(self, 'alpha', validate_alpha(self.alpha))
        mobius(self.epsilon)
        if self.problem is Problem.E and self.a != 0.0:
            raise DomainError('the weight exponent applies to problem L only')
        WedgeParams(self.alpha, self.a)

    @property
    def params(self) -> WedgeParams:
        return WedgeParams(self.alpha, self.a)

    @property
    def lam(self) -> complex:
        """Spectral parameter of the query"""
        return mobius(self.epsilon)


@dataclass(frozen=True)
class Verdict:
    """Answer to a TransmissionQuery

    Boundary points of the spectrum count as ill-posed.

    Attributes:
        lam (complex): the spectral parameter
        classification (Classification): resolvent, boundary or interior
        certificate (str): which test decided
    """
    lam: complex
    classification: Classification
    certificate: str

    @property
    def wellposed(self) -> bool:
        return self.classification is Classification.RESOLVENT

    def as_dict(self) -> dict:
        return {
            "wellposed": self.wellposed,
            "lambda": [self.lam.real, self.lam.imag],
            "classification": self.classification.value,
            "certificate": self.certificate,
        }


def illposed_interval_E(alpha: float) -> Tuple[float, float]:
    """Real epsilon interval on which problem E is ill-posed

    Args:
        alpha (float): opening angle

    Raises:
        DomainError: alpha is not a valid angle

    Returns:
        Tuple[float, float]: (eps_min, eps_max), the pull-back of [-m, m] with m = |1 - alpha/pi|
    """
    m = energy_norm_bound(validate_alpha(alpha))
    ends = sorted(((m - 1.0) / (m + 1.0), (-m - 1.0) / (1.0 - m)))
    return ends[0], ends[1]


def check(q: TransmissionQuery, tol: float | None = None, on_curve_tol: float | None = None) -> Verdict:
    """Decide whether the transmission problem of q is well posed

    Args:
        q (TransmissionQuery): the query
        tol (float, optional): curve chord length for problem L. Defaults to the configured curve_tol.
        on_curve_tol (float, optional): tau_on. Defaults to the configured value.

    Raises:
        SamplingError: the curve is too coarse for a winding number

    Returns:
        Verdict: the answer with its certificate
    """
    tau = config.current().on_curve_tol if on_curve_tol is None else on_curve_tol
    lam = q.lam
    if q.problem is Problem.E:
        membership = classify_interval(lam, energy_norm_bound(q.alpha), tau)
    else:
        membership = classify(q.params, lam, tol, tau)
    logger.debug('eps=%s on alpha=%g (%s): lambda=%s is %s', q.epsilon, q.alpha, q.problem.value, lam,
                 membership.classification.value)
    return Verdict(lam, membership.classification, membership.certificate)


def epsilon_boundary(p: WedgeParams, tol: float | None = None) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """The curve and its reflection pulled back to the epsilon plane

    Points of the curve at lambda = -1 map to infinity and are returned as nan,
    which breaks the polyline there.

    Args:
        p (WedgeParams): wedge parameters
        tol (float, optional): chord length in the lambda plane. Defaults to the configured curve_tol.

    Returns:
        Tuple[numpy.ndarray, numpy.ndarray]: epsilon polylines of the curve and of its reflection
    """
    curve = sample_curve(p, tol)

    def pull_back(lam):
        near = numpy.abs(lam + 1.0) < 1e-12
        with numpy.errstate(divide='ignore', invalid='ignore'):
            eps = (lam - 1.0) / numpy.where(near, 1.0, lam + 1.0)
        return numpy.where(near, complex(math.nan, math.nan), eps)

    return pull_back(curve.points), pull_back(-curve.points)


def bisect_threshold(alpha: float, problem, eps_inside: complex, eps_outside: complex, a: float = 0.0,
                     tol: float = 1e-9, on_curve_tol: float | None = None) -> complex:
    """Point of the segment [eps_inside, eps_outside] where the verdict flips

    Args:
        alpha (float): opening angle
        problem (Problem | str): L or E
        eps_inside (complex): an ill-posed permittivity ratio
        eps_outside (complex): a well-posed permittivity ratio
        a (float, optional): weight exponent of problem L. Defaults to 0.
        tol (float, optional): length of the final bracket. Defaults to 1e-9.
        on_curve_tol (float, optional): tau_on. Defaults to the configured value.

    Raises:
        DomainError: the end points do not have opposite verdicts

    Returns:
        complex: midpoint of the final bracket, its last ill-posed end within tol
    """
    def wellposed(eps) -> bool:
        return check(TransmissionQuery(eps, alpha, problem, a), on_curve_tol=on_curve_tol).wellposed

    lo, hi = complex(eps_inside), complex(eps_outside)
    if wellposed(lo) or not wellposed(hi):
        raise DomainError(f'eps_inside={lo} must be ill-posed and eps_outside={hi} well-posed')
    while abs(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        if wellposed(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
