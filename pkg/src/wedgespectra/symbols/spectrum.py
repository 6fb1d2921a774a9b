"""Classification of a spectral parameter against sigma(K_alpha, L^{2,a})

The spectrum is the union of the filled curve and its reflection through the
origin. Outside the disc of radius norm_bound every point is a resolvent
point; for a = 1 the spectrum is the real interval [-m, m], m = |1 - alpha/pi|.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .. import config
from ..errors import DomainError
from .curve import sample_curve, segment_distance, winding_number
from .mellin import norm_bound
from .params import WedgeParams

__all__ = [ "Classification", "SpectralPoint", "Membership", "classify", "classify_interval", "in_spectrum_L2" ]


class Classification(enum.Enum):
    """Position of lambda relative to the spectrum"""
    RESOLVENT = 'resolvent'
    BOUNDARY = 'essential-spectrum-boundary'
    INTERIOR = 'interior'

    @property
    def in_spectrum(self) -> bool:
        return self is not Classification.RESOLVENT


@dataclass(frozen=True)
class SpectralPoint:
    """A finite complex spectral parameter"""
    value: complex

    def __post_init__(self):
        value = complex(self.value)
        if not cmath.isfinite(value):
            raise DomainError(f'spectral parameter must be finite, got {self.value!r}')
        object.__setattr__(self, 'value', value)

    def __complex__(self) -> complex:
        return self.value


@dataclass(frozen=True)
class Membership:
    """Classification together with the test that decided it

    Attributes:
        classification (Classification): resolvent, boundary or interior
        certificate (str): which test decided
        winding (tuple): winding numbers of (curve, lambda) and (curve, -lambda), when computed
    """
    classification: Classification
    certificate: str
    winding: tuple = ()


def _as_complex(lam) -> complex:
    return SpectralPoint(lam.value if isinstance(lam, SpectralPoint) else lam).value


def classify_interval(lam, m: float, on_curve_tol: float) -> Membership:
    """Membership of lambda in the real interval [-m, m]

    Points within tau_on of an endpoint are boundary points, points of the
    open interval (imaginary part within tau_on) are interior points.
    """
    lam = _as_complex(lam)
    if abs(lam.imag) <= on_curve_tol and abs(lam.real) <= m + on_curve_tol:
        if abs(abs(lam.real) - m) <= on_curve_tol:
            return Membership(Classification.BOUNDARY, f'|Re lambda| within {on_curve_tol:g} of the endpoint {m:.17g}')
        return Membership(Classification.INTERIOR, f'lambda inside the real interval [-{m:.17g}, {m:.17g}]')
    return Membership(Classification.RESOLVENT, f'lambda off the real interval [-{m:.17g}, {m:.17g}]')


def classify(p: WedgeParams, lam, tol: float | None = None, on_curve_tol: float | None = None) -> Membership:
    """Classify lambda against the L^{2,a} spectrum of K_alpha, with a certificate

    Args:
        p (WedgeParams): wedge parameters
        lam (complex | SpectralPoint): the spectral parameter
        tol (float, optional): curve chord length. Defaults to the configured curve_tol.
        on_curve_tol (float, optional): tau_on. Defaults to the configured value.

    Raises:
        SamplingError: the curve is too coarse for a winding number

    Returns:
        Membership: classification and certificate
    """
    settings = config.current()
    tau = settings.on_curve_tol if on_curve_tol is None else on_curve_tol
    lam = _as_complex(lam)
    bound = norm_bound(p)
    if abs(lam) > bound + tau:
        return Membership(Classification.RESOLVENT, f'|lambda| = {abs(lam):.17g} exceeds the norm bound {bound:.17g}')
    if p.degenerate:
        return classify_interval(lam, bound, tau)
    curve = sample_curve(p, tol)
    distance = min(float(segment_distance(curve.points, lam)), float(segment_distance(curve.points, -lam)))
    if distance <= tau:
        return Membership(Classification.BOUNDARY, f'lambda is {distance:.3e} from the curve or its reflection')
    plus = winding_number(curve, lam, tau)
    minus = winding_number(curve, -lam, tau)
    if plus != 0 or minus != 0:
        return Membership(Classification.INTERIOR, f'winding numbers ({plus}, {minus}) around lambda and -lambda',
                          (plus, minus))
    return Membership(Classification.RESOLVENT, 'zero winding around lambda and -lambda', (plus, minus))


def in_spectrum_L2(p: WedgeParams, lam, tol: float | None = None, on_curve_tol: float | None = None) -> Classification:
    """Resolvent, boundary or interior classification of lambda for K_alpha on L^{2,a}"""
    return classify(p, lam, tol, on_curve_tol).classification
