"""Adaptive sampling of the spectral curve, winding numbers and region distance

The curve is the range of the Mellin symbol over xi in R, closed at 0 as
xi -> +/- inf. It is traversed with increasing xi; with that order it winds
once positively around its interior for -1 < a < 1 and negatively for
1 < a < 3. For a = 1 it collapses onto the real segment between
alpha/pi - 1 and 0.
"""
from __future__ import annotations

import functools
import logging
import math

import numpy

from .. import config
from ..errors import DomainError, OnCurveError, SamplingError
from .mellin import sigma_point
from .params import WedgeParams

__all__ = [ "SpectralCurve", "sample_curve", "winding_number", "segment_distance", "region_distance" ]

logger = logging.getLogger(__name__)

_GRID = 64
_SCALE = 1.0
_RESIDUE = 0.1


class SpectralCurve:
    """Sampled spectral curve of the Mellin symbol, closed at the origin

    Samples cover xi >= 0 adaptively and are mirrored with conjugate values, so
    the polyline is exactly symmetric under complex conjugation.
    """

    def __init__(self, params: WedgeParams, xi: numpy.ndarray, values: numpy.ndarray, tol: float, sign: int = 1):
        xi = numpy.array(xi, dtype=float)
        values = numpy.array(values, dtype=complex)
        if xi.shape != values.shape or xi.ndim != 1:
            raise DomainError('xi and values must be one-dimensional arrays of the same length')
        closed = numpy.concatenate(([0.0 + 0.0j], values, [0.0 + 0.0j]))
        for array in (xi, values, closed):
            array.setflags(write=False)
        self.__params = params
        self.__xi = xi
        self.__values = values
        self.__points = closed
        self.__tol = float(tol)
        self.__sign = sign

    @property
    def params(self) -> WedgeParams:
        return self.__params

    @property
    def xi(self) -> numpy.ndarray:
        """Sample abscissae, increasing

        Returns:
            numpy.ndarray: read-only array of xi
        """
        return self.__xi

    @property
    def values(self) -> numpy.ndarray:
        """Symbol values at the samples

        Returns:
            numpy.ndarray: read-only complex array
        """
        return self.__values

    @property
    def points(self) -> numpy.ndarray:
        """Closed polyline: 0, the samples in increasing xi, 0

        Returns:
            numpy.ndarray: read-only complex array
        """
        return self.__points

    @property
    def closed(self) -> bool:
        return True

    @property
    def tol(self) -> float:
        return self.__tol

    @property
    def sign(self) -> int:
        """+1 for the curve itself, -1 for its reflection through the origin"""
        return self.__sign

    @property
    def xi_tail(self) -> float:
        """Largest sampled |xi|"""
        return float(self.__xi[-1])

    def __neg__(self) -> SpectralCurve:
        return SpectralCurve(self.__params, self.__xi, -self.__values, self.__tol, -self.__sign)

    def __len__(self) -> int:
        return self.__xi.size

    def __repr__(self) -> str:
        return f'SpectralCurve(params={self.__params}, samples={len(self)}, tol={self.__tol!r}, sign={self.__sign:+d})'


def _initial_grid() -> numpy.ndarray:
    j = numpy.arange(_GRID)
    return numpy.tan(0.5 * math.pi * j / _GRID) * _SCALE


@functools.lru_cache(maxsize=64)
def _half_curve(params: WedgeParams, tol: float, max_samples: int):
    xi = _initial_grid()
    values = sigma_point(params, xi)
    # extend the tail until it is within tol/10 of the closure point
    while abs(values[-1]) >= 0.1 * tol and xi.size < max_samples:
        nxt = 2.0 * xi[-1] + 1.0
        xi = numpy.append(xi, nxt)
        values = numpy.append(values, sigma_point(params, nxt))
    while xi.size < max_samples:
        chords = numpy.abs(numpy.diff(values))
        coarse = numpy.nonzero(chords > tol)[0]
        if coarse.size == 0:
            break
        coarse = coarse[: max_samples - xi.size]
        mids = 0.5 * (xi[coarse] + xi[coarse + 1])
        xi = numpy.insert(xi, coarse + 1, mids)
        values = numpy.insert(values, coarse + 1, sigma_point(params, mids))
    else:
        logger.warning('curve sampling for %s stopped at the %d sample cap', params, max_samples)
    logger.debug('curve %s: %d samples per half, xi_tail=%g', params, xi.size, xi[-1])
    return xi, values


def sample_curve(p: WedgeParams, tol: float | None = None, settings: config.Settings | None = None) -> SpectralCurve:
    """Adaptively sampled spectral curve

    Adjacent samples are at most tol apart in the complex plane, xi = 0 is
    always a sample, and the tails are extended until |value| < tol/10.
    Results are cached per (params, tol).

    Args:
        p (WedgeParams): wedge parameters
        tol (float, optional): chord length. Defaults to the configured curve_tol.
        settings (config.Settings, optional): settings to use. Defaults to the process settings.

    Raises:
        DomainError: tol is not positive

    Returns:
        SpectralCurve: the sampled curve
    """
    settings = config.current() if settings is None else settings
    tol = settings.curve_tol if tol is None else float(tol)
    if not tol > 0:
        raise DomainError(f'tol must be positive, got {tol}')
    xi, values = _half_curve(p, tol, settings.max_curve_samples)
    full_xi = numpy.concatenate((-xi[:0:-1], xi))
    full_values = numpy.concatenate((numpy.conj(values[:0:-1]), values))
    return SpectralCurve(p, full_xi, full_values, tol)


def segment_distance(points: numpy.ndarray, lam) -> numpy.ndarray:
    """Distance from each lambda to the polyline through points, vectorised over lambda"""
    lam = numpy.asarray(lam, dtype=complex)
    a = points[:-1]
    d = points[1:] - a
    length2 = numpy.abs(d) ** 2
    flat = lam.reshape(-1, 1)
    with numpy.errstate(invalid='ignore', divide='ignore'):
        t = numpy.where(length2 > 0, ((flat - a) * numpy.conj(d)).real / length2, 0.0)
    t = numpy.clip(t, 0.0, 1.0)
    dist = numpy.min(numpy.abs(a + t * d - flat), axis=1)
    return dist.reshape(lam.shape)


def _winding_total(points: numpy.ndarray, lam: complex) -> float:
    diff = points - lam
    return float(numpy.sum(numpy.angle(diff[1:] / diff[:-1]))) / (2.0 * math.pi)


def winding_number(curve: SpectralCurve, lam: complex, on_curve_tol: float | None = None) -> int:
    """Winding number of the closed polyline around lambda

    Args:
        curve (SpectralCurve): sampled curve
        lam (complex): the point
        on_curve_tol (float, optional): tau_on. Defaults to the configured value.

    Raises:
        OnCurveError: lambda is within tau_on of the polyline
        SamplingError: the argument increment is not close to a multiple of 2 pi

    Returns:
        int: signed number of turns, with increasing xi as the traversal order
    """
    tau = config.current().on_curve_tol if on_curve_tol is None else on_curve_tol
    lam = complex(lam)
    distance = float(segment_distance(curve.points, lam))
    if distance <= tau:
        raise OnCurveError(f'lambda={lam} is {distance:.3e} from the curve of {curve.params} (tolerance {tau:g})')
    total = _winding_total(curve.points, lam)
    turns = round(total)
    if abs(total - turns) >= _RESIDUE:
        raise SamplingError(f'winding residue {abs(total - turns):.3f} around lambda={lam}; refine the curve tolerance')
    return int(turns)


def region_distance(curve: SpectralCurve, lam, on_curve_tol: float | None = None) -> numpy.ndarray:
    """Distance from lambda to the closed region bounded by the curve, vectorised

    Zero inside the region or on the curve, Euclidean distance to the polyline otherwise.
    """
    tau = config.current().on_curve_tol if on_curve_tol is None else on_curve_tol
    lam = numpy.asarray(lam, dtype=complex)
    dist = segment_distance(curve.points, lam)
    out = numpy.array(dist, dtype=float).reshape(-1)
    flat = lam.reshape(-1)
    for index in numpy.nonzero(out > tau)[0]:
        if round(_winding_total(curve.points, flat[index])) != 0:
            out[index] = 0.0
    out[out <= tau] = 0.0
    return out.reshape(lam.shape)
