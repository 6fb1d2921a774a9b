"""Finite sections of the Mellin and Bessel operators on a logarithmic grid

Both operators act on L2(R+, dr/r); with r = e^u they become integral
operators on L2(R, du), discretised by the rectangle rule on a uniform grid
in u. The truncated Mellin operator is a convolution in u and its section
is Toeplitz.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy
import scipy.linalg

from .. import config
from ..errors import DomainError
from ..numerics import DenseMatrix, QuadratureRule, integrate_box
from ..symbols import SpectralCurve, WedgeParams, mellin_kernel, region_distance
from .kernels import i_kernel, t_kernel

__all__ = [ "SECTION_RULE", "Containment", "toeplitz_section", "nystrom_T", "containment", "perturbation_hs_norm" ]

logger = logging.getLogger(__name__)

SECTION_RULE = QuadratureRule(abs_tol=1e-9, rel_tol=1e-8)

_ROWS_PER_TASK = 64


def _check_size(n: int, settings: config.Settings) -> int:
    if int(n) != n or n < 2:
        raise DomainError(f'section order must be an integer >= 2, got {n}')
    if n > settings.eigen_cap:
        raise DomainError(f'section order {n} exceeds the eigenvalue cap {settings.eigen_cap}')
    return int(n)


def toeplitz_section(p: WedgeParams, n: int, h: float, settings: config.Settings | None = None) -> DenseMatrix:
    """Finite section of the truncated Mellin operator I_{alpha,a} on (0, 1)

    M[j, k] = h i_{alpha,a}(exp(-(j - k) h)) on the grid u_j = -j h.

    Args:
        p (WedgeParams): wedge parameters
        n (int): order, at least 2
        h (float): grid step, positive
        settings (config.Settings, optional): settings holding the size cap. Defaults to the process settings.

    Raises:
        DomainError: n < 2, n over the cap, or h <= 0

    Returns:
        DenseMatrix: the Toeplitz section
    """
    settings = config.current() if settings is None else settings
    n = _check_size(n, settings)
    if not (h > 0 and math.isfinite(h)):
        raise DomainError(f'grid step must be positive, got {h}')
    d = numpy.arange(n) * h
    column = h * mellin_kernel(p, numpy.exp(-d))
    row = h * mellin_kernel(p, numpy.exp(d))
    return DenseMatrix(scipy.linalg.toeplitz(column, row))


def nystrom_T(p: WedgeParams, n: int, L: float, settings: config.Settings | None = None) -> DenseMatrix:
    """Nystrom matrix of the Bessel operator T_{alpha,a} on [e^-L, e^L]

    M[j, k] = h t(exp(u_j), exp(u_k)) with u uniform on [-L, L] and h = 2L/(n - 1).
    Rows are assembled in blocks on a thread pool of settings.threads workers.

    Args:
        p (WedgeParams): wedge parameters
        n (int): order, at least 2
        L (float): half-width of the logarithmic window, positive
        settings (config.Settings, optional): thread count and size cap. Defaults to the process settings.

    Raises:
        DomainError: n < 2, n over the cap, or L <= 0

    Returns:
        DenseMatrix: the section
    """
    settings = config.current() if settings is None else settings
    n = _check_size(n, settings)
    if not (L > 0 and math.isfinite(L)):
        raise DomainError(f'window half-width must be positive, got {L}')
    u = numpy.linspace(-L, L, n)
    h = 2.0 * L / (n - 1)
    grid = numpy.exp(u)
    entries = numpy.empty((n, n))

    def assemble(start: int) -> None:
        stop = min(start + _ROWS_PER_TASK, n)
        entries[start:stop] = h * t_kernel(p, grid[start:stop, None], grid[None, :])

    workers = min(settings.threads, max(1, n // _ROWS_PER_TASK))
    logger.debug('assembling %dx%d Bessel section on %d workers', n, n, workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        list(executor.map(assemble, range(0, n, _ROWS_PER_TASK)))
    return DenseMatrix(entries)


class Containment(NamedTuple):
    """How well an eigenvalue cloud sits inside the filled spectral curve"""
    tolerance: float
    fraction_inside: float
    max_distance: float


def containment(eigs, curve: SpectralCurve, tolerance: float = 0.05) -> Containment:
    """Fraction of eigenvalues within tolerance of the filled curve, and the worst distance

    Args:
        eigs (array_like): eigenvalues
        curve (SpectralCurve): sampled curve bounding the region
        tolerance (float, optional): distance counted as inside. Defaults to 0.05.

    Raises:
        DomainError: tolerance is not positive

    Returns:
        Containment: (tolerance, fraction_inside, max_distance)
    """
    if not tolerance > 0:
        raise DomainError(f'tolerance must be positive, got {tolerance}')
    eigs = numpy.asarray(eigs, dtype=complex).ravel()
    if eigs.size == 0:
        return Containment(float(tolerance), 1.0, 0.0)
    distance = region_distance(curve, eigs)
    return Containment(float(tolerance), float(numpy.mean(distance <= tolerance)), float(numpy.max(distance)))


def perturbation_hs_norm(p: WedgeParams, r_max: float = 4.0, L: float = 24.0,
                         rule: QuadratureRule = SECTION_RULE) -> float:
    """Hilbert-Schmidt norm of the weighted difference t - i on (e^-L, r_max)^2

    The norm is taken on L2(R+, dr/r); it stays bounded as L grows, which is
    the compactness of T_{alpha,a} - I_{alpha,a} near the origin.

    Args:
        p (WedgeParams): wedge parameters
        r_max (float, optional): upper end of the window. Defaults to 4.
        L (float, optional): the window starts at e^-L. Defaults to 24.
        rule (QuadratureRule, optional): tolerances. Defaults to SECTION_RULE.

    Raises:
        DomainError: r_max <= e^-L
        QuadratureError: the rectangle rule did not converge

    Returns:
        float: the norm
    """
    top = math.log(r_max)
    if not top > -L:
        raise DomainError(f'empty window: r_max={r_max}, L={L}')

    def density(U, V):
        r, x = numpy.exp(U), numpy.exp(V)
        return (t_kernel(p, r, x) - i_kernel(p, r, x)) ** 2

    # i jumps across r = 1 and x = 1
    cuts = [-L, 0.0, top] if top > 0 else [-L, top]
    total = 0.0
    for lo_u, hi_u in zip(cuts, cuts[1:]):
        for lo_v, hi_v in zip(cuts, cuts[1:]):
            total += float(integrate_box(density, ((lo_u, hi_u), (lo_v, hi_v)), rule, max_nodes=256).require())
    return math.sqrt(total)
