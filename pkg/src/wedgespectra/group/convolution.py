"""Right convolution on G, Haar integrals, Lebesgue norms and Young's bound

The right convolution is
    (f * k)(x, z) = int int f((x, z) . (s, t)^-1) k(s, t) ds/s dt,
and is evaluated in the coordinates of whichever factor is localised.
"""
from __future__ import annotations

import math
from typing import NamedTuple, Tuple

import numpy

from ..errors import DensityError
from ..numerics import (DEFAULT_RULE, QuadratureKind, QuadratureResult, QuadratureRule,
                        box_rule, gauss_legendre, integrate, integrate_box)
from .element import GroupElement
from .functions import Base, Box, Decay

__all__ = [ "ConvolutionG", "YoungBound", "convolve", "convolve_log", "haar_integral",
            "l1_norm", "l2_norm", "young_bound" ]

# complex entries per vectorised quadrature call
_BLOCK = 4_000_000


def _area(box: Box) -> float:
    (u0, u1), (z0, z1) = box
    return (u1 - u0) * (z1 - z0)


def _localized(f: Base, k: Base) -> bool:
    """Whether the integral runs over the box of f (otherwise over the box of k)

    An algebraic factor is never the integration domain. Between two localised
    factors a compact one wins over a Gaussian one, then the smaller box, so a
    narrow factor is never left between the nodes of a wide grid.
    """
    if f.decay is Decay.ALGEBRAIC and k.decay is Decay.ALGEBRAIC:
        raise DensityError('at least one factor of a convolution must be compact or Gaussian')
    if k.decay is Decay.ALGEBRAIC:
        return True
    if f.decay is Decay.ALGEBRAIC:
        return False
    if (f.decay is Decay.COMPACT) != (k.decay is Decay.COMPACT):
        return f.decay is Decay.COMPACT
    return _area(f.box) <= _area(k.box)


def _integrand(f: Base, k: Base, u_t, z_t):
    """Vectorised integrand over the localised factor's box, targets on the leading axes"""
    u_t = u_t[..., None, None]
    z_t = z_t[..., None, None]
    if _localized(f, k):
        def g(W, V):
            return f.evaluate_log(W, V) * k.evaluate_log(u_t - W, (z_t - V) * numpy.exp(-W)) * numpy.exp(-W)
        return g, f.box

    def g(S, T):
        return f.evaluate_log(u_t - S, z_t - numpy.exp(u_t - S) * T) * k.evaluate_log(S, T)
    return g, k.box


def convolve_log(f: Base, k: Base, u, z, nodes: int | None = None,
                 rule: QuadratureRule = DEFAULT_RULE, max_nodes: int = 256):
    """(f * k)(e^u, z), vectorised over targets

    Args:
        f (Base): left factor
        k (Base): right factor
        u (array_like): logarithms of the target dilations
        z (array_like): target translations
        nodes (int, optional): fixed Gauss-Legendre order per axis; adaptive when None. Defaults to None.
        rule (QuadratureRule, optional): tolerances of the adaptive rule. Defaults to DEFAULT_RULE.
        max_nodes (int, optional): node cap of the adaptive rule. Defaults to 256.

    Raises:
        DensityError: both factors decay algebraically
        QuadratureError: the adaptive rule did not converge

    Returns:
        numpy.ndarray: complex or real values, broadcast shape of u and z
    """
    u, z = numpy.broadcast_arrays(numpy.asarray(u, dtype=float), numpy.asarray(z, dtype=float))
    shape = u.shape
    u, z = u.ravel(), z.ravel()
    n_cap = nodes if nodes is not None else max_nodes
    block = max(1, _BLOCK // (n_cap * n_cap))
    parts = []
    for start in range(0, u.size, block):
        g, box = _integrand(f, k, u[start:start + block], z[start:start + block])
        if nodes is not None:
            parts.append(box_rule(g, box, nodes))
        else:
            parts.append(numpy.atleast_1d(integrate_box(g, box, rule, max_nodes=max_nodes).require()))
    values = numpy.concatenate(parts) if parts else numpy.empty(0)
    return values.reshape(shape)


def convolve(f: Base, k: Base, at: GroupElement, rule: QuadratureRule = DEFAULT_RULE) -> complex:
    """Right convolution f * k at one point of G

    Args:
        f (Base): left factor, bounded
        k (Base): right factor, in L1(G)
        at (GroupElement): evaluation point
        rule (QuadratureRule, optional): tolerances. Defaults to DEFAULT_RULE.

    Raises:
        QuadratureError: the rectangle rule did not converge

    Returns:
        complex: the convolution value
    """
    value = convolve_log(f, k, math.log(at.x), at.z, rule=rule)
    return complex(value) if numpy.iscomplexobj(value) else complex(float(value))


class ConvolutionG(Base):
    """Lazy right convolution f * k with f localised and k possibly algebraic

    Its partial Fourier transform in z is the one-dimensional integral
    int f^(e^w, zeta) k^(x e^-w, zeta e^w) dw over the log-dilation range of f.
    """

    def __init__(self, f: Base, k: Base, nodes: int = 64, margin: Tuple[float, float] = (40.0, 20.0)):
        super().__init__(0.0)
        if f.decay is Decay.ALGEBRAIC:
            raise DensityError('the left factor of a lazy convolution must be compact or Gaussian')
        self.__f, self.__k = f, k
        self.__nodes = int(nodes)
        self.__margin = margin

    @property
    def decay(self) -> Decay:
        return Decay.ALGEBRAIC

    @property
    def factors(self) -> Tuple[Base, Base]:
        return self.__f, self.__k

    @property
    def box(self) -> Box:
        (u0, u1), (z0, z1) = self.__f.box
        mu, mz = self.__margin
        return ((u0 - mu, u1 + 0.5 * mu), (z0 - mz, z1 + mz))

    def fourier_cutoff(self) -> float:
        return self.__f.fourier_cutoff()

    def _log_profile(self, u, z):
        return convolve_log(self.__f, self.__k, u, z, nodes=self.__nodes)

    def _partial_fourier_log(self, u, zeta, nodes: int = 64, max_nodes: int = 1024):
        u, zeta = numpy.broadcast_arrays(numpy.asarray(u, dtype=float), numpy.asarray(zeta, dtype=float))
        (w0, w1), _ = self.__f.box
        t, weights = gauss_legendre(self.__nodes)
        h = 0.5 * (w1 - w0)
        ws = w0 + h * (t + 1.0)
        uu, zz = u[..., None], zeta[..., None]
        f_hat = self.__f._partial_fourier_log(ws, zz)
        k_hat = self.__k._partial_fourier_log(uu - ws, zz * numpy.exp(ws))
        return (f_hat * k_hat) @ weights * h

    def __repr__(self) -> str:
        return f'ConvolutionG({self.__f!r}, {self.__k!r})'


def _nested_plane(g, rule: QuadratureRule) -> QuadratureResult:
    """Integral of g(u, z) over the whole plane, by iterated one-dimensional quadrature"""
    inner_rule = rule.with_kind(QuadratureKind.DOUBLY_INFINITE).refined(0.01)
    outer_rule = rule.with_kind(QuadratureKind.DOUBLY_INFINITE).refined(0.5)
    inner_results = []

    def inner(u):
        result = integrate(lambda z: g(u, z), (-math.inf, math.inf), inner_rule)
        inner_results.append(result)
        return result.value

    outer = integrate(inner, (-math.inf, math.inf), outer_rule)
    # worst relative inner error carried over the outer magnitude; exact for integrands of one sign
    relative = max((r.error / abs(r.value) if r.value != 0 else (0.0 if r.error == 0 else math.inf)
                    for r in inner_results), default=0.0)
    error = outer.error + relative * abs(outer.value)
    converged = outer.converged and all(r.converged for r in inner_results) and error <= rule.tolerance(outer.value)
    evaluations = outer.evaluations + sum(r.evaluations for r in inner_results)
    return QuadratureResult(outer.value, error, converged, evaluations, outer.message)


def haar_integral(f: Base, rule: QuadratureRule = DEFAULT_RULE, shift: GroupElement | None = None) -> QuadratureResult:
    """Right Haar integral int int f((x, z) . h) dx/x dz

    Args:
        f (Base): integrand
        rule (QuadratureRule, optional): tolerances. Defaults to DEFAULT_RULE.
        shift (GroupElement, optional): right translation h. Defaults to the identity.

    Returns:
        QuadratureResult: the integral
    """
    if shift is None:
        shift = GroupElement(1.0, 0.0)
    lu, hz = math.log(shift.x), shift.z

    if f.decay is Decay.ALGEBRAIC:
        return _nested_plane(lambda u, z: complex(f.evaluate_log(u + lu, math.exp(u) * hz + z)), rule)

    # each U-slice integrates over the z-window of f, Z = Y - e^U hz
    def g(U, Y):
        offset = numpy.exp(U) * hz
        return f.evaluate_log(U + lu, offset + (Y - offset))

    (u0, u1), (z0, z1) = f.box
    return integrate_box(g, ((u0 - lu, u1 - lu), (z0, z1)), rule)


def l1_norm(f: Base, rule: QuadratureRule = DEFAULT_RULE) -> float:
    """Norm of f in L1(G, dx/x dz)

    Raises:
        QuadratureError: the quadrature did not converge
    """
    if f.decay is Decay.ALGEBRAIC:
        return float(_nested_plane(lambda u, z: float(abs(f.evaluate_log(u, z))), rule).require())
    return float(integrate_box(lambda U, Z: numpy.abs(f.evaluate_log(U, Z)), f.box, rule).require())


def l2_norm(f: Base, rule: QuadratureRule = DEFAULT_RULE) -> float:
    """Norm of f in L2(G, dx/x dz)

    A lazy convolution is integrated through Parseval's identity in z.

    Raises:
        QuadratureError: the quadrature did not converge
    """
    if isinstance(f, ConvolutionG):
        (u0, u1), _ = f.box
        cutoff = f.fourier_cutoff()
        result = integrate_box(lambda U, Q: numpy.abs(f._partial_fourier_log(U, Q)) ** 2,
                               ((u0, u1), (-cutoff, cutoff)), rule, max_nodes=256)
        return math.sqrt(float(result.require()))
    if f.decay is Decay.ALGEBRAIC:
        return math.sqrt(float(_nested_plane(lambda u, z: float(abs(f.evaluate_log(u, z))) ** 2, rule).require()))
    return math.sqrt(float(integrate_box(lambda U, Z: numpy.abs(f.evaluate_log(U, Z)) ** 2, f.box, rule).require()))


class YoungBound(NamedTuple):
    """Both sides of ||f * k||_2 <= ||f||_2 ||k||_1"""
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1.0 + 1e-9)


def young_bound(f: Base, k: Base, rule: QuadratureRule = DEFAULT_RULE, k_l1: float | None = None) -> YoungBound:
    """Young's inequality for the right convolution, p = r = 2, q = 1

    Args:
        f (Base): localised L2 factor
        k (Base): L1 factor
        rule (QuadratureRule, optional): tolerances. Defaults to DEFAULT_RULE.
        k_l1 (float, optional): known L1 norm of k, computed by quadrature when None. Defaults to None.

    Returns:
        YoungBound: (||f * k||_2, ||f||_2 ||k||_1)
    """
    lhs = l2_norm(ConvolutionG(f, k), rule)
    rhs = l2_norm(f, rule) * (l1_norm(k, rule) if k_l1 is None else k_l1)
    return YoungBound(lhs, rhs)
