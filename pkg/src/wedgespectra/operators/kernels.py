"""Closed-form kernels of the layer potentials on the wedge

In the group coordinates of one boundary sheet,
    k_alpha(s, t) = -(sin alpha / 2 pi) (1 + s^2 - 2 s cos alpha + t^2)^(-3/2),
    s_beta(s, t)  =  (1 / 4 pi) (1 + s^2 - 2 s cos beta + t^2)^(-1/2),
and the z-Fourier transform of k_alpha(x/r, .) at frequency r is the Bessel kernel
    T(r, x) = -2 sin(alpha) r A(r, x)^-1 K1(2 pi r A(r, x)),
    A(r, x) = (1 + (x/r)^2 - 2 (x/r) cos alpha)^(1/2).
T does not depend on the sign of the frequency since k_alpha is even in t,
so the two transforms T^+ and T^- coincide and no sign is taken.
"""
from __future__ import annotations

import math

import numpy
import scipy.special

from ..group import KernelG
from ..numerics import DEFAULT_RULE, QuadratureResult, QuadratureRule, integrate_cosine
from ..symbols import WedgeParams, mellin_kernel

__all__ = [ "WedgeKernelSet", "k_alpha", "s_beta", "a_alpha", "t_kernel", "i_kernel",
            "t_kernel_quadrature", "k_layer", "s_layer", "adjoint_kernel", "k_alpha_on_group" ]


def k_alpha(p: WedgeParams, s, t):
    """Double layer convolution kernel k_alpha(s, t), vectorised"""
    s = numpy.asarray(s, dtype=float)
    t = numpy.asarray(t, dtype=float)
    values = (-math.sin(p.alpha) / (2.0 * math.pi)) * (1.0 + s * s - 2.0 * s * math.cos(p.alpha) + t * t) ** -1.5
    return float(values) if values.ndim == 0 else values


def s_beta(p: WedgeParams, beta: float, s, t):
    """Single layer convolution kernel s_beta(s, t), beta in {0, alpha}

    Infinite at (s, t) = (1, 0) when beta = 0.
    """
    s = numpy.asarray(s, dtype=float)
    t = numpy.asarray(t, dtype=float)
    with numpy.errstate(divide='ignore'):
        values = (1.0 / (4.0 * math.pi)) / numpy.sqrt(1.0 + s * s - 2.0 * s * math.cos(beta) + t * t)
    return float(values) if values.ndim == 0 else values


def a_alpha(p: WedgeParams, r, x):
    """A_alpha(r, x) > 0"""
    q = numpy.asarray(x, dtype=float) / numpy.asarray(r, dtype=float)
    return numpy.sqrt(1.0 + q * q - 2.0 * q * math.cos(p.alpha))


def t_kernel(p: WedgeParams, r, x):
    """Weighted Bessel kernel (x/r)^((a+1)/2) T_alpha(r, x) of T_{alpha,a} against dx/x

    Underflows to 0 once 2 pi r A exceeds ~700.
    """
    r = numpy.asarray(r, dtype=float)
    x = numpy.asarray(x, dtype=float)
    A = a_alpha(p, r, x)
    values = ((x / r) ** (0.5 * (p.a + 1.0)) * (-2.0 * math.sin(p.alpha)) * r / A
              * scipy.special.k1(2.0 * math.pi * r * A))
    return float(values) if values.ndim == 0 else values


def i_kernel(p: WedgeParams, r, x):
    """Truncated Mellin kernel (x/r)^((a+1)/2) I_alpha(r, x) = i_{alpha,a}(r/x) on (0, 1)^2, zero elsewhere"""
    r = numpy.asarray(r, dtype=float)
    x = numpy.asarray(x, dtype=float)
    values = numpy.where((r < 1.0) & (x < 1.0), mellin_kernel(p, r / x), 0.0)
    return float(values) if values.ndim == 0 else values


def t_kernel_quadrature(p: WedgeParams, r: float, x: float, rule: QuadratureRule = DEFAULT_RULE) -> QuadratureResult:
    """(x/r)^((a+1)/2) * 2 int_0^inf cos(2 pi z r) k_alpha(x/r, z) dz, by QUADPACK's Fourier routine"""
    q = x / r
    d = 1.0 + q * q - 2.0 * q * math.cos(p.alpha)
    weight = q ** (0.5 * (p.a + 1.0))
    scale = -math.sin(p.alpha) / (2.0 * math.pi)
    factor = 2.0 * weight * scale
    inner = integrate_cosine(lambda z: (d + z * z) ** -1.5, 2.0 * math.pi * r,
                             rule.refined(1.0 / max(abs(factor), 1.0)))
    return QuadratureResult(factor * inner.value, abs(factor) * inner.error, inner.converged,
                            inner.evaluations, inner.message)


def k_layer(p: WedgeParams, x, z, u, v):
    """Kernel of K_alpha between the sheets, against du dv

    -(1/2 pi) u sin alpha (x^2 - 2 x u cos alpha + u^2 + (z - v)^2)^(-3/2)
    """
    u = numpy.asarray(u, dtype=float)
    d = x * x - 2.0 * x * u * math.cos(p.alpha) + u * u + (z - v) ** 2
    return (-math.sin(p.alpha) / (2.0 * math.pi)) * u * d ** -1.5


def adjoint_kernel(p: WedgeParams, x, z, u, v):
    """Kernel of the adjoint K*_alpha in L2(du dv): k(u, v; x, z) = (x/u) k(x, z; u, v)"""
    x = numpy.asarray(x, dtype=float)
    d = x * x - 2.0 * x * u * math.cos(p.alpha) + u * u + (z - v) ** 2
    return (-math.sin(p.alpha) / (2.0 * math.pi)) * x * d ** -1.5


def s_layer(beta: float, x, z, u, v):
    """Kernel of S_beta against du dv: (1/4 pi) (x^2 - 2 x u cos beta + u^2 + (z - v)^2)^(-1/2)"""
    d = x * x - 2.0 * x * u * math.cos(beta) + u * u + (z - v) ** 2
    with numpy.errstate(divide='ignore'):
        return (1.0 / (4.0 * math.pi)) / numpy.sqrt(d)


def _k_hat(p: WedgeParams, power: float):
    """Closed-form partial Fourier transform of s^power k_alpha(s, t) in t"""
    sin_a, cos_a = math.sin(p.alpha), math.cos(p.alpha)

    def fourier(s, eta):
        s = numpy.asarray(s, dtype=float)
        eta = numpy.abs(numpy.asarray(eta, dtype=float))
        B = numpy.sqrt(1.0 + s * s - 2.0 * s * cos_a)
        R = 2.0 * math.pi * eta * B
        safe = numpy.where(R > 0, R, 1.0)
        # R K1(R) -> 1 as R -> 0
        rk1 = numpy.where(R > 0, safe * scipy.special.k1(safe), 1.0)
        return s ** power * (-sin_a / math.pi) * rk1 / (B * B)

    return fourier


def k_alpha_on_group(p: WedgeParams) -> KernelG:
    """Delta^{-(a+1)/2} k_alpha as a function on G, with its closed-form z-Fourier transform

    Convolution with it on the right is K_alpha conjugated by V_{(a+1)/2}.
    """
    power = 0.5 * (p.a + 1.0)

    def evaluator(s, t):
        return s ** power * k_alpha(p, s, t)

    return KernelG(evaluator, ((-60.0, 40.0), (-50.0, 50.0)), fourier=_k_hat(p, power),
                   name=f'k_alpha{p}')


class WedgeKernelSet:
    """Kernel evaluators bound to one set of wedge parameters

    """

    def __init__(self, params: WedgeParams):
        self.__params = params

    @property
    def params(self) -> WedgeParams:
        """Wedge parameters

        Returns:
            WedgeParams: the bound (alpha, a)
        """
        return self.__params

    def k(self, s, t):
        return k_alpha(self.__params, s, t)

    def s(self, beta: float, s, t):
        return s_beta(self.__params, beta, s, t)

    def s0(self, s, t):
        return s_beta(self.__params, 0.0, s, t)

    def s_alpha(self, s, t):
        return s_beta(self.__params, self.__params.alpha, s, t)

    def A(self, r, x):
        return a_alpha(self.__params, r, x)

    def t(self, r, x):
        return t_kernel(self.__params, r, x)

    def i(self, r, x):
        return i_kernel(self.__params, r, x)

    def __repr__(self) -> str:
        return f'WedgeKernelSet({self.__params})'
