"""Corrected Fourier transforms P_+ and P_- of the ax+b group

For f in L2(G), P_(+/-)(f) is the Hilbert-Schmidt operator on L2(R+, dr/r)
    P(f) eta(r) = sqrt(r) int int exp(-/+ 2 pi i z r) eta(x r) f(x, z) dx/x dz,
which after the substitution w = x r is the integral operator with kernel
    kappa(r, w) = sqrt(r) f^(w/r, +/- r)
against dw/w, f^ being the partial Fourier transform in z. The pair is an
isometry of L2(G) onto two copies of the Hilbert-Schmidt class.
"""
from __future__ import annotations

import enum
import math
from typing import Callable, Optional

import numpy

from ..errors import DomainError
from ..numerics import DEFAULT_RULE, QuadratureResult, QuadratureRule, integrate_box
from .functions import Base, Box

__all__ = [ "Sign", "HSKernel", "plancherel_kernel", "hs_norm", "hs_norm_squared", "fourier_kernel" ]

# kappa decays like sqrt(r) at the origin; exp(-32) ~ 1e-14
_LOG_R_FLOOR = -32.0
_SPLIT_WIDTH = 8.0


class Sign(enum.Enum):
    """Which of the two infinite-dimensional representations"""
    PLUS = '+'
    MINUS = '-'

    @property
    def factor(self) -> int:
        return 1 if self is Sign.PLUS else -1

    @classmethod
    def parse(cls, value) -> Sign:
        if isinstance(value, Sign):
            return value
        if value in ('+', 'plus', 1, +1):
            return cls.PLUS
        if value in ('-', 'minus', -1):
            return cls.MINUS
        raise DomainError(f'sign must be + or -, got {value!r}')


class HSKernel:
    """Kernel kappa(r, w) of an operator on L2(R+, dr/r), with its sign tag

    The box is given in the coordinates (p, y) = (log r, log(w/r)) and bounds
    the region where |kappa| is not negligible.
    """

    def __init__(self, evaluator: Callable, sign, box: Box, log_evaluator: Optional[Callable] = None):
        self.__evaluator = evaluator
        self.__log_evaluator = log_evaluator
        self.__sign = Sign.parse(sign)
        self.__box = box

    @property
    def sign(self) -> Sign:
        """Sign tag

        Returns:
            Sign: + or -
        """
        return self.__sign

    @property
    def box(self) -> Box:
        """Effective support in (log r, log(w/r))

        Returns:
            Box: ((p0, p1), (y0, y1))
        """
        return self.__box

    def __call__(self, r, w):
        return self.__evaluator(numpy.asarray(r, dtype=float), numpy.asarray(w, dtype=float))

    def values(self, p, y):
        """kappa(e^p, e^(p + y)), vectorised"""
        if self.__log_evaluator is not None:
            return self.__log_evaluator(numpy.asarray(p, dtype=float), numpy.asarray(y, dtype=float))
        return self(numpy.exp(p), numpy.exp(numpy.add(p, y)))

    def __repr__(self) -> str:
        return f'HSKernel(sign={self.__sign.value!r}, box={self.__box!r})'


def hs_norm(kappa: HSKernel, rule: QuadratureRule = DEFAULT_RULE) -> float:
    """Hilbert-Schmidt norm (int int |kappa(r, w)|^2 dr/r dw/w)^(1/2)

    Args:
        kappa (HSKernel): kernel with its effective box
        rule (QuadratureRule, optional): tolerances. Defaults to DEFAULT_RULE.

    Raises:
        QuadratureError: the rectangle rule did not converge

    Returns:
        float: the norm
    """
    return math.sqrt(float(hs_norm_squared(kappa, rule).require()))


def hs_norm_squared(kappa: HSKernel, rule: QuadratureRule = DEFAULT_RULE) -> QuadratureResult:
    """Squared Hilbert-Schmidt norm with its error estimate

    The log r range is split in two, the lower part carrying only the sqrt(r) tail.
    """
    def density(P, Y):
        return numpy.abs(kappa.values(P, Y)) ** 2

    (p0, p1), (y0, y1) = kappa.box
    split = max(p0, p1 - _SPLIT_WIDTH)
    upper = integrate_box(density, ((split, p1), (y0, y1)), rule, max_nodes=256)
    if split <= p0:
        return upper
    return upper + integrate_box(density, ((p0, split), (y0, y1)), rule, max_nodes=256)


def plancherel_kernel(f: Base, sign) -> HSKernel:
    """Kernel of P_(+/-)(f): kappa(r, w) = sqrt(r) f^(w/r, +/- r)

    Args:
        f (Base): function on G, Gaussian or compact class
        sign: + or -

    Returns:
        HSKernel: the kernel, boxed by the support of f and its Fourier cutoff
    """
    sign = Sign.parse(sign)
    s = sign.factor
    (u0, u1), _ = f.box
    box = ((_LOG_R_FLOOR, math.log(f.fourier_cutoff())), (u0, u1))

    def log_evaluator(p, y):
        return numpy.exp(0.5 * p) * f._partial_fourier_log(y, s * numpy.exp(p))

    def evaluator(r, w):
        return numpy.sqrt(r) * f.partial_fourier(w / r, s * r)

    return HSKernel(evaluator, sign, box, log_evaluator)


def fourier_kernel(k: Base, sign, r, x):
    """Kernel of the uncorrected transform F_(+/-)(k) at (r, x)

    F(k) eta(r) = int K(r, x) eta(x) dx/x with K(r, x) = int exp(-/+ 2 pi i z r) k(x/r, z) dz.

    Args:
        k (Base): function on G
        sign: + or -
        r (array_like): positive output variable
        x (array_like): positive input variable

    Returns:
        numpy.ndarray: kernel values
    """
    s = Sign.parse(sign).factor
    r = numpy.asarray(r, dtype=float)
    x = numpy.asarray(x, dtype=float)
    return k.partial_fourier(x / r, s * r)
