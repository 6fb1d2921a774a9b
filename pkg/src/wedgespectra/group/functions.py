"""Functions on the ax+b group with a declared decay class

Functions are evaluated in the group coordinates (x, z) and, internally, in
the logarithmic coordinates (u, z) with u = log x, where the right Haar
measure dx/x dz becomes du dz. Every class declares a box in (u, z) outside
of which it is negligible (or zero), and that declaration is checked at
construction.
"""
from __future__ import annotations

import abc
import copy
import enum
import math
from typing import Callable, Optional, Tuple

import numpy

from ..errors import DensityError, DomainError, QuadratureError
from ..numerics import gauss_legendre
from .element import GroupElement

__all__ = [ "Decay", "Base", "GaussianG", "CompactBumpG", "KernelG", "weighted", "modulus_power" ]

Box = Tuple[Tuple[float, float], Tuple[float, float]]

# relative size of a function beyond its declared box
HONESTY_RATIO = 1e-12
_GAUSS_WIDTH = 6.5
_CHUNK = 4096


class Decay(enum.Enum):
    """Decay class of a function on G"""
    COMPACT = 'compact'
    GAUSSIAN = 'gaussian'
    ALGEBRAIC = 'algebraic'


def _bump(t):
    """C-infinity bump exp(-1/(1-t^2)) on (-1, 1), zero elsewhere"""
    t = numpy.asarray(t, dtype=float)
    inside = numpy.abs(t) < 1.0
    safe = numpy.where(inside, t, 0.0)
    return numpy.where(inside, numpy.exp(-1.0 / (1.0 - safe * safe)), 0.0)


class Base(abc.ABC):
    """Core interface of a function f(x, z) on G with weight V_gamma f = x^gamma f

    """

    def __init__(self, gamma: float = 0.0):
        if not math.isfinite(gamma):
            raise DomainError(f'weight exponent must be finite, got {gamma}')
        self.__gamma = float(gamma)

    @abc.abstractmethod
    def _log_profile(self, u, z):
        """Unweighted values at (e^u, z), vectorised with numpy broadcasting"""
        pass

    @property
    @abc.abstractmethod
    def decay(self) -> Decay:
        """Declared decay class

        Returns:
            Decay: compact, gaussian or algebraic
        """
        pass

    @property
    @abc.abstractmethod
    def box(self) -> Box:
        """Box ((u0, u1), (z0, z1)) in logarithmic coordinates

        Returns:
            Box: support (compact class) or region outside of which the function is negligible
        """
        pass

    @property
    def gamma(self) -> float:
        """Weight exponent

        Returns:
            float: gamma such that the stored function is x^gamma times its profile
        """
        return self.__gamma

    def fourier_cutoff(self) -> float:
        """Frequency beyond which the partial Fourier transform in z is negligible"""
        (_, _), (z0, z1) = self.box
        return 40.0 / (z1 - z0)

    def evaluate_log(self, u, z):
        """Values at (e^u, z)

        Args:
            u (array_like): logarithm of the dilation
            z (array_like): translation

        Returns:
            numpy.ndarray: weighted values, broadcast shape of u and z
        """
        u = numpy.asarray(u, dtype=float)
        values = self._log_profile(u, numpy.asarray(z, dtype=float))
        return values * numpy.exp(self.__gamma * u) if self.__gamma != 0.0 else values

    def evaluate(self, x, z=None):
        """Values at (x, z)

        Args:
            x (array_like | GroupElement): dilation, or a group element when z is None
            z (array_like, optional): translation. Defaults to None.

        Raises:
            DomainError: some x is not positive

        Returns:
            numpy.ndarray | complex: the values
        """
        if isinstance(x, GroupElement):
            x, z = x.x, x.z
        x = numpy.asarray(x, dtype=float)
        if not numpy.all(x > 0):
            raise DomainError('functions on G are evaluated at x > 0 only')
        return self.evaluate_log(numpy.log(x), z)

    __call__ = evaluate

    def weighted(self, gamma: float) -> Base:
        """V_gamma f = x^gamma f

        Args:
            gamma (float): additional weight exponent

        Returns:
            Base: a weighted copy
        """
        clone = copy.copy(self)
        clone.__gamma = self.__gamma + float(gamma)
        clone._check_decay()
        return clone

    def _peak_and_outside(self):
        (u0, u1), (z0, z1) = self.box
        us = numpy.linspace(u0, u1, 41)
        zs = numpy.linspace(z0, z1, 41)
        peak = float(numpy.max(numpy.abs(self.evaluate_log(us[:, None], zs[None, :]))))
        du, dz = u1 - u0, z1 - z0
        ring = []
        for scale in (0.02, 0.25, 1.0):
            uo = numpy.array([u0 - scale * du, u1 + scale * du])
            zo = numpy.array([z0 - scale * dz, z1 + scale * dz])
            ring.append(self.evaluate_log(uo[:, None], zs[None, :]).ravel())
            ring.append(self.evaluate_log(us[:, None], zo[None, :]).ravel())
        outside = float(numpy.max(numpy.abs(numpy.concatenate(ring))))
        return peak, outside

    def _check_decay(self) -> None:
        """Sample beyond the declared box and reject a dishonest decay class"""
        if self.decay is Decay.ALGEBRAIC:
            return
        peak, outside = self._peak_and_outside()
        if not math.isfinite(peak) or peak == 0.0:
            raise DensityError(f'{type(self).__name__} vanishes or is not finite on its box')
        if outside > HONESTY_RATIO * peak:
            raise DensityError(f'{type(self).__name__} is {outside / peak:.2e} of its peak outside '
                               f'its declared {self.decay.value} box')

    def partial_fourier(self, x, zeta, nodes: int = 64, max_nodes: int = 1024):
        """f^(x, zeta) = int exp(-2 pi i z zeta) f(x, z) dz

        Gauss-Legendre over the z-range of the box, doubling the node count
        until two levels agree.

        Args:
            x (array_like): positive dilations
            zeta (array_like): frequencies, broadcast against x
            nodes (int, optional): starting node count. Defaults to 64.
            max_nodes (int, optional): node cap. Defaults to 1024.

        Raises:
            QuadratureError: no agreement within max_nodes

        Returns:
            numpy.ndarray: complex values, broadcast shape of x and zeta
        """
        u, zeta = numpy.broadcast_arrays(numpy.log(numpy.asarray(x, dtype=float)), numpy.asarray(zeta, dtype=float))
        return self._partial_fourier_log(u, zeta, nodes, max_nodes)

    def _partial_fourier_log(self, u, zeta, nodes: int = 64, max_nodes: int = 1024):
        u, zeta = numpy.broadcast_arrays(numpy.asarray(u, dtype=float), numpy.asarray(zeta, dtype=float))
        shape = u.shape
        u, zeta = u.ravel(), zeta.ravel()
        out = numpy.empty(u.shape, dtype=complex)
        for start in range(0, u.size, _CHUNK):
            sl = slice(start, start + _CHUNK)
            out[sl] = self._fourier_chunk(u[sl], zeta[sl], nodes, max_nodes)
        return out.reshape(shape)

    def _fourier_level(self, u, zeta, n):
        (_, _), (z0, z1) = self.box
        t, w = gauss_legendre(n)
        h = 0.5 * (z1 - z0)
        zs = z0 + h * (t + 1.0)
        values = self.evaluate_log(u[:, None], zs[None, :])
        phase = numpy.exp(-2j * math.pi * zeta[:, None] * zs[None, :])
        return (values * phase) @ w * h

    def _fourier_chunk(self, u, zeta, nodes, max_nodes):
        coarse = self._fourier_level(u, zeta, nodes)
        n = nodes
        while 2 * n <= max_nodes:
            n *= 2
            fine = self._fourier_level(u, zeta, n)
            scale = max(float(numpy.max(numpy.abs(fine), initial=0.0)), 1e-300)
            if numpy.max(numpy.abs(fine - coarse), initial=0.0) <= 1e-11 * scale + 1e-300:
                return fine
            coarse = fine
        raise QuadratureError(f'partial Fourier transform of {type(self).__name__} not resolved with {max_nodes} nodes')


class GaussianG(Base):
    """A x^gamma exp(-(log x - u0)^2/su^2 - (z - z0)^2/sz^2)

    Closed forms are available for the partial Fourier transform and both norms.
    """

    def __init__(self, amplitude: float = 1.0, u0: float = 0.0, su: float = 1.0,
                 z0: float = 0.0, sz: float = 1.0, gamma: float = 0.0):
        super().__init__(gamma)
        if not (su > 0 and sz > 0):
            raise DomainError(f'Gaussian widths must be positive, got su={su}, sz={sz}')
        self.__amplitude = complex(amplitude) if isinstance(amplitude, complex) else float(amplitude)
        self.__u0, self.__su, self.__z0, self.__sz = float(u0), float(su), float(z0), float(sz)
        self._check_decay()

    @property
    def decay(self) -> Decay:
        return Decay.GAUSSIAN

    @property
    def parameters(self) -> Tuple:
        """(amplitude, u0, su, z0, sz)"""
        return (self.__amplitude, self.__u0, self.__su, self.__z0, self.__sz)

    @property
    def box(self) -> Box:
        center = self.__u0 + 0.5 * self.gamma * self.__su ** 2
        hu, hz = _GAUSS_WIDTH * self.__su, _GAUSS_WIDTH * self.__sz
        return ((center - hu, center + hu), (self.__z0 - hz, self.__z0 + hz))

    def fourier_cutoff(self) -> float:
        return 9.0 / (math.pi * self.__sz)

    def _log_profile(self, u, z):
        return self.__amplitude * numpy.exp(-((u - self.__u0) / self.__su) ** 2 - ((z - self.__z0) / self.__sz) ** 2)

    def _partial_fourier_log(self, u, zeta, nodes: int = 64, max_nodes: int = 1024):
        u = numpy.asarray(u, dtype=float)
        zeta = numpy.asarray(zeta, dtype=float)
        sz = self.__sz
        radial = self.evaluate_log(u, self.__z0)
        return radial * sz * math.sqrt(math.pi) * numpy.exp(-2j * math.pi * self.__z0 * zeta - (math.pi * sz * zeta) ** 2)

    def l2_norm_squared_exact(self) -> float:
        """Closed form of the squared L2(G) norm"""
        g, su, sz = self.gamma, self.__su, self.__sz
        return (abs(self.__amplitude) ** 2 * su * sz * (math.pi / 2)
                * math.exp(2 * g * self.__u0 + 0.5 * g * g * su * su))

    def l1_norm_exact(self) -> float:
        """Closed form of the L1(G) norm"""
        g, su, sz = self.gamma, self.__su, self.__sz
        return abs(self.__amplitude) * su * sz * math.pi * math.exp(g * self.__u0 + 0.25 * g * g * su * su)

    def __repr__(self) -> str:
        return (f'GaussianG(amplitude={self.__amplitude!r}, u0={self.__u0!r}, su={self.__su!r}, '
                f'z0={self.__z0!r}, sz={self.__sz!r}, gamma={self.gamma!r})')


class CompactBumpG(Base):
    """Smooth bump A phi((log x - u0)/ru) psi((z - z0)/rz), compactly supported

    With odd_in_z, psi(t) = t phi(t), so every z-integral vanishes exactly.
    """

    def __init__(self, amplitude: float = 1.0, u0: float = 0.0, ru: float = 1.0,
                 z0: float = 0.0, rz: float = 1.0, odd_in_z: bool = False, gamma: float = 0.0):
        super().__init__(gamma)
        if not (ru > 0 and rz > 0):
            raise DomainError(f'bump radii must be positive, got ru={ru}, rz={rz}')
        self.__amplitude = float(amplitude)
        self.__u0, self.__ru, self.__z0, self.__rz = float(u0), float(ru), float(z0), float(rz)
        self.__odd = bool(odd_in_z)
        self._check_decay()

    @property
    def decay(self) -> Decay:
        return Decay.COMPACT

    @property
    def odd_in_z(self) -> bool:
        """Mean-zero variant indicator

        Returns:
            bool: whether the z-profile is odd about z0
        """
        return self.__odd

    @property
    def box(self) -> Box:
        return ((self.__u0 - self.__ru, self.__u0 + self.__ru), (self.__z0 - self.__rz, self.__z0 + self.__rz))

    def _log_profile(self, u, z):
        s = (z - self.__z0) / self.__rz
        zpart = s * _bump(s) if self.__odd else _bump(s)
        return self.__amplitude * _bump((u - self.__u0) / self.__ru) * zpart

    def __repr__(self) -> str:
        return (f'CompactBumpG(amplitude={self.__amplitude!r}, u0={self.__u0!r}, ru={self.__ru!r}, '
                f'z0={self.__z0!r}, rz={self.__rz!r}, odd_in_z={self.__odd!r}, gamma={self.gamma!r})')


class KernelG(Base):
    """Algebraically decaying function given by an evaluator k(x, z)

    An optional closed-form partial Fourier transform k^(x, zeta) may be supplied.
    """

    def __init__(self, evaluator: Callable, box: Box, fourier: Optional[Callable] = None,
                 gamma: float = 0.0, name: str = 'kernel'):
        super().__init__(gamma)
        self.__evaluator = evaluator
        self.__fourier = fourier
        self.__box = tuple(tuple(float(v) for v in side) for side in box)
        self.__name = name

    @property
    def decay(self) -> Decay:
        return Decay.ALGEBRAIC

    @property
    def box(self) -> Box:
        return self.__box

    @property
    def name(self) -> str:
        return self.__name

    def _log_profile(self, u, z):
        return self.__evaluator(numpy.exp(u), z)

    def _partial_fourier_log(self, u, zeta, nodes: int = 64, max_nodes: int = 1024):
        if self.__fourier is None:
            return super()._partial_fourier_log(u, zeta, nodes, max_nodes)
        u = numpy.asarray(u, dtype=float)
        values = self.__fourier(numpy.exp(u), numpy.asarray(zeta, dtype=float))
        return values * numpy.exp(self.gamma * u) if self.gamma != 0.0 else values

    def __repr__(self) -> str:
        return f'KernelG(name={self.__name!r}, gamma={self.gamma!r})'



def weighted(f: Base, gamma: float) -> Base:
    """V_gamma f = x^gamma f = Delta^-gamma f"""
    return f.weighted(gamma)


def modulus_power(f: Base, power: float) -> Base:
    """Delta^power f = x^-power f"""
    return f.weighted(-power)
