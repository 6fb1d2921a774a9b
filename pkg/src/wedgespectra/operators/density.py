"""Two-sheet boundary densities on the wedge

The boundary of the wedge is two half-planes meeting along the edge; in the
coordinates (x, z) of each sheet, x > 0 is the distance to the edge. A density
is a pair (f1, f2) of functions on (0, inf) x R, each carried by a
wedgespectra.group function class so that it has a declared box.
"""
from __future__ import annotations

import math
from typing import Tuple

import numpy

from ..errors import DensityError, DomainError
from ..group import Base, Decay
from ..numerics import DEFAULT_RULE, QuadratureRule, integrate_box

__all__ = [ "BoundaryDensity", "MEAN_ZERO_TOL", "is_zero_sheet" ]

MEAN_ZERO_TOL = 1e-10
# only sets the scale of the mean-zero test
_SCALE_RULE = QuadratureRule(abs_tol=1e-4, rel_tol=1e-4)


def _moment(f: Base, rule: QuadratureRule) -> Tuple[float, float]:
    """(int int f dx dz, int int |f| dx dz) over the box of f"""
    def signed(U, Z):
        return f.evaluate_log(U, Z) * numpy.exp(U)

    def absolute(U, Z):
        return numpy.abs(f.evaluate_log(U, Z)) * numpy.exp(U)

    return (complex(integrate_box(signed, f.box, rule).require()),
            float(integrate_box(absolute, f.box, _SCALE_RULE).value))


class BoundaryDensity:
    """Density (f1, f2) on the two sheets with weight exponent a

    Args:
        f1 (Base): sheet-1 function
        f2 (Base): sheet-2 function
        a (float, optional): weight exponent of L^{2,a}. Defaults to 0.
        mean_zero (bool, optional): declared vanishing total integral. Defaults to False.

    Raises:
        DensityError: a sheet decays only algebraically, or the mean-zero declaration is false
    """

    def __init__(self, f1: Base, f2: Base, a: float = 0.0, mean_zero: bool = False,
                 rule: QuadratureRule = DEFAULT_RULE):
        for sheet in (f1, f2):
            if sheet.decay is Decay.ALGEBRAIC:
                raise DensityError('boundary densities must be compact or Gaussian on each sheet')
        self.__sheets = (f1, f2)
        self.__a = float(a)
        self.__mean_zero = bool(mean_zero)
        if self.__mean_zero:
            total, scale = (sum(v) for v in zip(_moment(f1, rule), _moment(f2, rule)))
            if abs(total) > MEAN_ZERO_TOL * max(1.0, scale):
                raise DensityError(f'density declared mean-zero has total integral {abs(total):.3e}')

    @classmethod
    def antisymmetric(cls, f: Base, a: float = 0.0) -> BoundaryDensity:
        """(f, -f): mean-zero for any f"""
        return cls(f, _Negated(f), a, mean_zero=True)

    @classmethod
    def single(cls, f: Base, sheet: int = 1, a: float = 0.0) -> BoundaryDensity:
        """f on one sheet, zero on the other"""
        if sheet not in (1, 2):
            raise DomainError(f'sheet must be 1 or 2, got {sheet}')
        return cls(f, _Zero(), a) if sheet == 1 else cls(_Zero(), f, a)

    @property
    def sheets(self) -> Tuple[Base, Base]:
        """The two sheet functions

        Returns:
            Tuple[Base, Base]: (f1, f2)
        """
        return self.__sheets

    @property
    def a(self) -> float:
        return self.__a

    @property
    def mean_zero(self) -> bool:
        return self.__mean_zero

    @property
    def compact(self) -> bool:
        """Whether both sheets are compactly supported"""
        return all(f.decay is Decay.COMPACT for f in self.__sheets)

    @property
    def zero(self) -> bool:
        return all(is_zero_sheet(f) for f in self.__sheets)

    def norm(self, a: float | None = None, rule: QuadratureRule = DEFAULT_RULE) -> float:
        """Norm in L^{2,a}: (sum over sheets of int int |f_i|^2 x^a dx dz)^(1/2)"""
        a = self.__a if a is None else a
        total = 0.0
        for f in self.__sheets:
            if is_zero_sheet(f):
                continue
            total += float(integrate_box(lambda U, Z: numpy.abs(f.evaluate_log(U, Z)) ** 2 * numpy.exp((a + 1.0) * U),
                                         f.box, rule).require())
        return math.sqrt(total)

    @classmethod
    def zeros(cls, a: float = 0.0) -> BoundaryDensity:
        return cls(_Zero(), _Zero(), a)

    def __repr__(self) -> str:
        f1, f2 = self.__sheets
        return f'BoundaryDensity({f1!r}, {f2!r}, a={self.__a!r}, mean_zero={self.__mean_zero!r})'


class _Negated(Base):
    def __init__(self, f: Base):
        super().__init__(0.0)
        self.__f = f

    @property
    def decay(self) -> Decay:
        return self.__f.decay

    @property
    def box(self):
        return self.__f.box

    def fourier_cutoff(self) -> float:
        return self.__f.fourier_cutoff()

    def _log_profile(self, u, z):
        return -self.__f.evaluate_log(u, z)

    def __repr__(self) -> str:
        return f'-{self.__f!r}'


class _Zero(Base):
    @property
    def decay(self) -> Decay:
        return Decay.COMPACT

    @property
    def box(self):
        return ((-1.0, 1.0), (-1.0, 1.0))

    def _log_profile(self, u, z):
        return numpy.zeros(numpy.broadcast(u, z).shape)

    def __repr__(self) -> str:
        return '0'


def is_zero_sheet(f: Base) -> bool:
    """Whether a sheet is the identically zero placeholder of BoundaryDensity.zeros"""
    return isinstance(f, _Zero)
