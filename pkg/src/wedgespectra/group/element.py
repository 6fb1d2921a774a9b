"""Points of the ax+b group G = (0, inf) x R

The group law is the composition of affine maps t -> x t + z:
(x, z) . (s, t) = (x s, x t + z), with identity (1, 0).
"""
from __future__ import annotations

import math

from ..errors import DomainError

__all__ = [ "GroupElement", "IDENTITY", "multiply", "inverse", "haar_modulus" ]


class GroupElement:
    """Element (x, z) of the ax+b group, x > 0

    """

    def __init__(self, x: float, z: float = 0.0):
        x, z = float(x), float(z)
        if not (x > 0 and math.isfinite(x)):
            raise DomainError(f'the dilation must be positive and finite, got {x}')
        if not math.isfinite(z):
            raise DomainError(f'the translation must be finite, got {z}')
        self.__x = x
        self.__z = z

    @property
    def x(self) -> float:
        """Dilation

        Returns:
            float: the positive dilation part
        """
        return self.__x

    @property
    def z(self) -> float:
        """Translation

        Returns:
            float: the translation part
        """
        return self.__z

    def __mul__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return GroupElement(self.__x * other.x, self.__x * other.z + self.__z)

    def __truediv__(self, other: GroupElement) -> GroupElement:
        """Right quotient g . h^-1 = (x/s, z - x t/s)"""
        if not isinstance(other, GroupElement):
            return NotImplemented
        return GroupElement(self.__x / other.x, self.__z - self.__x * other.z / other.x)

    def inverse(self) -> GroupElement:
        """Group inverse

        Returns:
            GroupElement: (1/x, -z/x)
        """
        return GroupElement(1.0 / self.__x, -self.__z / self.__x)

    def haar_modulus(self) -> float:
        """Modular function of the right Haar measure dx/x dz

        Returns:
            float: 1/x
        """
        return 1.0 / self.__x

    def isclose(self, other: GroupElement, rel_tol: float = 1e-12, abs_tol: float = 1e-12) -> bool:
        return (math.isclose(self.__x, other.x, rel_tol=rel_tol, abs_tol=abs_tol)
                and math.isclose(self.__z, other.z, rel_tol=rel_tol, abs_tol=abs_tol))

    def __iter__(self):
        yield self.__x
        yield self.__z

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.__x == other.x and self.__z == other.z

    def __hash__(self) -> int:
        return hash((self.__x, self.__z))

    def __repr__(self) -> str:
        return f'GroupElement(x={self.__x!r}, z={self.__z!r})'

    def __str__(self) -> str:
        return f'({self.__x}, {self.__z})'


IDENTITY = GroupElement(1.0, 0.0)


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    """Group product (g.x h.x, g.x h.z + g.z)"""
    return g * h


def inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


def haar_modulus(g: GroupElement) -> float:
    """Haar modulus 1/x of g"""
    return g.haar_modulus()
