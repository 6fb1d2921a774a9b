"""Wedge opening angle and weight exponent

"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError

__all__ = [ "WedgeParams", "ANGLE_GUARD", "validate_alpha" ]

# angles this close to 0, pi or 2 pi are rejected
ANGLE_GUARD = 1e-5


def validate_alpha(alpha: float) -> float:
    """Check an opening angle

    Args:
        alpha (float): angle in radians

    Raises:
        DomainError: alpha outside (0, 2 pi) or within ANGLE_GUARD of 0, pi, 2 pi

    Returns:
        float: alpha as a float
    """
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError(f'alpha must be finite, got {alpha}')
    if not (ANGLE_GUARD < alpha < 2 * math.pi - ANGLE_GUARD) or abs(alpha - math.pi) < ANGLE_GUARD:
        raise DomainError(f'alpha must lie in (0, 2pi) and differ from pi, got {alpha!r}')
    return alpha


@dataclass(frozen=True)
class WedgeParams:
    """Opening angle alpha of the wedge and weight exponent a of L^{2,a}

    Attributes:
        alpha (float): angle in (0, 2 pi), not pi
        a (float): weight exponent in (-1, 3)
    """
    alpha: float
    a: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'alpha', validate_alpha(self.alpha))
        a = float(self.a)
        if not (-1.0 < a < 3.0):
            raise DomainError(f'the weight exponent must lie in (-1, 3), got {self.a!r}')
        object.__setattr__(self, 'a', a)

    @property
    def beta(self) -> float:
        """pi - alpha"""
        return math.pi - self.alpha

    @property
    def c(self) -> float:
        """Real part (1 - a)/2 of the Mellin variable"""
        return 0.5 * (1.0 - self.a)

    @property
    def degenerate(self) -> bool:
        """Whether a = 1, where the spectral curve collapses to a real interval"""
        return self.a == 1.0

    @property
    def convex(self) -> bool:
        return self.alpha < math.pi

    def weight_dual(self) -> WedgeParams:
        """Parameters (alpha, 2 - a), whose curve is the conjugate of this one"""
        return WedgeParams(self.alpha, 2.0 - self.a)

    def __str__(self) -> str:
        return f'(alpha={self.alpha:.10g}, a={self.a:.10g})'
