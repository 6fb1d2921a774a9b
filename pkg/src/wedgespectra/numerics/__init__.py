"""Quadrature, the Bessel function K1 and dense eigenvalues

"""

__all__ = [ "QuadratureKind", "QuadratureRule", "QuadratureResult", "DEFAULT_RULE",
            "integrate", "integrate_box", "integrate_cosine", "gauss_legendre", "box_rule",
            "bessel_k1", "bessel_k1_integral", "bessel_k1_asymptotic",
            "DenseMatrix", "eigenvalues", "Rule", "Kind" ]

from .quadrature import (DEFAULT_RULE, QuadratureKind, QuadratureResult, QuadratureRule,
                         box_rule, gauss_legendre, integrate, integrate_box, integrate_cosine)
from .special import bessel_k1, bessel_k1_asymptotic, bessel_k1_integral
from .linalg import DenseMatrix, eigenvalues

# Some aliases
Rule = QuadratureRule
Kind = QuadratureKind
