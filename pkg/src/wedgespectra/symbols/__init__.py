"""Mellin symbols, spectral curves and the L^{2,a} spectrum of the wedge operator

"""

__all__ = [ "WedgeParams", "validate_alpha",
            "mellin_kernel", "sigma_point", "norm_bound", "spectral_radius", "energy_norm_bound",
            "real_axis_crossings", "mellin_symbol_quadrature", "l1_norm_quadrature",
            "SpectralCurve", "sample_curve", "winding_number", "segment_distance", "region_distance",
            "Classification", "SpectralPoint", "Membership", "classify", "classify_interval", "in_spectrum_L2",
            "Params", "Curve" ]

from .params import WedgeParams, validate_alpha
from .mellin import (energy_norm_bound, l1_norm_quadrature, mellin_kernel, mellin_symbol_quadrature,
                     norm_bound, real_axis_crossings, sigma_point, spectral_radius)
from .curve import SpectralCurve, region_distance, sample_curve, segment_distance, winding_number
from .spectrum import Classification, Membership, SpectralPoint, classify, classify_interval, in_spectrum_L2

# Some aliases
Params = WedgeParams
Curve = SpectralCurve
