"""The ax+b group: group law, Haar structure, convolution and Plancherel transforms

"""

__all__ = [ "GroupElement", "IDENTITY", "multiply", "inverse", "haar_modulus",
            "Decay", "Base", "GaussianG", "CompactBumpG", "KernelG", "ConvolutionG",
            "weighted", "modulus_power",
            "convolve", "convolve_log", "haar_integral", "l1_norm", "l2_norm", "young_bound", "YoungBound",
            "Sign", "HSKernel", "plancherel_kernel", "hs_norm", "hs_norm_squared", "fourier_kernel",
            "Element", "Gaussian", "Bump" ]

from .element import IDENTITY, GroupElement, haar_modulus, inverse, multiply
from .functions import Base, CompactBumpG, Decay, GaussianG, KernelG, modulus_power, weighted
from .convolution import (ConvolutionG, YoungBound, convolve, convolve_log, haar_integral,
                          l1_norm, l2_norm, young_bound)
from .plancherel import HSKernel, Sign, fourier_kernel, hs_norm, hs_norm_squared, plancherel_kernel

# Some aliases
Element = GroupElement
Gaussian = GaussianG
Bump = CompactBumpG
