"""Kernels, layer potentials and finite sections of the wedge operators

"""

__all__ = [ "WedgeKernelSet", "k_alpha", "s_beta", "a_alpha", "t_kernel", "i_kernel", "t_kernel_quadrature",
            "k_layer", "s_layer", "adjoint_kernel", "k_alpha_on_group",
            "BoundaryDensity", "MEAN_ZERO_TOL", "is_zero_sheet",
            "LAYER_RULE", "apply_K", "apply_S", "energy_product", "energy_norm", "inner_product",
            "image_norm", "plemelj_residual",
            "SECTION_RULE", "Containment", "toeplitz_section", "nystrom_T", "containment", "perturbation_hs_norm",
            "Density", "Kernels" ]

from .kernels import (WedgeKernelSet, a_alpha, adjoint_kernel, i_kernel, k_alpha, k_alpha_on_group, k_layer,
                      s_beta, s_layer, t_kernel, t_kernel_quadrature)
from .density import MEAN_ZERO_TOL, BoundaryDensity, is_zero_sheet
from .layer import (LAYER_RULE, apply_K, apply_S, energy_norm, energy_product, image_norm, inner_product,
                    plemelj_residual)
from .sections import (SECTION_RULE, Containment, containment, nystrom_T, perturbation_hs_norm,
                       toeplitz_section)

# Some aliases
Density = BoundaryDensity
Kernels = WedgeKernelSet
