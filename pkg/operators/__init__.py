"""
Linear operators of the reformulated deblurring model
"""

from operators.base import LinearOperator
from operators.blur import BlurOperator, apply_blur, apply_blur_adjoint, build_gaussian_kernel, spatial_convolve
from operators.difference import VARIANTS, DiffOperator, apply_T, apply_T_adjoint, norm_T, theta_bound
from operators.stacked import NormEstimate, StackedOperator, spectral_norm_K

__all__ = [
    "LinearOperator",
    "BlurOperator",
    "DiffOperator",
    "StackedOperator",
    "NormEstimate",
    "VARIANTS",
    "apply_T",
    "apply_T_adjoint",
    "apply_blur",
    "apply_blur_adjoint",
    "build_gaussian_kernel",
    "spatial_convolve",
    "norm_T",
    "theta_bound",
    "spectral_norm_K",
]
