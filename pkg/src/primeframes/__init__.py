"""Finite wavelet frames over prime fields Z_p."""

__version__ = "0.1.0"

from .enpf import EnpfResult, build_scaling, build_sigma, construct_enpf
from .frames import (
    FrameReport, analyze, characterize_subgroups, frame_criterion, frame_operator,
    norm_formula_coset, norm_formula_ffs, y_matrix,
)
from .spectral import Domain, Signal, dft, idft, inner, norm2_sq, support_count
from .wavelet import (
    GroupElement, WaveletSystem, all_coefficients, coefficient, coefficient_via_fourier,
    dilate, modulate, translate,
)
from .zmod import PrimeContext, Subgroup, divisors_of_group_order, find_generator, mod_inverse, subgroup_of_order
