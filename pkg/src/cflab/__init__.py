"""cflab: characteristic functions that agree outside a band.

Constructs pairs of densities whose characteristic functions coincide for
``|t| > sigma`` yet differ inside, and certifies when no such pair can exist.
"""

__version__ = "0.1.0"

from .bandlimited import (
    ExtremalBump,
    eval_bump,
    eval_bump_derivative,
    integral_bump,
    lattice_sum,
    quadrature_summation_identity,
    sampling_reconstruct,
)
from .densities import (
    DensitySpec,
    density_from_json,
    eval_density,
    gaussian,
    half_sine_density,
    piecewise_linear,
    raised_cosine_density,
    skew_cubic_density,
    triangular,
)
from .fourier import bump_transform, char_fn, char_fn_eval, psd_test
from .intervals import IntervalSet, complement_in_window, measure, project_mod
from .substitution import SubstitutionPair, construct_pair, construct_pair_boundary, verify_pair
from .uniqueness import NoCertificate, UniquenessCertificate, certify, endpoint_uniqueness_test

__all__ = [
    "DensitySpec",
    "ExtremalBump",
    "IntervalSet",
    "NoCertificate",
    "SubstitutionPair",
    "UniquenessCertificate",
    "bump_transform",
    "certify",
    "char_fn",
    "char_fn_eval",
    "complement_in_window",
    "construct_pair",
    "construct_pair_boundary",
    "density_from_json",
    "endpoint_uniqueness_test",
    "eval_bump",
    "eval_bump_derivative",
    "eval_density",
    "gaussian",
    "half_sine_density",
    "integral_bump",
    "lattice_sum",
    "measure",
    "piecewise_linear",
    "project_mod",
    "psd_test",
    "quadrature_summation_identity",
    "raised_cosine_density",
    "sampling_reconstruct",
    "skew_cubic_density",
    "triangular",
    "verify_pair",
]
