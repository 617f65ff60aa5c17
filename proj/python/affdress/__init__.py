"""Dressing of definite affine spheres by rational loop-group elements."""

from ._affdress import (
    AffdressError,
    dress3_metric,
    dress3_point,
    dress6_metric,
    hildebrand_metric,
    hildebrand_normalized,
    one_soliton_h,
    selftest,
    simple_element,
    sixpole_element,
    sixpole_psi,
    two_soliton_h,
    tzitzeica_residual,
    vacuum_frame,
    vacuum_immersion,
)

__all__ = [
    "AffdressError",
    "dress3_metric",
    "dress3_point",
    "dress6_metric",
    "hildebrand_metric",
    "hildebrand_normalized",
    "one_soliton_h",
    "selftest",
    "simple_element",
    "sixpole_element",
    "sixpole_psi",
    "two_soliton_h",
    "tzitzeica_residual",
    "vacuum_frame",
    "vacuum_immersion",
]
