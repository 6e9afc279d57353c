"""Flat ribbons along space curves."""

from ._core import (
    Curve,
    FlatRibbonError,
    NormalField,
    Ribbon,
    bending_energy,
    case_a_extrema,
    case_b_energy,
    construct_ribbon,
    darboux_scalars,
    frenet_rotation,
    helix,
    helix_ratio_a,
    helix_ratio_b,
    isometric_partner_angle,
    limit_energy,
    max_regular_width,
    principal_normal,
    rotate,
    rotate_scalars,
    rotation_minimizing,
    run,
    solve_prescribed,
    solve_same_angle,
    torus_knot,
    validate,
)

__all__ = [
    "Curve",
    "FlatRibbonError",
    "NormalField",
    "Ribbon",
    "bending_energy",
    "case_a_extrema",
    "case_b_energy",
    "construct_ribbon",
    "darboux_scalars",
    "frenet_rotation",
    "helix",
    "helix_ratio_a",
    "helix_ratio_b",
    "isometric_partner_angle",
    "limit_energy",
    "max_regular_width",
    "principal_normal",
    "rotate",
    "rotate_scalars",
    "rotation_minimizing",
    "run",
    "solve_prescribed",
    "solve_same_angle",
    "torus_knot",
    "validate",
]
