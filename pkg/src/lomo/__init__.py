"""Rearrangements, maximal operators and Lorentz-Morrey norms on periodic grids."""
from .grid import Ball, Domain, GridFunction, ball, make_domain, restrict
from .maximal import RadiusGrid, fractional_maximal, hardy_littlewood, sup_hardy
from .norms import (
    SpaceParams,
    SweepSpec,
    default_sweep,
    lorentz_morrey_norm,
    lorentz_norm,
    morrey_norm,
)
from .rearrangement import DecreasingProfile, decreasing_rearrangement

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "DecreasingProfile",
    "Domain",
    "GridFunction",
    "RadiusGrid",
    "SpaceParams",
    "SweepSpec",
    "ball",
    "decreasing_rearrangement",
    "default_sweep",
    "fractional_maximal",
    "hardy_littlewood",
    "lorentz_morrey_norm",
    "lorentz_norm",
    "make_domain",
    "morrey_norm",
    "restrict",
    "sup_hardy",
]
