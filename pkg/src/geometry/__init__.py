"""
Geometry module: dimensions, balls, spheres, caps and measure constants
几何模块：维数、球、球面、球冠与测度常数
"""

from .constants import (
    ball_volume,
    cap_area_fraction,
    sharp_mean_constant,
    sphere_area,
    unit_ball_volume,
    unit_sphere_area,
)
from .shapes import (
    BallSpec,
    SphereSpec,
    SphericalCap,
    UnionMeasure,
    as_point,
    cap_surface_measure,
    cap_union_measure,
    circle_arcs,
    caps_on_sphere,
    intersect_intervals,
    intersection_fraction,
    origin,
    pairwise_disjoint,
    reduce_caps,
)

__all__ = [
    "BallSpec",
    "SphereSpec",
    "SphericalCap",
    "UnionMeasure",
    "as_point",
    "ball_volume",
    "cap_area_fraction",
    "cap_surface_measure",
    "cap_union_measure",
    "caps_on_sphere",
    "circle_arcs",
    "intersect_intervals",
    "intersection_fraction",
    "origin",
    "pairwise_disjoint",
    "reduce_caps",
    "sharp_mean_constant",
    "sphere_area",
    "unit_ball_volume",
    "unit_sphere_area",
]
