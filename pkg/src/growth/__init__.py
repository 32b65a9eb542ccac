"""
Growth module: order of growth from sphere profiles
增长模块：由球面轮廓估计增长阶
"""

from .order import (
    GROWTH_DEFAULTS,
    OrderEstimate,
    ProfileKind,
    SlopeWindow,
    configure_growth,
    estimate_order,
    geometric_radii,
    is_finite_order,
    order_from_profile,
    sample_profile,
)

__all__ = [
    "GROWTH_DEFAULTS",
    "OrderEstimate",
    "ProfileKind",
    "SlopeWindow",
    "configure_growth",
    "estimate_order",
    "geometric_radii",
    "is_finite_order",
    "order_from_profile",
    "sample_profile",
]
