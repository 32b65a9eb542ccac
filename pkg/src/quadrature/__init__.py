"""
Quadrature module: sphere and ball means, cap integrals, suprema
求积模块：球面与球体均值、球冠积分、上确界
"""

from .means import (
    SubMeanSpotCheck,
    ball_from_sphere_identity,
    ball_mean,
    cap_integral,
    clipped_mean,
    sphere_mean,
    sphere_sup,
    spot_check_sub_mean_value,
    union_integral,
)
from .nodes import composite_gauss, quasi_uniform_directions
from .schemes import (
    QUADRATURE_DEFAULTS,
    MeanEstimate,
    MeanMethod,
    QuadratureScheme,
    SchemeKind,
    configure_defaults,
    default_scheme,
    sphere_rule,
)

__all__ = [
    "QUADRATURE_DEFAULTS",
    "MeanEstimate",
    "MeanMethod",
    "QuadratureScheme",
    "SchemeKind",
    "SubMeanSpotCheck",
    "ball_from_sphere_identity",
    "ball_mean",
    "cap_integral",
    "clipped_mean",
    "composite_gauss",
    "configure_defaults",
    "default_scheme",
    "quasi_uniform_directions",
    "sphere_mean",
    "sphere_rule",
    "sphere_sup",
    "spot_check_sub_mean_value",
    "union_integral",
]
