"""
Quadrature schemes and mean estimates
求积方案与均值估计
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Optional

from ..errors import InvalidGeometry


class SchemeKind(str, Enum):
    UNIFORM_CIRCLE = "uniform_circle"
    PRODUCT_GAUSS_SPHERE = "product_gauss_sphere"
    MONTE_CARLO_SPHERE = "monte_carlo_sphere"
    RADIAL_COMPOSITE = "radial_composite"


class MeanMethod(str, Enum):
    DETERMINISTIC_GRID = "deterministic_grid"
    MONTE_CARLO = "monte_carlo"


# Built-in defaults; config/config.yaml may override them through configure_defaults().
QUADRATURE_DEFAULTS: Dict[str, Any] = {
    "m2_resolution": 4096,
    "m3_resolution": 256,
    "monte_carlo_samples": 1 << 20,
    "monte_carlo_chunk": 1 << 16,
    "radial_panels": 8,
    "radial_order": 6,
    "clip_target_tolerance": 1e-8,
    "default_seed": 0,
}

MIN_RESOLUTION = 8


def configure_defaults(section: Optional[Dict[str, Any]]) -> None:
    """Override built-in quadrature defaults from the `quadrature` settings section"""
    for key, value in (section or {}).items():
        if key in QUADRATURE_DEFAULTS:
            QUADRATURE_DEFAULTS[key] = type(QUADRATURE_DEFAULTS[key])(value)


@dataclass(frozen=True)
class QuadratureScheme:
    """
    Rule used for sphere means

    resolution is the number of circle nodes (uniform_circle), the number of
    azimuthal nodes with resolution // 2 polar Gauss nodes (product_gauss_sphere),
    the number of samples (monte_carlo_sphere), or the number of radial panels
    (radial_composite, whose sphere rule is the dimension default).
    """

    kind: SchemeKind
    resolution: int
    seed: Optional[int] = None
    radial_panels: int = field(default_factory=lambda: QUADRATURE_DEFAULTS["radial_panels"])
    radial_order: int = field(default_factory=lambda: QUADRATURE_DEFAULTS["radial_order"])
    clip_target_tolerance: float = field(
        default_factory=lambda: QUADRATURE_DEFAULTS["clip_target_tolerance"]
    )

    def __post_init__(self):
        object.__setattr__(self, "kind", SchemeKind(self.kind))
        if int(self.resolution) != self.resolution or self.resolution < MIN_RESOLUTION:
            raise InvalidGeometry(f"scheme resolution must be an integer >= {MIN_RESOLUTION}")
        if self.radial_panels < 2 or self.radial_order < 1:
            raise InvalidGeometry("radial rule needs at least 2 panels of order >= 1")

    @property
    def is_monte_carlo(self) -> bool:
        return self.kind == SchemeKind.MONTE_CARLO_SPHERE

    @property
    def effective_seed(self) -> int:
        return QUADRATURE_DEFAULTS["default_seed"] if self.seed is None else int(self.seed)

    def with_resolution(self, resolution: int) -> "QuadratureScheme":
        return replace(self, resolution=max(MIN_RESOLUTION, int(resolution)))

    def with_seed(self, seed: int) -> "QuadratureScheme":
        return replace(self, seed=int(seed))


def default_scheme(m: int, seed: Optional[int] = None) -> QuadratureScheme:
    """
    Default sphere rule for dimension m

    Uniform circle for m <= 2, product Gauss for m = 3, Monte Carlo for m >= 4.
    """
    if m <= 2:
        return QuadratureScheme(SchemeKind.UNIFORM_CIRCLE, QUADRATURE_DEFAULTS["m2_resolution"], seed)
    if m == 3:
        return QuadratureScheme(
            SchemeKind.PRODUCT_GAUSS_SPHERE, QUADRATURE_DEFAULTS["m3_resolution"], seed
        )
    return QuadratureScheme(
        SchemeKind.MONTE_CARLO_SPHERE, QUADRATURE_DEFAULTS["monte_carlo_samples"], seed
    )


def sphere_rule(m: int, scheme: Optional[QuadratureScheme]) -> QuadratureScheme:
    """Resolve the sphere rule of a scheme for dimension m"""
    if scheme is None:
        return default_scheme(m)
    if scheme.kind == SchemeKind.RADIAL_COMPOSITE:
        base = default_scheme(m, scheme.seed)
        return replace(
            base,
            radial_panels=scheme.resolution,
            radial_order=scheme.radial_order,
            clip_target_tolerance=scheme.clip_target_tolerance
        )
    if scheme.kind == SchemeKind.UNIFORM_CIRCLE and m > 2:
        raise InvalidGeometry(f"uniform_circle rule applies to m <= 2, got m = {m}")
    if scheme.kind == SchemeKind.PRODUCT_GAUSS_SPHERE and m != 3:
        raise InvalidGeometry(f"product_gauss_sphere rule applies to m = 3, got m = {m}")
    return scheme


@dataclass(frozen=True)
class MeanEstimate:
    """Numerical value of a mean or integral with its error bound"""

    value: float
    error_bound: float
    method: MeanMethod
    samples: int
    seed: Optional[int] = None
    clip_levels: int = 0

    def __post_init__(self):
        object.__setattr__(self, "method", MeanMethod(self.method))
        if not self.error_bound >= 0:
            raise ValueError(f"error bound must be nonnegative, got {self.error_bound}")

    def scaled(self, factor: float) -> "MeanEstimate":
        """The estimate of factor * quantity"""
        return replace(self, value=self.value * factor, error_bound=self.error_bound * abs(factor))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "error_bound": self.error_bound,
            "method": self.method.value,
            "samples": self.samples,
            "seed": self.seed,
        }
