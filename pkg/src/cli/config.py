"""
Run configuration documents
运行配置文档
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..errors import ConfigParseError, ConfigValidationError
from ..growth.order import ProfileKind
from ..quadrature.schemes import SchemeKind


Command = Literal["mean", "chain", "prop1", "prop2", "harnack", "order", "audit", "slices"]
MeanQuantity = Literal["sphere", "ball", "identity", "sup", "cap"]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FieldSpec(StrictModel):
    """Named constructor of the field catalog"""

    name: str
    params: Dict[str, Any] = Field(default_factory=dict)
    exterior_radius: Optional[float] = None

    def as_spec(self) -> Dict[str, Any]:
        return self.model_dump()


class CapSpec(StrictModel):
    axis: List[float]
    half_angle: float

    @field_validator("half_angle")
    @classmethod
    def _angle_range(cls, value: float) -> float:
        if not 0.0 <= value <= math.pi:
            raise ValueError("half_angle must lie in [0, pi]")
        return value


class SchemeSpec(StrictModel):
    kind: SchemeKind
    resolution: Optional[int] = None
    seed: Optional[int] = None
    radial_panels: Optional[int] = None
    radial_order: Optional[int] = None

    @field_validator("resolution")
    @classmethod
    def _resolution_floor(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 8:
            raise ValueError("resolution must be at least 8")
        return value


class GeometrySpec(StrictModel):
    """
    Geometry of a run; each command reads the keys it needs

    center/r serve mean runs (radii lists several), R/r/t/probes serve the ball
    inequalities, caps lie on S(r) for prop2, radii or first_radius/ratio/count
    give the order and audit radii, half_angles (or shrinking_caps for half angle
    1/k on the k-th sphere), cap_axis, q, Q and M drive audits, and
    directions (complex unit vectors as [re, im] pairs) drive slices.
    """

    center: Optional[List[float]] = None
    r: Optional[float] = None
    radii: Optional[List[float]] = None
    R: Optional[float] = None
    t: Optional[float] = None
    probes: List[List[float]] = Field(default_factory=list)
    caps: List[CapSpec] = Field(default_factory=list)
    quantities: List[MeanQuantity] = Field(default_factory=lambda: ["sphere", "ball", "identity"])
    first_radius: Optional[float] = None
    ratio: Optional[float] = None
    count: Optional[int] = None
    thin: bool = False
    q: Optional[float] = None
    Q: Optional[float] = None
    half_angles: Optional[List[float]] = None
    shrinking_caps: bool = False
    cap_axis: Optional[List[float]] = None
    M: Optional[float] = None
    profile_kind: ProfileKind = ProfileKind.SPHERE_SUP
    order_ceiling: Optional[float] = None
    directions: List[List[Any]] = Field(default_factory=list)

    @field_validator("q")
    @classmethod
    def _q_above_one(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not value > 1:
            raise ValueError("q must exceed 1")
        return value


class DebugSpec(StrictModel):
    rhs_scale: float = 1.0


class RunConfig(StrictModel):
    """Validated run configuration"""

    command: Command
    field: FieldSpec
    geometry: GeometrySpec = Field(default_factory=GeometrySpec)
    scheme: Optional[SchemeSpec] = None
    seed: Optional[int] = None
    output_path: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    name: Optional[str] = None
    debug: DebugSpec = Field(default_factory=DebugSpec)

    @property
    def effective_seed(self) -> int:
        if self.seed is not None:
            return self.seed
        if self.scheme is not None and self.scheme.seed is not None:
            return self.scheme.seed
        return 0


REQUIRED_GEOMETRY: Dict[str, Tuple[str, ...]] = {
    "mean": ("r",),
    "chain": ("R",),
    "prop1": ("r", "R", "probes"),
    "prop2": ("r", "R", "caps"),
    "harnack": ("R", "probes"),
    "order": (),
    "audit": (),
    "slices": ("directions",),
}


def requirement_problems(cfg: RunConfig) -> List[Tuple[str, str]]:
    """Command-specific requirements the schema alone cannot express"""
    problems = []
    if cfg.scheme is not None and cfg.scheme.kind == SchemeKind.MONTE_CARLO_SPHERE:
        if cfg.seed is None and cfg.scheme.seed is None:
            problems.append(("seed", "seed is required when a monte_carlo_sphere scheme is selected"))
    geometry = cfg.geometry
    for key in REQUIRED_GEOMETRY[cfg.command]:
        value = getattr(geometry, key)
        if value is None or (isinstance(value, list) and not value):
            if cfg.command == "mean" and key == "r" and geometry.radii:
                continue
            problems.append((f"geometry.{key}", f"required for command {cfg.command!r}"))
    if cfg.command in ("audit", "slices"):
        if not geometry.radii and geometry.first_radius is None:
            problems.append(("geometry.radii", "give radii or first_radius/ratio/count"))
        if geometry.radii and geometry.q is None:
            problems.append(("geometry.q", "explicit audit radii need q"))
        if geometry.thin and geometry.Q is None:
            problems.append(("geometry.Q", "thinning needs the upper ratio Q"))
    return problems


def parse_config(text: str, path: Optional[str] = None) -> RunConfig:
    """
    Parse and validate a JSON run configuration

    Args:
        text: JSON document
        path: Source file, quoted in error messages

    Returns:
        RunConfig: Validated configuration

    Raises:
        ConfigParseError: On malformed JSON, with line and column
        ConfigValidationError: On schema or requirement violations, naming the key
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigParseError(e.msg, line=e.lineno, column=e.colno, path=path) from e
    if not isinstance(data, dict):
        raise ConfigParseError("run configuration must be a JSON object", line=1, column=1, path=path)

    try:
        cfg = RunConfig.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        key = ".".join(str(part) for part in error["loc"]) or "config"
        raise ConfigValidationError(key, error["msg"]) from e

    problems = requirement_problems(cfg)
    if problems:
        raise ConfigValidationError(*problems[0])
    return cfg


def load_config_file(path: str) -> RunConfig:
    """Read and parse a run configuration file"""
    text = Path(path).read_text(encoding="utf-8")
    return parse_config(text, path=str(path))
