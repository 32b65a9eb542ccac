"""
Scalar fields with extended-real values and the combinators used by the theorems
取扩充实值的标量场及定理中使用的组合子
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import BadDirection, BadRadii, DomainViolation, InvalidGeometry, UnboundedField


# Extended reals are plain floats; -inf is the distinguished minimal value.
ExtendedReal = float
NEG_INF: ExtendedReal = float("-inf")

Evaluator = Callable[[np.ndarray], np.ndarray]

CONSTRUCTION_PROBES = 32
POLE_TOLERANCE = 1e-12


class FieldClass(str, Enum):
    """Class tag of a field"""

    HARMONIC = "harmonic"
    SUBHARMONIC = "subharmonic"
    CONVEX = "convex"
    LOG_MODULUS = "log_modulus"
    POSITIVE_PART = "positive_part"
    COMPOSITE = "composite"


@dataclass(frozen=True)
class ScalarField:
    """
    Deterministic map from points of R^m to [-inf, +inf)

    The evaluator takes an array of shape (N, m) and returns N values. The domain
    is all of R^m when exterior_radius is None, otherwise the exterior
    {|x| > exterior_radius} of a closed ball. Poles are points where the field
    tends to +inf; they are removed from the domain, so no sphere may pass
    through one and no closed ball may contain one. Seams are radii of
    origin-centered spheres along which the field is pieced together.
    """

    evaluator: Evaluator
    dim: int
    class_tag: FieldClass
    exterior_radius: Optional[float] = None
    label: str = ""
    poles: Tuple[Tuple[float, ...], ...] = ()
    seams: Tuple[float, ...] = ()

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise InvalidGeometry(f"field dimension must be a positive integer, got {self.dim}")
        if self.exterior_radius is not None and not self.exterior_radius >= 0:
            raise BadRadii(f"exterior radius must be nonnegative, got {self.exterior_radius}")
        object.__setattr__(self, "class_tag", FieldClass(self.class_tag))
        poles = tuple(tuple(float(c) for c in pole) for pole in self.poles)
        if any(len(pole) != self.dim for pole in poles):
            raise InvalidGeometry(f"poles of a field on R^{self.dim} need {self.dim} coordinates")
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "seams", tuple(sorted({float(r) for r in self.seams})))
        self._probe_upper_bound()

    def _probe_upper_bound(self) -> None:
        """Reject evaluators that produce +inf or NaN on a fixed probe set"""
        rng = np.random.default_rng(0)
        directions = rng.standard_normal((CONSTRUCTION_PROBES, self.dim))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        inner = (self.exterior_radius or 0.0) + 0.5
        radii = rng.uniform(inner, inner + 4.0, size=(CONSTRUCTION_PROBES, 1))
        self.evaluate(directions * radii)

    @property
    def on_whole_space(self) -> bool:
        return self.exterior_radius is None

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate the field at the rows of points

        Args:
            points: Array of shape (N, m)

        Returns:
            np.ndarray: Values of shape (N,); -inf allowed

        Raises:
            UnboundedField: If a value is +inf or NaN
        """
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(1, -1)
        if points.shape[1] != self.dim:
            raise InvalidGeometry(
                f"field {self.label or self.class_tag.value} lives in R^{self.dim}, "
                f"got points with {points.shape[1]} coordinates"
            )
        values = np.asarray(self.evaluator(points), dtype=float).reshape(len(points))
        bad = np.isnan(values) | np.isposinf(values)
        if bad.any():
            index = int(np.flatnonzero(bad)[0])
            raise UnboundedField(
                f"field {self.label or self.class_tag.value} produced {values[index]} "
                f"at {points[index].tolist()}"
            )
        return values

    def value_at(self, point: Sequence[float]) -> ExtendedReal:
        """Evaluate at a single point"""
        point = np.asarray(point, dtype=float).reshape(1, -1)
        if not self.point_in_domain(point[0]):
            raise DomainViolation(f"point {point[0].tolist()} is outside the domain of {self.label}")
        return float(self.evaluate(point)[0])

    def __call__(self, points: np.ndarray) -> Union[np.ndarray, float]:
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            return self.value_at(points)
        return self.evaluate(points)

    def _pole_distances(self, center: Sequence[float]) -> np.ndarray:
        if not self.poles:
            return np.empty(0)
        center = np.asarray(center, dtype=float).reshape(1, -1)
        return np.linalg.norm(np.asarray(self.poles) - center, axis=1)

    def point_in_domain(self, point: Sequence[float]) -> bool:
        if np.any(self._pole_distances(point) == 0.0):
            return False
        if self.exterior_radius is None:
            return True
        return float(np.linalg.norm(point)) > self.exterior_radius

    def sphere_in_domain(self, center: Sequence[float], radius: float) -> bool:
        """True when the sphere S(center, radius) lies inside the domain"""
        slack = POLE_TOLERANCE * max(1.0, radius)
        if np.any(np.abs(self._pole_distances(center) - radius) <= slack):
            return False
        if self.exterior_radius is None:
            return True
        distance = float(np.linalg.norm(center))
        return abs(distance - radius) > self.exterior_radius

    def ball_in_domain(self, center: Sequence[float], radius: float, closed: bool = True) -> bool:
        """
        True when the ball B(center, radius) lies inside the domain

        Args:
            center: Ball center
            radius: Ball radius
            closed: Whether boundary points must belong to the domain too
        """
        distances = self._pole_distances(center)
        if closed and np.any(distances <= radius + POLE_TOLERANCE * max(1.0, radius)):
            return False
        if not closed and np.any(distances < radius):
            return False
        if self.exterior_radius is None:
            return True
        distance = float(np.linalg.norm(center))
        if closed:
            return distance - radius > self.exterior_radius
        return distance - radius >= self.exterior_radius

    def describe(self) -> str:
        domain = "R^%d" % self.dim if self.on_whole_space else (
            "R^%d minus closed B(%g)" % (self.dim, self.exterior_radius)
        )
        if self.poles:
            domain += " minus poles " + ", ".join(str(list(pole)) for pole in self.poles)
        return f"{self.label or 'field'} [{self.class_tag.value}] on {domain}"


def _norms(points: np.ndarray) -> np.ndarray:
    return np.linalg.norm(points, axis=1)


def positive_part(v: ScalarField) -> ScalarField:
    """Pointwise max{0, v}"""
    return ScalarField(
        evaluator=lambda p: np.maximum(v.evaluate(p), 0.0),
        dim=v.dim,
        class_tag=FieldClass.POSITIVE_PART,
        exterior_radius=v.exterior_radius,
        label=f"({v.label})^+",
        poles=v.poles,
        seams=v.seams
    )


def shift_sub_const(v: ScalarField, M: float) -> ScalarField:
    """
    Positive part (v - M)^+ of a shifted field

    Args:
        v: Field
        M: Finite level

    Returns:
        ScalarField: Identically zero wherever v <= M
    """
    if not math.isfinite(M):
        raise ValueError(f"level M must be finite, got {M}")
    M = float(M)
    return ScalarField(
        evaluator=lambda p: np.maximum(v.evaluate(p) - M, 0.0),
        dim=v.dim,
        class_tag=FieldClass.POSITIVE_PART,
        exterior_radius=v.exterior_radius,
        label=f"({v.label} - {M:g})^+",
        poles=v.poles,
        seams=v.seams
    )


def extend_inward(v: ScalarField, M0: float, r1: float) -> ScalarField:
    """
    Extend a field given outside a closed ball to all of R^m

    The result equals M0 on the closed ball B(r1) and max{v, M0} outside it.

    Args:
        v: Field on the exterior of B(r0)
        M0: Finite level
        r1: Radius with r1 > r0

    Returns:
        ScalarField: Field on the whole space
    """
    r0 = v.exterior_radius or 0.0
    if not r1 > r0:
        raise BadRadii(f"extension radius r1 = {r1} must exceed the exclusion radius r0 = {r0}")
    if not math.isfinite(M0):
        raise ValueError(f"level M0 must be finite, got {M0}")
    M0 = float(M0)
    r1 = float(r1)

    def evaluate(points: np.ndarray) -> np.ndarray:
        values = np.full(len(points), M0)
        outside = _norms(points) > r1
        if outside.any():
            values[outside] = np.maximum(v.evaluate(points[outside]), M0)
        return values

    return ScalarField(
        evaluator=evaluate,
        dim=v.dim,
        class_tag=FieldClass.COMPOSITE,
        exterior_radius=None,
        label=f"extend({v.label}; M0={M0:g}, r1={r1:g})",
        poles=tuple(pole for pole in v.poles if np.linalg.norm(pole) > r1),
        seams=tuple(r for r in v.seams if r > r1) + (r1,)
    )


def affine(v: ScalarField, scale: float = 1.0, shift: float = 0.0) -> ScalarField:
    """Field c v + d with c > 0"""
    if not scale > 0 or not math.isfinite(scale) or not math.isfinite(shift):
        raise ValueError(f"affine map needs finite scale > 0 and finite shift, got {scale}, {shift}")
    keeps_class = v.class_tag in (FieldClass.HARMONIC, FieldClass.SUBHARMONIC, FieldClass.CONVEX)
    return ScalarField(
        evaluator=lambda p: scale * v.evaluate(p) + shift,
        dim=v.dim,
        class_tag=v.class_tag if keeps_class else FieldClass.COMPOSITE,
        exterior_radius=v.exterior_radius,
        label=f"{scale:g}*{v.label}+{shift:g}",
        poles=v.poles,
        seams=v.seams
    )


def restrict_exterior(v: ScalarField, r0: float) -> ScalarField:
    """The same field, declared only on the exterior of the closed ball B(r0)"""
    if not r0 >= (v.exterior_radius or 0.0):
        raise BadRadii(f"cannot widen the domain of {v.label} below radius {v.exterior_radius}")
    return ScalarField(
        evaluator=v.evaluator,
        dim=v.dim,
        class_tag=v.class_tag,
        exterior_radius=float(r0),
        label=v.label,
        poles=tuple(pole for pole in v.poles if np.linalg.norm(pole) > r0),
        seams=tuple(r for r in v.seams if r > r0)
    )


def complex_direction(s: Sequence) -> np.ndarray:
    """Parse a direction of C^n given as complex numbers or [re, im] pairs"""
    parsed = []
    for entry in s:
        if isinstance(entry, (list, tuple)):
            if len(entry) != 2:
                raise BadDirection(f"complex entry must be [re, im], got {entry!r}")
            parsed.append(complex(float(entry[0]), float(entry[1])))
        else:
            parsed.append(complex(entry))
    return np.asarray(parsed, dtype=complex)


def _poles_on_line(poles: Sequence[Tuple[float, ...]], direction: np.ndarray) -> Tuple[Tuple[float, float], ...]:
    """Plane coordinates z of the poles w with w = z s"""
    kept = []
    for pole in poles:
        w = np.asarray(pole[0::2]) + 1j * np.asarray(pole[1::2])
        z = complex(np.vdot(direction, w))
        if np.linalg.norm(w - z * direction) <= POLE_TOLERANCE * max(1.0, abs(z)):
            kept.append((z.real, z.imag))
    return tuple(kept)


def slice_complex_line(v: ScalarField, s: Sequence) -> ScalarField:
    """
    Restriction of a field on C^n to the complex line {z s : z in C}

    C^n is identified with R^{2n} as (Re w1, Im w1, Re w2, Im w2, ...).

    Args:
        v: Field of dimension 2n
        s: Unit vector of C^n

    Returns:
        ScalarField: The field z -> v(z s) on the plane

    Raises:
        BadDirection: If |s| differs from 1 by more than 1e-12
    """
    direction = complex_direction(s)
    n = len(direction)
    if v.dim != 2 * n:
        raise BadDirection(f"direction in C^{n} does not match a field on R^{v.dim}")
    norm = float(np.sqrt(np.sum(np.abs(direction) ** 2)))
    if abs(norm - 1.0) > 1e-12:
        raise BadDirection(f"slice direction must be a unit vector, |s| = {norm!r}")

    def evaluate(points: np.ndarray) -> np.ndarray:
        z = points[:, 0] + 1j * points[:, 1]
        w = z[:, None] * direction[None, :]
        lifted = np.empty((len(points), 2 * n))
        lifted[:, 0::2] = w.real
        lifted[:, 1::2] = w.imag
        return v.evaluate(lifted)

    keeps_class = v.class_tag in (FieldClass.LOG_MODULUS, FieldClass.POSITIVE_PART, FieldClass.CONVEX)
    return ScalarField(
        evaluator=evaluate,
        dim=2,
        class_tag=v.class_tag if keeps_class else FieldClass.SUBHARMONIC,
        exterior_radius=v.exterior_radius,
        label=f"{v.label}|C*{np.round(direction, 6).tolist()}",
        poles=_poles_on_line(v.poles, direction),
        seams=v.seams
    )
