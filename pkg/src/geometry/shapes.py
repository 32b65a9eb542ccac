"""
Balls, spheres and spherical caps
球、球面与球冠
"""

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.integrate import quad
from scipy.linalg import null_space

from ..errors import InvalidGeometry
from .constants import cap_area_fraction, sphere_area, unit_sphere_area


UNIT_TOLERANCE = 1e-12


def as_point(values: Iterable[float]) -> Tuple[float, ...]:
    """Convert a sequence of coordinates to an immutable point"""
    point = tuple(float(c) for c in np.ravel(np.asarray(values, dtype=float)))
    if not point:
        raise InvalidGeometry("a point needs at least one coordinate")
    return point


def origin(m: int) -> Tuple[float, ...]:
    return (0.0,) * int(m)


@dataclass(frozen=True)
class BallSpec:
    """Closed ball {x' : |x' - center| <= radius}"""

    center: Tuple[float, ...]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.radius >= 0:
            raise InvalidGeometry(f"ball radius must be nonnegative, got {self.radius}")
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class SphereSpec:
    """Sphere {x' : |x' - center| = radius}"""

    center: Tuple[float, ...]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.radius > 0:
            raise InvalidGeometry(f"sphere radius must be positive, got {self.radius}")
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def area(self) -> float:
        return sphere_area(self.dim, self.radius)


@dataclass(frozen=True)
class SphericalCap:
    """
    Open cap of a sphere: points whose direction from the center makes an angle
    below half_angle with axis. A cap with half_angle = pi is the whole sphere.
    """

    sphere: SphereSpec
    axis: Tuple[float, ...]
    half_angle: float

    def __post_init__(self):
        axis = as_point(self.axis)
        if len(axis) != self.sphere.dim:
            raise InvalidGeometry(
                f"axis has {len(axis)} coordinates but the sphere lives in R^{self.sphere.dim}"
            )
        norm = math.sqrt(sum(c * c for c in axis))
        if abs(norm - 1.0) > UNIT_TOLERANCE:
            raise InvalidGeometry(f"cap axis must be a unit vector, |axis| = {norm!r}")
        if not 0.0 <= self.half_angle <= math.pi:
            raise InvalidGeometry(f"cap half angle must lie in [0, pi], got {self.half_angle}")
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "half_angle", float(self.half_angle))

    @property
    def dim(self) -> int:
        return self.sphere.dim

    def contains_directions(self, directions: np.ndarray) -> np.ndarray:
        """
        Membership mask for unit directions (rows) seen from the sphere center

        Args:
            directions: Array of shape (N, m) with unit rows

        Returns:
            np.ndarray: Boolean mask of shape (N,)
        """
        directions = np.atleast_2d(directions)
        if self.half_angle == 0.0:
            return np.zeros(len(directions), dtype=bool)
        if self.half_angle == math.pi:
            return np.ones(len(directions), dtype=bool)
        cosines = np.clip(directions @ np.asarray(self.axis), -1.0, 1.0)
        return np.arccos(cosines) < self.half_angle


def cap_surface_measure(cap: SphericalCap) -> float:
    """
    Surface measure sigma_r of a cap

    Args:
        cap: The cap

    Returns:
        float: 2 theta r for m = 2, s_{m-2} r^{m-1} int_0^theta sin^{m-2} for m >= 3,
               counting measure for m = 1
    """
    m = cap.dim
    r = cap.sphere.radius
    if m == 2:
        if cap.half_angle == math.pi:
            return sphere_area(2, r)
        return 2.0 * cap.half_angle * r
    return sphere_area(m, r) * cap_area_fraction(m, cap.half_angle)


def caps_on_sphere(caps: Sequence[SphericalCap]) -> Optional[SphereSpec]:
    """Return the common sphere of a cap family, None for an empty family"""
    if not caps:
        return None
    sphere = caps[0].sphere
    for cap in caps[1:]:
        if cap.sphere != sphere:
            raise InvalidGeometry("all caps of a union must lie on the same sphere")
    return sphere


def _axis_angle(a: SphericalCap, b: SphericalCap) -> float:
    cosine = float(np.clip(np.dot(a.axis, b.axis), -1.0, 1.0))
    return math.acos(cosine)


def _contains_cap(outer: SphericalCap, inner: SphericalCap) -> bool:
    if outer.half_angle == math.pi or inner.half_angle == 0.0:
        return True
    return _axis_angle(outer, inner) + inner.half_angle <= outer.half_angle


def _disjoint_caps(a: SphericalCap, b: SphericalCap) -> bool:
    return _axis_angle(a, b) >= a.half_angle + b.half_angle


def pairwise_disjoint(caps: Sequence[SphericalCap]) -> bool:
    """True when no two caps of the family overlap"""
    return all(_disjoint_caps(a, b) for i, a in enumerate(caps) for b in caps[i + 1:])


def reduce_caps(caps: Sequence[SphericalCap]) -> List[SphericalCap]:
    """Drop empty caps and caps contained in another cap of the family"""
    remaining = [cap for cap in caps if cap.half_angle > 0.0]
    remaining.sort(key=lambda cap: -cap.half_angle)
    kept: List[SphericalCap] = []
    for cap in remaining:
        if not any(_contains_cap(outer, cap) for outer in kept):
            kept.append(cap)
    return kept


def circle_arcs(caps: Sequence[SphericalCap]) -> List[Tuple[float, float]]:
    """
    Disjoint angular intervals covered by a union of caps on a circle (m = 2)

    Returns:
        list: Sorted (start, end) pairs with start in [-pi, pi) and end - start <= 2 pi
    """
    intervals = []
    for cap in caps:
        if cap.half_angle == 0.0:
            continue
        if cap.half_angle == math.pi:
            return [(-math.pi, math.pi)]
        center = math.atan2(cap.axis[1], cap.axis[0])
        start = center - cap.half_angle
        end = center + cap.half_angle
        # Bring the start into [-pi, pi); an interval may then cross +pi.
        shift = math.floor((start + math.pi) / (2 * math.pi)) * 2 * math.pi
        intervals.append((start - shift, end - shift))
    if not intervals:
        return []
    # Unroll intervals crossing +pi so merging happens on [-pi, pi).
    pieces = []
    for start, end in intervals:
        if end > math.pi:
            pieces.append((start, math.pi))
            pieces.append((-math.pi, end - 2 * math.pi))
        else:
            pieces.append((start, end))
    pieces.sort()
    merged = [list(pieces[0])]
    for start, end in pieces[1:]:
        if start <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], end)
        else:
            merged.append([start, end])
    return [(a, b) for a, b in merged]


@dataclass
class UnionMeasure:
    """Measure of a union of caps with the method used"""

    value: float
    error_bound: float = 0.0
    method: str = "exact"
    samples: int = 0
    seed: Optional[int] = None
    details: dict = field(default_factory=dict)


def cap_union_measure(
    caps: Sequence[SphericalCap],
    seed: int = 0,
    samples: int = 1 << 18
) -> UnionMeasure:
    """
    Overlap-corrected surface measure of a finite union of caps on one sphere

    Exact for m = 1 and m = 2 and for families that reduce to pairwise disjoint caps.
    In m >= 3 up to three overlapping caps go through inclusion-exclusion with
    intersection measures from intersection_fraction; larger overlapping
    families use seeded Monte Carlo with a 3 sigma error bound.

    Args:
        caps: Caps sharing the same sphere
        seed: Seed for the Monte Carlo fallback
        samples: Number of Monte Carlo directions

    Returns:
        UnionMeasure: Value, error bound and method
    """
    sphere = caps_on_sphere(caps)
    if sphere is None:
        return UnionMeasure(value=0.0)
    m = sphere.dim
    r = sphere.radius

    if m == 1:
        points = np.array([[1.0], [-1.0]])
        covered = np.zeros(2, dtype=bool)
        for cap in caps:
            covered |= cap.contains_directions(points)
        return UnionMeasure(value=float(covered.sum()))

    if m == 2:
        arcs = circle_arcs(caps)
        total = sum(end - start for start, end in arcs)
        if total >= 2 * math.pi:
            return UnionMeasure(value=sphere_area(2, r))
        return UnionMeasure(value=total * r, details={"arcs": len(arcs)})

    kept = reduce_caps(caps)
    if any(cap.half_angle == math.pi for cap in kept):
        return UnionMeasure(value=sphere_area(m, r))
    if pairwise_disjoint(kept):
        return UnionMeasure(value=sum(cap_surface_measure(cap) for cap in kept))
    if len(kept) <= EXACT_UNION_CAPS:
        fraction, error = _inclusion_exclusion(kept)
        area = sphere_area(m, r)
        return UnionMeasure(
            value=area * fraction,
            error_bound=area * error,
            method="inclusion_exclusion",
            details={"caps": len(kept)}
        )

    logger.debug(f"cap union of {len(kept)} overlapping caps in R^{m}: Monte Carlo measure")
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((samples, m))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    covered = np.zeros(samples, dtype=bool)
    for cap in kept:
        covered |= cap.contains_directions(directions)
    fraction = covered.mean()
    stderr = math.sqrt(max(fraction * (1.0 - fraction), 0.0) / samples)
    area = sphere_area(m, r)
    return UnionMeasure(
        value=area * fraction,
        error_bound=3.0 * area * stderr,
        method="monte_carlo",
        samples=samples,
        seed=seed
    )


EXACT_UNION_CAPS = 3
FULL_THRESHOLD = -1.0

# A cap as a constraint {w : w . axis > threshold} on a unit sphere; thresholds
# outside [-1, 1) mean "everything" or "nothing".
Constraint = Tuple[np.ndarray, float]


def _transition_angles(along: float, threshold: float, limit: float) -> List[float]:
    """Polar angles in (0, limit) at which a second cap starts or stops cutting the rings"""
    phi = math.acos(min(1.0, max(-1.0, along)))
    beta = math.acos(min(1.0, max(-1.0, threshold)))
    candidates = (abs(phi - beta), phi + beta, 2.0 * math.pi - phi - beta)
    return sorted({t for t in candidates if 0.0 < t < limit})


def wrapped_arc(center: float, half_width: float) -> List[Tuple[float, float]]:
    """Arc of angles within half_width of center, split into pieces inside [-pi, pi]"""
    start = center - half_width
    shift = math.floor((start + math.pi) / (2 * math.pi)) * 2 * math.pi
    start, end = start - shift, center + half_width - shift
    if end > math.pi:
        return [(start, math.pi), (-math.pi, end - 2 * math.pi)]
    return [(start, end)]


def intersect_intervals(
    first: Sequence[Tuple[float, float]],
    second: Sequence[Tuple[float, float]]
) -> List[Tuple[float, float]]:
    """Pairwise intersection of two lists of intervals"""
    pieces = []
    for a, b in first:
        for c, d in second:
            low, high = max(a, c), min(b, d)
            if high > low:
                pieces.append((low, high))
    return sorted(pieces)


def _circle_intersection(constraints: Sequence[Constraint]) -> float:
    arcs = [(-math.pi, math.pi)]
    for axis, threshold in constraints:
        center = math.atan2(axis[1], axis[0])
        arcs = intersect_intervals(arcs, wrapped_arc(center, math.acos(threshold)))
    return sum(b - a for a, b in arcs) / (2.0 * math.pi)


def intersection_fraction(d: int, constraints: Sequence[Constraint]) -> Tuple[float, float]:
    """
    Fraction of the unit sphere S^{d-1} lying in every cap {w . axis > threshold}

    Single caps use the regularized incomplete beta function, circles intersect
    arcs exactly, and for d >= 3 the first cap carries a polar coordinate whose
    rings meet the remaining caps in caps of S^{d-2}; the polar integral is
    done adaptively, so the result carries a small quadrature error estimate.

    Args:
        d: Ambient dimension
        constraints: (unit axis, threshold) pairs

    Returns:
        tuple: (fraction, error estimate)
    """
    active = []
    for axis, threshold in constraints:
        if threshold >= 1.0:
            return 0.0, 0.0
        if threshold > FULL_THRESHOLD:
            active.append((np.asarray(axis, dtype=float), float(threshold)))
    if not active:
        return 1.0, 0.0
    if d == 1:
        points = (1.0, -1.0)
        inside = [all(p * axis[0] > threshold for axis, threshold in active) for p in points]
        return sum(inside) / 2.0, 0.0
    if len(active) == 1:
        return cap_area_fraction(d, math.acos(active[0][1])), 0.0
    if d == 2:
        return _circle_intersection(active), 0.0

    (axis, threshold), rest = active[0], active[1:]
    limit = math.acos(threshold)
    basis = null_space(axis.reshape(1, -1))
    sliced = []
    breaks: List[float] = []
    for other, other_threshold in rest:
        along = float(axis @ other)
        across = basis.T @ other
        spread = float(np.linalg.norm(across))
        direction = across / spread if spread > UNIT_TOLERANCE else np.eye(d - 1)[0]
        sliced.append((direction, along, spread, other_threshold))
        breaks.extend(_transition_angles(along, other_threshold, limit))

    def ring(t: float) -> float:
        sin_t, cos_t = math.sin(t), math.cos(t)
        ring_constraints = []
        for direction, along, spread, other_threshold in sliced:
            gap = other_threshold - cos_t * along
            if spread * sin_t <= UNIT_TOLERANCE:
                ring_constraints.append((direction, -math.inf if gap < 0 else math.inf))
            else:
                ring_constraints.append((direction, gap / (spread * sin_t)))
        fraction, _ = intersection_fraction(d - 1, ring_constraints)
        return sin_t ** (d - 2) * fraction

    value, error = quad(ring, 0.0, limit, points=breaks or None, limit=200, epsabs=1e-13, epsrel=1e-11)
    ratio = unit_sphere_area(d - 1) / unit_sphere_area(d)
    return ratio * value, ratio * error


def _inclusion_exclusion(caps: Sequence[SphericalCap]) -> Tuple[float, float]:
    m = caps[0].dim
    total, error = 0.0, 0.0
    for size in range(1, len(caps) + 1):
        sign = 1.0 if size % 2 else -1.0
        for subset in combinations(caps, size):
            constraints = [(np.asarray(cap.axis), math.cos(cap.half_angle)) for cap in subset]
            fraction, err = intersection_fraction(m, constraints)
            total += sign * fraction
            error += err
    return total, error
