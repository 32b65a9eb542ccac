"""
Exceptional sets on a sequence of spheres
球面序列上的例外集
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidGeometry
from ..geometry.shapes import SphereSpec, SphericalCap, UnionMeasure, cap_union_measure, origin
from ..inequalities.report import InequalityReport


ARC_TOLERANCE = 1e-12
TAIL_LENGTH = 3
TAIL_DROP = 0.1


@dataclass(frozen=True)
class ExceptionalSet:
    """
    Per-radius unions of caps E_k on the centered spheres S(r_k)

    include_shells marks the open shells between consecutive spheres as excluded,
    so only the sphere data constrain an audit.
    """

    dim: int
    per_radius: Tuple[Tuple[float, Tuple[SphericalCap, ...]], ...]
    include_shells: bool = True

    def __post_init__(self):
        entries = []
        for radius, caps in self.per_radius:
            radius = float(radius)
            caps = tuple(caps)
            for cap in caps:
                if cap.dim != self.dim:
                    raise InvalidGeometry(f"cap in R^{cap.dim} inside an exceptional set in R^{self.dim}")
                if cap.sphere.radius != radius or any(c != 0.0 for c in cap.sphere.center):
                    raise InvalidGeometry(
                        f"cap on S({cap.sphere.center}, {cap.sphere.radius}) listed under radius {radius}"
                    )
            entries.append((radius, caps))
        object.__setattr__(self, "per_radius", tuple(entries))

    @property
    def radii(self) -> List[float]:
        return [radius for radius, _ in self.per_radius]

    def caps_at(self, k: int) -> Tuple[SphericalCap, ...]:
        return self.per_radius[k][1]

    def measure(self, k: int, seed: int = 0) -> UnionMeasure:
        """Overlap-corrected surface measure of E_k"""
        return cap_union_measure(list(self.caps_at(k)), seed=seed)

    def off_set_mask(self, k: int, directions: np.ndarray) -> np.ndarray:
        """True for unit directions outside every cap of E_k"""
        covered = np.zeros(len(directions), dtype=bool)
        for cap in self.caps_at(k):
            covered |= cap.contains_directions(directions)
        return ~covered

    @classmethod
    def from_half_angles(
        cls,
        dim: int,
        radii: Sequence[float],
        half_angles: Sequence[float],
        axis: Optional[Sequence[float]] = None,
        include_shells: bool = True
    ) -> "ExceptionalSet":
        """One cap per radius around a common axis (e_1 by default); angle 0 means no cap"""
        if len(radii) != len(half_angles):
            raise InvalidGeometry(f"{len(radii)} radii but {len(half_angles)} half angles")
        axis = tuple(axis) if axis is not None else (1.0,) + (0.0,) * (dim - 1)
        per_radius = []
        for radius, theta in zip(radii, half_angles):
            caps = ()
            if theta > 0:
                caps = (SphericalCap(SphereSpec(origin(dim), radius), axis, min(theta, math.pi)),)
            per_radius.append((radius, caps))
        return cls(dim, tuple(per_radius), include_shells)

    @classmethod
    def shrinking(cls, dim: int, radii: Sequence[float], **kwargs) -> "ExceptionalSet":
        """Caps with half angle 1/k on the k-th sphere, k = 1, 2, ..."""
        return cls.from_half_angles(dim, radii, [1.0 / k for k in range(1, len(radii) + 1)], **kwargs)

    @classmethod
    def empty(cls, dim: int, radii: Sequence[float]) -> "ExceptionalSet":
        return cls(dim, tuple((r, ()) for r in radii))


@dataclass
class EpsilonSequence:
    """Normalized measures sigma(E_k) / r_k^{m-1} with the tends-to-zero heuristic"""

    values: List[float]
    errors: List[float] = field(default_factory=list)
    tends_to_zero_proxy: bool = False


def tends_to_zero(values: Sequence[float]) -> bool:
    """
    Heuristic for lim eps_k = 0 on finite data

    True for an all-zero sequence; otherwise the last value must be below a tenth
    of the maximum and the last three values strictly decreasing.
    """
    if not values:
        return True
    peak = max(values)
    if peak == 0.0:
        return True
    if len(values) < TAIL_LENGTH:
        return False
    tail = values[-TAIL_LENGTH:]
    decreasing = all(b < a for a, b in zip(tail, tail[1:]))
    return decreasing and values[-1] < TAIL_DROP * peak


def epsilon_sequence(E: ExceptionalSet, seed: int = 0) -> EpsilonSequence:
    """
    eps_k = sigma_{r_k}(E_k) / r_k^{m-1} for every radius of E

    Returns:
        EpsilonSequence: values, their error bounds and tends_to_zero_proxy
    """
    values, errors = [], []
    for k, radius in enumerate(E.radii):
        measure = E.measure(k, seed=seed + k)
        scale = radius ** (E.dim - 1)
        values.append(measure.value / scale)
        errors.append(measure.error_bound / scale)
    return EpsilonSequence(values=values, errors=errors, tends_to_zero_proxy=tends_to_zero(values))


def _angular_measure(caps: Sequence[SphericalCap]) -> float:
    """Lebesgue measure of a union of arcs, merged on [0, 2 pi)"""
    two_pi = 2.0 * math.pi
    pieces = []
    for cap in caps:
        if cap.half_angle == 0.0:
            continue
        if cap.half_angle >= math.pi:
            return two_pi
        middle = math.atan2(cap.axis[1], cap.axis[0]) % two_pi
        start = (middle - cap.half_angle) % two_pi
        end = start + 2.0 * cap.half_angle
        if end > two_pi:
            pieces.extend([(start, two_pi), (0.0, end - two_pi)])
        else:
            pieces.append((start, end))
    pieces.sort()
    total = 0.0
    current_start, current_end = None, None
    for start, end in pieces:
        if current_end is None or start > current_end:
            if current_end is not None:
                total += current_end - current_start
            current_start, current_end = start, end
        else:
            current_end = max(current_end, end)
    if current_end is not None:
        total += current_end - current_start
    return min(total, two_pi)


def arc_normalization_check(E: ExceptionalSet) -> List[InequalityReport]:
    """
    Compare the angular measure of each E_k with sigma_{r_k}(E_k) / r_k on circles

    Each report has lhs = |angular measure - sigma / r| and rhs = 0 with tolerance 1e-12.
    """
    if E.dim != 2:
        raise InvalidGeometry(f"arc normalization applies to circles (m = 2), got m = {E.dim}")
    reports = []
    for k, radius in enumerate(E.radii):
        angular = _angular_measure(E.caps_at(k))
        normalized = E.measure(k).value / radius
        reports.append(InequalityReport(
            label=f"arc_normalization[{k}]",
            lhs=abs(angular - normalized),
            rhs=0.0,
            tolerance=ARC_TOLERANCE,
            inputs={"k": k, "r": radius, "angular_measure": angular, "sigma_over_r": normalized}
        ))
    return reports
