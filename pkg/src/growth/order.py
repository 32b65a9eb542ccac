"""
Growth-order estimation from radial profiles
由径向轮廓估计增长阶
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from ..errors import BadRadii, DegenerateProfile, DomainViolation, NotIncreasing
from ..fields.scalar_field import ScalarField, positive_part
from ..geometry.shapes import origin
from ..quadrature.means import sphere_mean, sphere_sup
from ..quadrature.schemes import QuadratureScheme


GROWTH_DEFAULTS: Dict[str, Any] = {
    "first_radius": 2.0,
    "ratio": 2.0,
    "count": 16,
    "window": 6,
    "tail_windows": 3,
    "min_radii": 12,
    "min_ratio": 1.2,
    "max_ratio": 4.0,
    "sup_resolution_m2": 8192,
    "slope_growth_allowance": 0.5,
}


def configure_growth(section: Optional[Dict[str, Any]]) -> None:
    """Override growth defaults from the `growth` settings section"""
    for key, value in (section or {}).items():
        if key in GROWTH_DEFAULTS:
            GROWTH_DEFAULTS[key] = type(GROWTH_DEFAULTS[key])(value)


class ProfileKind(str, Enum):
    SPHERE_SUP = "sphere_sup"
    SPHERE_MEAN_OF_POSITIVE_PART = "sphere_mean_of_positive_part"


@dataclass(frozen=True)
class SlopeWindow:
    start: float
    end: float
    slope: float


@dataclass
class OrderEstimate:
    """
    Least-squares slopes of ln(1 + P+) against ln r over sliding windows

    order_proxy is the largest slope among the last windows and stands in for
    the limsup that finite data cannot certify.
    """

    slope_windows: List[SlopeWindow]
    order_proxy: float
    radii_used: List[float]
    profile_kind: Optional[ProfileKind]
    profile: List[float] = field(default_factory=list)
    tail_windows: int = 3
    degenerate: bool = False

    @property
    def tail_slopes(self) -> List[float]:
        return [w.slope for w in self.slope_windows[-self.tail_windows:]]

    def to_rows(self) -> List[Dict[str, Any]]:
        """One row per radius; window_slope is the slope of the window starting there"""
        starts = {w.start: w.slope for w in self.slope_windows}
        rows = []
        for r, p in zip(self.radii_used, self.profile):
            rows.append({
                "r": r,
                "profile": p,
                "window_slope": starts.get(r, ""),
            })
        return rows

    def to_dict(self) -> Dict[str, Any]:
        return {
            "order_proxy": self.order_proxy,
            "profile_kind": self.profile_kind.value if self.profile_kind else None,
            "degenerate": self.degenerate,
            "radii": self.radii_used,
            "profile": self.profile,
            "windows": [
                {"start": w.start, "end": w.end, "slope": w.slope} for w in self.slope_windows
            ],
        }


def geometric_radii(
    first: Optional[float] = None,
    ratio: Optional[float] = None,
    count: Optional[int] = None
) -> List[float]:
    """
    Radii first * ratio^j for j = 1..count

    The defaults 2, 2 and 16 give 4, 8, ..., 2^17.
    """
    first = GROWTH_DEFAULTS["first_radius"] if first is None else float(first)
    ratio = GROWTH_DEFAULTS["ratio"] if ratio is None else float(ratio)
    count = GROWTH_DEFAULTS["count"] if count is None else int(count)
    if not (first > 0 and ratio > 1 and count >= 1):
        raise BadRadii(f"need first > 0, ratio > 1, count >= 1; got {first}, {ratio}, {count}")
    return [first * ratio ** j for j in range(1, count + 1)]


def _check_increasing(radii: Sequence[float]) -> np.ndarray:
    radii = np.asarray(radii, dtype=float)
    if (radii <= 0).any():
        raise BadRadii("radii must be positive")
    if len(radii) > 1 and not (np.diff(radii) > 0).all():
        raise NotIncreasing("radii must be strictly increasing")
    return radii


def _window_slope(x: np.ndarray, y: np.ndarray) -> float:
    if not np.isfinite(y).all():
        return math.inf
    return float(np.polyfit(x, y, 1)[0])


def order_from_profile(
    radii: Sequence[float],
    profile: Sequence[float],
    profile_kind: Optional[ProfileKind] = None,
    window: Optional[int] = None,
    tail_windows: Optional[int] = None,
    strict: bool = False
) -> OrderEstimate:
    """
    Estimate the growth order of a sampled profile P(r)

    Args:
        radii: Strictly increasing positive radii
        profile: Profile values; +inf makes the windows containing it infinite
        profile_kind: Kind recorded in the estimate
        window: Radii per window (default 6)
        tail_windows: Windows entering the proxy (default 3)
        strict: Raise instead of returning order 0 on an identically zero profile

    Returns:
        OrderEstimate: Window slopes and order proxy

    Raises:
        DegenerateProfile: If strict and P+ vanishes at every radius
    """
    window = GROWTH_DEFAULTS["window"] if window is None else int(window)
    tail_windows = GROWTH_DEFAULTS["tail_windows"] if tail_windows is None else int(tail_windows)
    r = _check_increasing(radii)
    p = np.asarray(profile, dtype=float)
    if len(p) != len(r):
        raise ValueError(f"{len(r)} radii but {len(p)} profile values")
    if len(r) < window + tail_windows - 1:
        raise BadRadii(f"need at least {window + tail_windows - 1} radii, got {len(r)}")

    positive = np.maximum(p, 0.0)
    if not (positive > 0).any():
        if strict:
            raise DegenerateProfile("profile vanishes at every radius")
        logger.warning("degenerate growth profile: P+ = 0 at every radius, order proxy set to 0")
        windows = [
            SlopeWindow(float(r[i]), float(r[i + window - 1]), 0.0)
            for i in range(len(r) - window + 1)
        ]
        return OrderEstimate(
            slope_windows=windows,
            order_proxy=0.0,
            radii_used=r.tolist(),
            profile_kind=profile_kind,
            profile=p.tolist(),
            tail_windows=tail_windows,
            degenerate=True
        )

    x = np.log(r)
    y = np.log1p(positive)
    windows = []
    for i in range(len(r) - window + 1):
        windows.append(SlopeWindow(
            start=float(r[i]),
            end=float(r[i + window - 1]),
            slope=_window_slope(x[i:i + window], y[i:i + window])
        ))
    proxy = max(w.slope for w in windows[-tail_windows:])
    return OrderEstimate(
        slope_windows=windows,
        order_proxy=proxy,
        radii_used=r.tolist(),
        profile_kind=profile_kind,
        profile=p.tolist(),
        tail_windows=tail_windows
    )


def _check_geometric(radii: np.ndarray) -> float:
    if len(radii) < GROWTH_DEFAULTS["min_radii"]:
        raise BadRadii(f"need at least {GROWTH_DEFAULTS['min_radii']} radii, got {len(radii)}")
    ratios = radii[1:] / radii[:-1]
    ratio = float(ratios[0])
    if not np.allclose(ratios, ratio, rtol=1e-6, atol=0.0):
        raise BadRadii("radii must form a geometric sequence")
    if not GROWTH_DEFAULTS["min_ratio"] <= ratio <= GROWTH_DEFAULTS["max_ratio"]:
        raise BadRadii(
            f"radius ratio {ratio:g} outside "
            f"[{GROWTH_DEFAULTS['min_ratio']}, {GROWTH_DEFAULTS['max_ratio']}]"
        )
    return ratio


def sample_profile(
    v: ScalarField,
    radii: Sequence[float],
    profile_kind: ProfileKind,
    scheme: Optional[QuadratureScheme] = None,
    sup_resolution: Optional[int] = None
) -> List[float]:
    """Profile values P(r) on centered spheres"""
    kind = ProfileKind(profile_kind)
    zero = origin(v.dim)
    for r in radii:
        if not v.sphere_in_domain(zero, r):
            raise DomainViolation(f"sphere S({r:g}) meets the excluded ball of {v.label}")
    if kind == ProfileKind.SPHERE_SUP:
        if sup_resolution is None and v.dim == 2:
            sup_resolution = GROWTH_DEFAULTS["sup_resolution_m2"]
        return [sphere_sup(v, zero, r, sup_resolution) for r in radii]
    v_plus = positive_part(v)
    return [sphere_mean(v_plus, zero, r, scheme).value for r in radii]


def estimate_order(
    v: ScalarField,
    radii: Optional[Sequence[float]] = None,
    profile_kind: ProfileKind = ProfileKind.SPHERE_SUP,
    strict: bool = False,
    scheme: Optional[QuadratureScheme] = None,
    sup_resolution: Optional[int] = None
) -> OrderEstimate:
    """
    Estimate the growth order of a field from its sphere profile

    Args:
        v: Field whose centered spheres at the radii lie in its domain
        radii: Geometric radii (at least 12, ratio in [1.2, 4]); defaults to geometric_radii()
        profile_kind: sphere_sup or sphere_mean_of_positive_part
        strict: Raise DegenerateProfile on an identically zero profile
        scheme: Sphere rule for mean profiles
        sup_resolution: Node count for sup profiles

    Returns:
        OrderEstimate: Window slopes, order proxy and the sampled profile
    """
    radii = _check_increasing(geometric_radii() if radii is None else radii)
    ratio = _check_geometric(radii)
    kind = ProfileKind(profile_kind)
    profile = sample_profile(v, radii.tolist(), kind, scheme, sup_resolution)
    estimate = order_from_profile(radii, profile, kind, strict=strict)
    logger.debug(
        f"order of {v.label}: proxy {estimate.order_proxy:.4g} from {len(radii)} radii "
        f"(ratio {ratio:g}, {kind.value})"
    )
    return estimate


def is_finite_order(est: OrderEstimate, ceiling: float) -> bool:
    """
    True when the order proxy stays below the ceiling and the tail slopes do not keep growing

    The last tail slope may exceed the first by at most 0.5.
    """
    if not ceiling > 0:
        raise ValueError(f"order ceiling must be positive, got {ceiling}")
    if est.degenerate:
        return True
    tail = est.tail_slopes
    if not all(math.isfinite(s) for s in tail):
        return False
    return est.order_proxy <= ceiling and tail[-1] <= tail[0] + GROWTH_DEFAULTS["slope_growth_allowance"]
