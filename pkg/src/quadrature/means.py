"""
Sphere and ball means, cap integrals and sphere suprema
球面与球体均值、球冠积分及球面上确界
"""

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..errors import BadRadii, DivergentIntegral, DomainViolation, InvalidGeometry
from ..fields.scalar_field import ScalarField
from ..geometry.constants import sphere_area
from ..geometry.shapes import (
    EXACT_UNION_CAPS,
    SphericalCap,
    as_point,
    cap_surface_measure,
    caps_on_sphere,
    circle_arcs,
    pairwise_disjoint,
    reduce_caps,
)
from .nodes import (
    cap_directions,
    cap_intersection_rule,
    cap_product_rule,
    circle_directions,
    composite_gauss,
    gaussian_directions,
    product_sphere_rule,
    quasi_uniform_directions,
)
from .schemes import (
    QUADRATURE_DEFAULTS,
    MeanEstimate,
    MeanMethod,
    QuadratureScheme,
    SchemeKind,
    sphere_rule,
)


MAX_CLIP_LEVELS = 6
ROUNDING_FLOOR = 1e-13
MC_CONFIDENCE = 3.0
ARC_ORDER = 8
SUP_RESOLUTION = {2: 8192, 3: 16384}
SUP_RESOLUTION_HIGH_DIM = 1 << 16
SPOT_FOCUSED_PROBES = 16


def _check_center(v: ScalarField, x: Sequence[float]) -> np.ndarray:
    center = np.asarray(as_point(x))
    if len(center) != v.dim:
        raise InvalidGeometry(f"center has {len(center)} coordinates, field lives in R^{v.dim}")
    return center


def _check_radius(r: float) -> float:
    if not (r > 0 and math.isfinite(r)):
        raise BadRadii(f"radius must be positive and finite, got {r}")
    return float(r)


def _check_sphere(v: ScalarField, x: Sequence[float], r: float) -> Tuple[np.ndarray, float]:
    center = _check_center(v, x)
    r = _check_radius(r)
    if not v.sphere_in_domain(center, r):
        raise DomainViolation(
            f"sphere S({center.tolist()}, {r:g}) leaves the domain of {v.describe()}"
        )
    return center, r


def _check_ball(v: ScalarField, x: Sequence[float], r: float) -> Tuple[np.ndarray, float]:
    center = _check_center(v, x)
    r = _check_radius(r)
    if not v.ball_in_domain(center, r):
        raise DomainViolation(
            f"ball B({center.tolist()}, {r:g}) leaves the domain of {v.describe()}"
        )
    return center, r


def _rounding_floor(values: np.ndarray) -> float:
    finite = values[np.isfinite(values)]
    scale = max(1.0, float(np.max(np.abs(finite)))) if finite.size else 1.0
    return ROUNDING_FLOOR * scale


def clipped_mean(
    values: np.ndarray,
    weights: Optional[np.ndarray],
    target_tolerance: float
) -> Tuple[float, int]:
    """
    Weighted sum of values that may contain -inf

    Values are clipped at -L for L = base * 10^k, k = 1..MAX_CLIP_LEVELS, until two
    successive clipped sums differ by less than 0.1 * target_tolerance.

    Args:
        values: Node values
        weights: Node weights, None for the plain mean
        target_tolerance: Tolerance the caller needs

    Returns:
        tuple: (sum, number of clipping levels used)

    Raises:
        DivergentIntegral: If the clipped sums do not stabilize
    """
    def reduce(vals: np.ndarray) -> float:
        return float(np.dot(weights, vals)) if weights is not None else float(np.mean(vals))

    if not np.isneginf(values).any():
        return reduce(values), 0

    finite = values[np.isfinite(values)]
    base = max(1.0, float(np.max(np.abs(finite)))) if finite.size else 1.0
    previous = None
    for level in range(1, MAX_CLIP_LEVELS + 1):
        current = reduce(np.maximum(values, -base * 10.0 ** level))
        if previous is not None and abs(current - previous) < 0.1 * target_tolerance:
            return current, level
        previous = current
    raise DivergentIntegral(
        f"{int(np.isneginf(values).sum())} quadrature node(s) hit -inf; "
        f"clipped means did not stabilize after {MAX_CLIP_LEVELS} levels"
    )


def _grid_rule(m: int, resolution: int) -> Tuple[np.ndarray, np.ndarray]:
    if m == 2:
        return circle_directions(resolution), np.full(resolution, 1.0 / resolution)
    if m == 3:
        return product_sphere_rule(resolution)
    raise InvalidGeometry(f"no deterministic sphere rule for m = {m}")


def _grid_sphere_mean(v: ScalarField, center: np.ndarray, r: float, rule: QuadratureScheme) -> MeanEstimate:
    m = v.dim
    fine_dirs, fine_w = _grid_rule(m, rule.resolution)
    coarse_dirs, coarse_w = _grid_rule(m, max(rule.resolution // 2, 4))
    fine_vals = v.evaluate(center + r * fine_dirs)
    coarse_vals = v.evaluate(center + r * coarse_dirs)
    fine, levels = clipped_mean(fine_vals, fine_w, rule.clip_target_tolerance)
    coarse, _ = clipped_mean(coarse_vals, coarse_w, rule.clip_target_tolerance)
    return MeanEstimate(
        value=fine,
        error_bound=abs(fine - coarse) + _rounding_floor(fine_vals),
        method=MeanMethod.DETERMINISTIC_GRID,
        samples=len(fine_vals) + len(coarse_vals),
        clip_levels=levels
    )


def _monte_carlo_values(
    v: ScalarField,
    n: int,
    seed: int,
    draw
) -> np.ndarray:
    """Evaluate v at n seeded points drawn chunk by chunk in a fixed order"""
    rng = np.random.default_rng(seed)
    chunk = QUADRATURE_DEFAULTS["monte_carlo_chunk"]
    values = np.empty(n)
    for start in range(0, n, chunk):
        count = min(chunk, n - start)
        values[start:start + count] = v.evaluate(draw(rng, count))
    return values


def _monte_carlo_estimate(values: np.ndarray, seed: int, tolerance: float, scale: float = 1.0) -> MeanEstimate:
    mean, levels = clipped_mean(values, None, tolerance)
    spread = np.where(np.isfinite(values), values, mean)
    std = float(np.std(spread, ddof=1)) if len(values) > 1 else 0.0
    error = MC_CONFIDENCE * std / math.sqrt(len(values)) + _rounding_floor(values)
    return MeanEstimate(
        value=scale * mean,
        error_bound=abs(scale) * error,
        method=MeanMethod.MONTE_CARLO,
        samples=len(values),
        seed=seed,
        clip_levels=levels
    )


def sphere_mean(
    v: ScalarField,
    x: Sequence[float],
    r: float,
    scheme: Optional[QuadratureScheme] = None
) -> MeanEstimate:
    """
    Mean of v over the sphere S(x, r) with respect to normalized surface measure

    Args:
        v: Field; the sphere must lie in its domain
        x: Center
        r: Radius > 0
        scheme: Sphere rule, the dimension default when None

    Returns:
        MeanEstimate: Value with error bound

    Raises:
        DomainViolation: If the sphere leaves the domain of v
        DivergentIntegral: If -inf node values make the mean unresolvable
    """
    center, r = _check_sphere(v, x, r)
    m = v.dim
    if m == 1:
        values = v.evaluate(np.array([[center[0] - r], [center[0] + r]]))
        return MeanEstimate(
            value=float(values.mean()),
            error_bound=_rounding_floor(values),
            method=MeanMethod.DETERMINISTIC_GRID,
            samples=2
        )
    rule = sphere_rule(m, scheme)
    if rule.is_monte_carlo:
        seed = rule.effective_seed
        values = _monte_carlo_values(
            v, rule.resolution, seed, lambda rng, n: center + r * gaussian_directions(rng, n, m)
        )
        return _monte_carlo_estimate(values, seed, rule.clip_target_tolerance)
    return _grid_sphere_mean(v, center, r, rule)


def _radial_sum(
    v: ScalarField,
    center: np.ndarray,
    radii: np.ndarray,
    weights: np.ndarray,
    rule: QuadratureScheme,
    inner_seed: Optional[int] = None
) -> Tuple[float, float, int]:
    """Weighted sum of sphere means at the given radii, with summed errors and samples"""
    means = np.empty(len(radii))
    errors = 0.0
    samples = 0
    for i, (t, w) in enumerate(zip(radii, weights)):
        inner = rule if inner_seed is None else rule.with_seed(inner_seed + i)
        estimate = sphere_mean(v, center, float(t), inner)
        means[i] = estimate.value
        errors += abs(w) * estimate.error_bound
        samples += estimate.samples
    total, _ = clipped_mean(means, weights, rule.clip_target_tolerance)
    return total, errors, samples


def ball_mean(
    v: ScalarField,
    x: Sequence[float],
    r: float,
    scheme: Optional[QuadratureScheme] = None
) -> MeanEstimate:
    """
    Mean of v over the closed ball B(x, r) with respect to normalized volume

    Deterministic rules integrate sphere means radially after the substitution
    u = (t / r)^m, which turns the mean into the plain integral of S_v(x, r u^{1/m})
    over [0, 1]. Monte Carlo rules sample the ball directly.
    """
    center, r = _check_ball(v, x, r)
    m = v.dim
    rule = sphere_rule(m, scheme)
    if rule.is_monte_carlo:
        seed = rule.effective_seed

        def draw(rng: np.random.Generator, n: int) -> np.ndarray:
            if m == 1:
                return center + r * rng.uniform(-1.0, 1.0, size=(n, 1))
            lengths = r * rng.uniform(size=(n, 1)) ** (1.0 / m)
            return center + lengths * gaussian_directions(rng, n, m)

        values = _monte_carlo_values(v, rule.resolution, seed, draw)
        return _monte_carlo_estimate(values, seed, rule.clip_target_tolerance)

    panels, order = rule.radial_panels, rule.radial_order
    u_fine, w_fine = composite_gauss(0.0, 1.0, panels, order)
    u_coarse, w_coarse = composite_gauss(0.0, 1.0, max(panels // 2, 1), order)
    fine, fine_err, fine_samples = _radial_sum(v, center, r * u_fine ** (1.0 / m), w_fine, rule)
    coarse, _, coarse_samples = _radial_sum(v, center, r * u_coarse ** (1.0 / m), w_coarse, rule)
    return MeanEstimate(
        value=fine,
        error_bound=fine_err + abs(fine - coarse),
        method=MeanMethod.DETERMINISTIC_GRID,
        samples=fine_samples + coarse_samples
    )


def ball_from_sphere_identity(
    v: ScalarField,
    x: Sequence[float],
    r: float,
    scheme: Optional[QuadratureScheme] = None
) -> MeanEstimate:
    """
    Ball mean through B = (m / r^m) * integral_0^r S_v(x, t) t^{m-1} dt

    Computed with a composite Gauss rule in t; used to cross-check ball_mean.
    Monte Carlo sphere rules run with fewer samples per radius and distinct seeds.
    """
    center, r = _check_ball(v, x, r)
    m = v.dim
    rule = sphere_rule(m, scheme)
    panels, order = rule.radial_panels, rule.radial_order
    inner_seed = None
    if rule.is_monte_carlo:
        per_radius = max(4096, rule.resolution // (panels * order))
        rule = rule.with_resolution(per_radius)
        inner_seed = rule.effective_seed + 1

    s_fine, w_fine = composite_gauss(0.0, 1.0, panels, order)
    s_coarse, w_coarse = composite_gauss(0.0, 1.0, max(panels // 2, 1), order)
    fine, fine_err, fine_samples = _radial_sum(
        v, center, r * s_fine, m * s_fine ** (m - 1) * w_fine, rule, inner_seed
    )
    coarse, _, coarse_samples = _radial_sum(
        v, center, r * s_coarse, m * s_coarse ** (m - 1) * w_coarse, rule,
        None if inner_seed is None else inner_seed + len(s_fine)
    )
    return MeanEstimate(
        value=fine,
        error_bound=fine_err + abs(fine - coarse),
        method=MeanMethod.MONTE_CARLO if inner_seed is not None else MeanMethod.DETERMINISTIC_GRID,
        samples=fine_samples + coarse_samples,
        seed=None if inner_seed is None else inner_seed - 1
    )


def _zero_estimate() -> MeanEstimate:
    return MeanEstimate(value=0.0, error_bound=0.0, method=MeanMethod.DETERMINISTIC_GRID, samples=0)


def _cap_sphere(v: ScalarField, cap: SphericalCap) -> Tuple[np.ndarray, float]:
    if cap.dim != v.dim:
        raise InvalidGeometry(f"cap lives in R^{cap.dim}, field in R^{v.dim}")
    return _check_sphere(v, cap.sphere.center, cap.sphere.radius)


def _arc_integral(v: ScalarField, center: np.ndarray, r: float, start: float, end: float,
                  panels: int, tolerance: float) -> Tuple[float, np.ndarray, int]:
    angles, weights = composite_gauss(start, end, panels, ARC_ORDER)
    values = v.evaluate(center + r * np.column_stack([np.cos(angles), np.sin(angles)]))
    total, _ = clipped_mean(values, r * weights, tolerance)
    return total, values, len(values)


def cap_integral(
    v: ScalarField,
    cap: SphericalCap,
    scheme: Optional[QuadratureScheme] = None
) -> MeanEstimate:
    """
    Integral of v over an open cap with respect to unnormalized surface measure

    m = 1 uses counting measure, m = 2 a composite Gauss rule on the arc,
    m = 3 a cap-adapted product rule, m >= 4 Monte Carlo inside the cap.
    """
    center, r = _cap_sphere(v, cap)
    m = v.dim
    if cap.half_angle == 0.0:
        return _zero_estimate()
    if m == 1:
        directions = np.array([[1.0], [-1.0]])
        inside = cap.contains_directions(directions)
        values = v.evaluate(center + r * directions[inside])
        return MeanEstimate(
            value=float(values.sum()),
            error_bound=_rounding_floor(values),
            method=MeanMethod.DETERMINISTIC_GRID,
            samples=int(inside.sum())
        )

    rule = sphere_rule(m, scheme)
    tolerance = rule.clip_target_tolerance
    if m == 2 and not rule.is_monte_carlo:
        middle = math.atan2(cap.axis[1], cap.axis[0])
        start, end = middle - cap.half_angle, middle + cap.half_angle
        panels = max(rule.resolution // ARC_ORDER, 2)
        fine, values, fine_n = _arc_integral(v, center, r, start, end, panels, tolerance)
        coarse, _, coarse_n = _arc_integral(v, center, r, start, end, max(panels // 2, 1), tolerance)
        return MeanEstimate(
            value=fine,
            error_bound=abs(fine - coarse) + cap_surface_measure(cap) * _rounding_floor(values),
            method=MeanMethod.DETERMINISTIC_GRID,
            samples=fine_n + coarse_n
        )

    if m == 3 and not rule.is_monte_carlo:
        axis = np.asarray(cap.axis)
        estimates = []
        for resolution in (rule.resolution, max(rule.resolution // 2, 4)):
            directions, weights = cap_product_rule(axis, cap.half_angle, resolution)
            values = v.evaluate(center + r * directions)
            total, _ = clipped_mean(values, r ** 2 * weights, tolerance)
            estimates.append((total, values))
        (fine, values), (coarse, coarse_values) = estimates
        return MeanEstimate(
            value=fine,
            error_bound=abs(fine - coarse) + cap_surface_measure(cap) * _rounding_floor(values),
            method=MeanMethod.DETERMINISTIC_GRID,
            samples=len(values) + len(coarse_values)
        )

    seed = rule.effective_seed
    n = rule.resolution if rule.is_monte_carlo else QUADRATURE_DEFAULTS["monte_carlo_samples"]
    axis = np.asarray(cap.axis)
    values = _monte_carlo_values(
        v, n, seed, lambda rng, k: center + r * cap_directions(rng, axis, cap.half_angle, k)
    )
    return _monte_carlo_estimate(values, seed, tolerance, scale=cap_surface_measure(cap))


def _intersection_integral(v: ScalarField, center: np.ndarray, r: float, caps: Sequence[SphericalCap],
                           resolution: int, tolerance: float) -> Tuple[float, np.ndarray]:
    directions, weights = cap_intersection_rule([(np.asarray(c.axis), c.half_angle) for c in caps], resolution)
    if len(weights) == 0:
        return 0.0, np.empty(0)
    values = v.evaluate(center + r * directions)
    total, _ = clipped_mean(values, r ** 2 * weights, tolerance)
    return total, values


def _inclusion_exclusion_integral(
    v: ScalarField,
    center: np.ndarray,
    r: float,
    caps: Sequence[SphericalCap],
    rule: QuadratureScheme
) -> MeanEstimate:
    """Integral over a union of up to three caps on S^2 as a signed sum over intersections"""
    tolerance = rule.clip_target_tolerance
    totals = []
    samples = 0
    floor = 0.0
    for resolution in (rule.resolution, max(rule.resolution // 2, 4)):
        total = 0.0
        for size in range(1, len(caps) + 1):
            sign = 1.0 if size % 2 else -1.0
            for subset in combinations(caps, size):
                part, values = _intersection_integral(v, center, r, subset, resolution, tolerance)
                total += sign * part
                samples += len(values)
                if len(values) and resolution == rule.resolution:
                    floor += sphere_area(3, r) * _rounding_floor(values)
        totals.append(total)
    fine, coarse = totals
    return MeanEstimate(
        value=fine,
        error_bound=abs(fine - coarse) + floor,
        method=MeanMethod.DETERMINISTIC_GRID,
        samples=samples
    )


def union_integral(
    v: ScalarField,
    caps: Sequence[SphericalCap],
    scheme: Optional[QuadratureScheme] = None
) -> MeanEstimate:
    """
    Integral of v over a finite union of caps on one sphere

    Overlaps are counted once: arcs are merged on the circle, nested caps are
    dropped and disjoint families are summed cap by cap. Up to three overlapping
    caps on S^2 are integrated by inclusion-exclusion over their intersections;
    other overlapping families fall back to Monte Carlo over the whole sphere.
    """
    sphere = caps_on_sphere(caps)
    if sphere is None:
        return _zero_estimate()
    if sphere.dim != v.dim:
        raise InvalidGeometry(f"caps live in R^{sphere.dim}, field in R^{v.dim}")
    center, r = _check_sphere(v, sphere.center, sphere.radius)
    m = v.dim

    if m == 1:
        directions = np.array([[1.0], [-1.0]])
        covered = np.zeros(2, dtype=bool)
        for cap in caps:
            covered |= cap.contains_directions(directions)
        values = v.evaluate(center + r * directions[covered])
        return MeanEstimate(
            value=float(values.sum()),
            error_bound=_rounding_floor(values),
            method=MeanMethod.DETERMINISTIC_GRID,
            samples=int(covered.sum())
        )

    rule = sphere_rule(m, scheme)
    if m == 2 and not rule.is_monte_carlo:
        pieces = []
        for start, end in circle_arcs(caps):
            middle = 0.5 * (start + end)
            pieces.append(SphericalCap(
                sphere=sphere,
                axis=(math.cos(middle), math.sin(middle)),
                half_angle=min(math.pi, 0.5 * (end - start))
            ))
        return _sum_estimates([cap_integral(v, piece, rule) for piece in pieces])

    kept = reduce_caps(caps)
    whole = [cap for cap in kept if cap.half_angle == math.pi]
    if whole:
        return cap_integral(v, whole[0], rule)
    if pairwise_disjoint(kept):
        return _sum_estimates([cap_integral(v, cap, rule) for cap in kept])
    if m == 3 and not rule.is_monte_carlo and len(kept) <= EXACT_UNION_CAPS:
        return _inclusion_exclusion_integral(v, center, r, kept, rule)

    logger.debug(f"union of {len(kept)} overlapping caps in R^{m}: Monte Carlo integral")
    seed = rule.effective_seed
    n = rule.resolution if rule.is_monte_carlo else QUADRATURE_DEFAULTS["monte_carlo_samples"]
    rng = np.random.default_rng(seed)
    directions = gaussian_directions(rng, n, m)
    covered = np.zeros(n, dtype=bool)
    for cap in kept:
        covered |= cap.contains_directions(directions)
    values = np.zeros(n)
    if covered.any():
        values[covered] = v.evaluate(center + r * directions[covered])
    return _monte_carlo_estimate(values, seed, rule.clip_target_tolerance, scale=sphere.area)


def _sum_estimates(estimates: List[MeanEstimate]) -> MeanEstimate:
    if not estimates:
        return _zero_estimate()
    methods = {e.method for e in estimates}
    return MeanEstimate(
        value=float(sum(e.value for e in estimates)),
        error_bound=float(sum(e.error_bound for e in estimates)),
        method=MeanMethod.MONTE_CARLO if MeanMethod.MONTE_CARLO in methods else MeanMethod.DETERMINISTIC_GRID,
        samples=sum(e.samples for e in estimates),
        seed=next((e.seed for e in estimates if e.seed is not None), None)
    )


def sphere_sup(
    v: ScalarField,
    x: Sequence[float],
    r: float,
    resolution: Optional[int] = None,
    seed: int = 0
) -> float:
    """
    Approximate supremum of v over S(x, r) on a quasi-uniform node set

    Returns:
        float: Largest node value; -inf only if v is -inf at every node
    """
    center, r = _check_sphere(v, x, r)
    m = v.dim
    if m == 1:
        values = v.evaluate(np.array([[center[0] - r], [center[0] + r]]))
        return float(values.max())
    n = resolution or SUP_RESOLUTION.get(m, SUP_RESOLUTION_HIGH_DIM)
    values = v.evaluate(center + r * quasi_uniform_directions(m, n, seed))
    return float(values.max())


@dataclass
class SubMeanSpotCheck:
    """Outcome of a randomized sub-mean-value check"""

    passed: bool
    probes: int
    skipped: int = 0
    worst_slack: float = math.inf
    failures: List[Dict] = field(default_factory=list)


def _spot_scheme(m: int, seed: int) -> Optional[QuadratureScheme]:
    if m == 1:
        return None
    if m == 2:
        return QuadratureScheme(SchemeKind.UNIFORM_CIRCLE, 256, seed)
    if m == 3:
        return QuadratureScheme(SchemeKind.PRODUCT_GAUSS_SPHERE, 32, seed)
    return QuadratureScheme(SchemeKind.MONTE_CARLO_SPHERE, 4096, seed)


def _spot_centers(v: ScalarField, rng: np.random.Generator, probes: int, max_radius: float,
                  region_radius: float, focused: int) -> List[Tuple[np.ndarray, float]]:
    """Random centers of the region followed by centers next to poles and seams"""
    m = v.dim

    def directions(n: int) -> np.ndarray:
        if m == 1:
            return rng.choice([-1.0, 1.0], size=(n, 1))
        return gaussian_directions(rng, n, m)

    inner = 0.0 if v.exterior_radius is None else v.exterior_radius + 2.0 * max_radius + 1e-9
    outer = max(region_radius, inner + 1.0)
    centers = []
    for direction in directions(probes):
        centers.append((rng.uniform(inner, outer) * direction, float(rng.uniform(1e-3, max_radius))))
    for pole in v.poles:
        for direction in directions(focused):
            rho = float(rng.uniform(0.5 * max_radius, max_radius))
            centers.append((np.asarray(pole) + 4.0 * rho * direction, rho))
    for seam in v.seams:
        for direction in directions(focused):
            rho = float(rng.uniform(0.5 * max_radius, max_radius))
            for offset in (0.5 * rho, -0.5 * rho):
                if seam + offset > 0:
                    centers.append(((seam + offset) * direction, rho))
    return centers


def spot_check_sub_mean_value(
    v: ScalarField,
    probes: int = 100,
    seed: int = 0,
    max_radius: float = 0.1,
    region_radius: float = 3.0,
    tolerance: float = 1e-8,
    focused: int = SPOT_FOCUSED_PROBES
) -> SubMeanSpotCheck:
    """
    Test v(x) <= S_v(x, rho) at seeded random centers and small radii

    Centers lie within region_radius of the origin (beyond the excluded ball when
    the field lives on an exterior domain); radii are drawn from [1e-3, max_radius].
    Each declared pole and seam adds `focused` centers next to it, on both sides of
    a seam. Centers where v = -inf satisfy the inequality trivially and are skipped,
    as are centers whose closed ball leaves the domain.
    """
    m = v.dim
    rng = np.random.default_rng(seed)
    centers = _spot_centers(v, rng, probes, max_radius, region_radius, focused)
    report = SubMeanSpotCheck(passed=True, probes=len(centers))
    for i, (center, rho) in enumerate(centers):
        if not v.ball_in_domain(center, rho):
            report.skipped += 1
            continue
        at_center = v.value_at(center)
        if at_center == -math.inf:
            report.skipped += 1
            continue
        estimate = sphere_mean(v, center, rho, _spot_scheme(m, seed + i))
        slack = estimate.value - at_center
        report.worst_slack = min(report.worst_slack, slack)
        if slack < -(tolerance + estimate.error_bound):
            report.passed = False
            report.failures.append({
                "center": center.tolist(),
                "radius": rho,
                "value": at_center,
                "sphere_mean": estimate.value,
                "slack": slack
            })
    if report.failures:
        logger.warning(
            f"sub-mean-value spot check failed at {len(report.failures)} of {report.probes} centers of {v.label}"
        )
    return report
