"""
Verification of the mean-value inequality chains
均值不等式链的数值验证
"""

import math
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from ..errors import BadRadii, DomainViolation, InvalidGeometry, NegativeField, NotHarmonic
from ..fields.scalar_field import FieldClass, ScalarField, positive_part
from ..geometry.constants import sharp_mean_constant
from ..geometry.shapes import SphericalCap, as_point, cap_union_measure, caps_on_sphere, origin
from ..quadrature.means import ball_mean, sphere_mean, union_integral
from ..quadrature.nodes import gaussian_directions
from ..quadrature.schemes import MeanEstimate, MeanMethod, QuadratureScheme
from .factors import (
    half_gap_factor,
    harnack_factor,
    harnack_shell_factor,
    limit_factor,
    prop2_branches,
    shell_bound_factor,
    volume_ratio_factor,
)
from .report import InequalityReport, make_report


NEGATIVITY_TOLERANCE = 1e-10
HARNACK_SPOT_POINTS = 256
LIMIT_SURROGATES = (1e-2, 1e-3)
POINT_TOLERANCE = 1e-12


def _point_value(v: ScalarField, x: np.ndarray) -> MeanEstimate:
    """A point value dressed as an exact estimate"""
    value = v.value_at(x)
    scale = max(1.0, abs(value)) if math.isfinite(value) else 1.0
    return MeanEstimate(
        value=value,
        error_bound=1e-13 * scale,
        method=MeanMethod.DETERMINISTIC_GRID,
        samples=1
    )


def _require_ball(v: ScalarField, R: float, closed: bool = True) -> None:
    if not (R > 0 and math.isfinite(R)):
        raise BadRadii(f"radius R must be positive and finite, got {R}")
    if not v.ball_in_domain(origin(v.dim), R, closed=closed):
        kind = "closed" if closed else "open"
        raise DomainViolation(f"{kind} ball B({R:g}) is not inside the domain of {v.label}")


def check_mean_chain(
    v: ScalarField,
    R: float,
    scheme: Optional[QuadratureScheme] = None,
    x: Optional[Sequence[float]] = None
) -> List[InequalityReport]:
    """
    Check v(x) <= S_v(x, a_m R) <= B_v(x, R) <= S_v(x, R)

    Args:
        v: Subharmonic field whose closed ball B(x, R) lies in the domain
        R: Radius
        scheme: Sphere rule
        x: Center, the origin when None

    Returns:
        list: Three reports, one per link
    """
    m = v.dim
    center = np.asarray(as_point(x if x is not None else origin(m)))
    if not (R > 0 and math.isfinite(R)):
        raise BadRadii(f"radius R must be positive and finite, got {R}")
    if not v.ball_in_domain(center, R):
        raise DomainViolation(f"closed ball B({center.tolist()}, {R:g}) is not inside the domain")

    a_m = sharp_mean_constant(m)
    at_center = _point_value(v, center)
    inner = sphere_mean(v, center, a_m * R, scheme)
    ball = ball_mean(v, center, R, scheme)
    outer = sphere_mean(v, center, R, scheme)
    inputs = {"m": m, "R": R, "x": center.tolist(), "a_m": a_m}
    chain = (at_center.value, inner.value, ball.value, outer.value)
    logger.debug(f"mean chain of {v.label} at R={R:g}: {chain}")
    return [
        make_report("chain.center_vs_sharp_sphere", at_center, inner, inputs),
        make_report("chain.sharp_sphere_vs_ball", inner, ball, inputs),
        make_report("chain.ball_vs_sphere", ball, outer, inputs),
    ]


def _check_probes(probes: Sequence[Sequence[float]], m: int, r: float) -> List[np.ndarray]:
    points = []
    for probe in probes:
        point = np.asarray(as_point(probe))
        if len(point) != m:
            raise InvalidGeometry(f"probe {point.tolist()} does not live in R^{m}")
        if np.linalg.norm(point) > r + POINT_TOLERANCE:
            raise DomainViolation(f"probe {point.tolist()} lies outside the closed ball B({r:g})")
        points.append(point)
    return points


def check_prop1(
    v: ScalarField,
    r: float,
    R: float,
    probe_points: Sequence[Sequence[float]],
    t: Optional[float] = None,
    scheme: Optional[QuadratureScheme] = None
) -> List[InequalityReport]:
    """
    Check the upper bounds for v on B(r) in terms of the positive part on S(R)

    For each probe x with |x| <= r the reports cover, in order:
    v(x) <= S_v(x, a_m (R - r)); the positivity links through S_{v+} and B_{v+}
    around x; B_{v+}(x, R - r) <= volume ratio * B_{v+}(R) and B_{v+}(R) <= S_{v+}(R);
    the shell link S_v(x, t) <= Harnack(r + t) * S_{v+}(R); v(x) bounded with the
    shell factor at t; the half-gap links; the limit bound; and limit surrogates
    S_v(x, t') <= limit factor * S_{v+}(R) at t' = 1e-2 (R - r) and 1e-3 (R - r).

    Args:
        v: Subharmonic field on a neighborhood of the closed ball B(R)
        r: Inner radius, 0 < r < R
        R: Outer radius
        probe_points: Points of the closed ball B(r)
        t: Shell width in (0, R - r), (R - r) / 4 when None
        scheme: Sphere rule

    Returns:
        list: Reports for every probe
    """
    if not (0 < r < R):
        raise BadRadii(f"need 0 < r < R, got r = {r}, R = {R}")
    gap = R - r
    t = gap / 4.0 if t is None else float(t)
    if not 0 < t < gap:
        raise BadRadii(f"need 0 < t < R - r, got t = {t}")
    _require_ball(v, R)
    m = v.dim
    points = _check_probes(probe_points, m, r)

    a_m = sharp_mean_constant(m)
    v_plus = positive_part(v)
    zero = origin(m)
    outer_plus = sphere_mean(v_plus, zero, R, scheme)
    ball_plus = ball_mean(v_plus, zero, R, scheme)

    reports: List[InequalityReport] = [
        make_report("prop1.positive_ball_vs_sphere", ball_plus, outer_plus, {"m": m, "R": R})
    ]
    for x in points:
        inputs = {"m": m, "r": r, "R": R, "t": t, "x": x.tolist()}
        at_x = _point_value(v, x)
        sharp = sphere_mean(v, x, a_m * gap, scheme)
        sharp_plus = sphere_mean(v_plus, x, a_m * gap, scheme)
        local_ball_plus = ball_mean(v_plus, x, gap, scheme)
        shell = sphere_mean(v, x, t, scheme)
        half = sphere_mean(v, x, gap / 2.0, scheme)

        reports.append(make_report("prop1.point_vs_sharp_sphere", at_x, sharp, inputs))
        reports.append(make_report("prop1.sharp_sphere_vs_positive", sharp, sharp_plus, inputs))
        reports.append(make_report("prop1.positive_sphere_vs_ball", sharp_plus, local_ball_plus, inputs))
        reports.append(make_report(
            "prop1.volume_ratio", local_ball_plus, ball_plus, inputs,
            rhs_factor=volume_ratio_factor(m, r, R)
        ))
        reports.append(make_report(
            "prop1.shell_harnack", shell, outer_plus, inputs,
            rhs_factor=harnack_shell_factor(m, r, t, R)
        ))
        reports.append(make_report(
            "prop1.point_vs_shell_bound", at_x, outer_plus, inputs,
            rhs_factor=shell_bound_factor(m, r, t, R)
        ))
        reports.append(make_report(
            "prop1.half_gap_sphere", half, outer_plus, inputs,
            rhs_factor=half_gap_factor(m, r, R)
        ))
        reports.append(make_report(
            "prop1.point_vs_half_gap_bound", at_x, outer_plus, inputs,
            rhs_factor=half_gap_factor(m, r, R)
        ))
        reports.append(make_report(
            "prop1.point_vs_limit_bound", at_x, outer_plus, inputs,
            rhs_factor=limit_factor(m, r, R)
        ))
        for fraction in LIMIT_SURROGATES:
            small = fraction * gap
            reports.append(make_report(
                f"prop1.limit_surrogate[{fraction:g}]",
                sphere_mean(v, x, small, scheme), outer_plus, dict(inputs, t_surrogate=small),
                rhs_factor=limit_factor(m, r, R)
            ))
    return reports


def check_harnack(
    h: ScalarField,
    R: float,
    probes: Sequence[Sequence[float]],
    seed: int = 0
) -> List[InequalityReport]:
    """
    Check h(x') <= harnack_factor(m, |x'|, R) * h(0) for a nonnegative harmonic h

    Nonnegativity is spot-checked at the probes and at 256 seeded points of B(R).

    Raises:
        NotHarmonic: If h is not tagged harmonic
        NegativeField: If a spot check finds h < -1e-10
    """
    if h.class_tag != FieldClass.HARMONIC:
        raise NotHarmonic(f"Harnack check needs a harmonic field, got {h.class_tag.value}")
    _require_ball(h, R, closed=False)
    m = h.dim
    points = []
    for probe in probes:
        point = np.asarray(as_point(probe))
        if len(point) != m or not np.linalg.norm(point) < R:
            raise DomainViolation(f"probe {point.tolist()} is not strictly inside B({R:g})")
        points.append(point)

    rng = np.random.default_rng(seed)
    if m == 1:
        spots = rng.uniform(-R, R, size=(HARNACK_SPOT_POINTS, 1))
    else:
        spots = gaussian_directions(rng, HARNACK_SPOT_POINTS, m) * (
            R * rng.uniform(size=(HARNACK_SPOT_POINTS, 1)) ** (1.0 / m)
        )
    sample = np.vstack([spots] + [p.reshape(1, -1) for p in points]) if points else spots
    values = h.evaluate(sample)
    if values.min() < -NEGATIVITY_TOLERANCE:
        worst = int(np.argmin(values))
        raise NegativeField(f"h = {values[worst]:.3g} < 0 at {sample[worst].tolist()}")

    at_origin = _point_value(h, np.zeros(m))
    reports = []
    for point in points:
        modulus = float(np.linalg.norm(point))
        reports.append(make_report(
            "harnack", _point_value(h, point), at_origin,
            {"m": m, "R": R, "x": point.tolist(), "modulus": modulus},
            rhs_factor=harnack_factor(m, modulus, R)
        ))
    return reports


def check_prop2(
    v: ScalarField,
    cap_union: Sequence[SphericalCap],
    R: float,
    scheme: Optional[QuadratureScheme] = None,
    rhs_scale: float = 1.0,
    seed: int = 0
) -> InequalityReport:
    """
    Check the cap bound for the integral of v over a union of caps E on S(r)

    integral_E v <= min{4, 1 + r/(R-r)} * (1 + (R+r)/(R-r))^{m-1} * sigma_r(E) * S_{v+}(R)

    Args:
        v: Subharmonic field on a neighborhood of the closed ball B(R)
        cap_union: Caps on one sphere S(r) centered at the origin, r < R
        R: Outer radius
        scheme: Sphere rule
        rhs_scale: Multiplier applied to the right side (1 in normal runs)
        seed: Seed for the Monte Carlo union measure

    Returns:
        InequalityReport: The single report; inputs carry both branches of the minimum
    """
    sphere = caps_on_sphere(list(cap_union))
    if sphere is None:
        raise InvalidGeometry("the exceptional set needs at least one cap")
    if any(c != 0.0 for c in sphere.center):
        raise InvalidGeometry(f"caps must lie on a sphere centered at the origin, got {sphere.center}")
    r = sphere.radius
    if not r < R:
        raise BadRadii(f"need 0 < r < R, got r = {r}, R = {R}")
    _require_ball(v, R)
    m = v.dim

    lhs = union_integral(v, cap_union, scheme)
    measure = cap_union_measure(cap_union, seed=seed)
    outer_plus = sphere_mean(positive_part(v), origin(m), R, scheme)
    branches = prop2_branches(m, r, R)
    factor = branches["factor"] * rhs_scale

    rhs_value = factor * measure.value * outer_plus.value
    rhs_error = factor * (
        measure.error_bound * outer_plus.value + measure.value * outer_plus.error_bound
        + measure.error_bound * outer_plus.error_bound
    )
    inputs = {
        "m": m,
        "r": r,
        "R": R,
        "caps": len(cap_union),
        "sigma_E": measure.value,
        "sigma_method": measure.method,
        "positive_sphere_mean": outer_plus.value,
        "rhs_scale": rhs_scale,
        **{k: branches[k] for k in ("constant_branch", "ratio_branch", "active")},
    }
    rhs = MeanEstimate(
        value=rhs_value,
        error_bound=rhs_error,
        method=outer_plus.method,
        samples=outer_plus.samples
    )
    return make_report("prop2.cap_bound", lhs, rhs, inputs)
