"""
Command dispatch for run configurations
运行配置的命令分发
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from ..fields.catalog import build_field
from ..fields.scalar_field import ScalarField
from ..geometry.shapes import SphereSpec, SphericalCap, as_point, origin
from ..growth.order import estimate_order, geometric_radii, is_finite_order
from ..inequalities.checks import check_harnack, check_mean_chain, check_prop1, check_prop2
from ..inequalities.report import InequalityReport
from ..liouville.audit import AuditStatus, run_liouville_audit
from ..liouville.exceptional import ExceptionalSet
from ..liouville.sequences import RadiiSequence, thin_to_ratio_window
from ..liouville.slices import audit_complex_slices
from ..quadrature.means import (
    ball_from_sphere_identity,
    ball_mean,
    cap_integral,
    sphere_mean,
    sphere_sup,
)
from ..quadrature.schemes import QUADRATURE_DEFAULTS, QuadratureScheme, SchemeKind, default_scheme
from .config import GeometrySpec, RunConfig, SchemeSpec


DEFAULT_AUDIT_COUNT = 8


@dataclass
class RunOutcome:
    """Rows and summary of one run"""

    command: str
    rows: List[Dict[str, Any]]
    passed: bool = True
    status: Optional[str] = None
    summary: Dict[str, Any] = field(default_factory=dict)
    reports: List[InequalityReport] = field(default_factory=list)


def build_scheme(spec: Optional[SchemeSpec], m: int, seed: int) -> QuadratureScheme:
    """Quadrature scheme of a run; the dimension default when unspecified"""
    if spec is None:
        return default_scheme(m, seed)
    default_resolution = {
        SchemeKind.UNIFORM_CIRCLE: QUADRATURE_DEFAULTS["m2_resolution"],
        SchemeKind.PRODUCT_GAUSS_SPHERE: QUADRATURE_DEFAULTS["m3_resolution"],
        SchemeKind.MONTE_CARLO_SPHERE: QUADRATURE_DEFAULTS["monte_carlo_samples"],
        SchemeKind.RADIAL_COMPOSITE: QUADRATURE_DEFAULTS["radial_panels"],
    }[spec.kind]
    options = {}
    if spec.radial_panels is not None:
        options["radial_panels"] = spec.radial_panels
    if spec.radial_order is not None:
        options["radial_order"] = spec.radial_order
    return QuadratureScheme(
        kind=spec.kind,
        resolution=spec.resolution or default_resolution,
        seed=spec.seed if spec.seed is not None else seed,
        **options
    )


def radii_sequence(geometry: GeometrySpec) -> RadiiSequence:
    """Audit radii from explicit radii (optionally thinned) or a geometric rule"""
    if geometry.radii:
        if geometry.thin:
            return thin_to_ratio_window(geometry.radii, geometry.q, geometry.Q)
        ratios = [b / a for a, b in zip(geometry.radii, geometry.radii[1:])]
        upper = geometry.Q if geometry.Q is not None else max([geometry.q] + ratios)
        return RadiiSequence(tuple(geometry.radii), geometry.q, upper)
    ratio = geometry.ratio or 2.0
    radii = geometric_radii(geometry.first_radius, ratio, geometry.count or DEFAULT_AUDIT_COUNT)
    return RadiiSequence(tuple(radii), geometry.q or ratio, geometry.Q or ratio)


def exceptional_set(dim: int, geometry: GeometrySpec, radii) -> ExceptionalSet:
    if geometry.shrinking_caps:
        return ExceptionalSet.shrinking(dim, radii, axis=geometry.cap_axis)
    if geometry.half_angles is None:
        return ExceptionalSet.empty(dim, radii)
    return ExceptionalSet.from_half_angles(dim, radii, geometry.half_angles, axis=geometry.cap_axis)


def _report_outcome(command: str, reports: List[InequalityReport]) -> RunOutcome:
    failed = [r.label for r in reports if not r.passed]
    return RunOutcome(
        command=command,
        rows=[r.to_row() for r in reports],
        passed=not failed,
        summary={"checks": len(reports), "failed": failed},
        reports=reports
    )


def _run_mean(cfg: RunConfig, v: ScalarField, scheme: QuadratureScheme) -> RunOutcome:
    geometry = cfg.geometry
    center = as_point(geometry.center if geometry.center is not None else origin(v.dim))
    radii = geometry.radii or [geometry.r]
    rows = []
    for r in radii:
        for quantity in geometry.quantities:
            if quantity == "sup":
                rows.append({
                    "quantity": "sup", "r": r, "value": sphere_sup(v, center, r),
                    "error_bound": "", "method": "grid_max", "samples": "", "seed": "",
                    "center": list(center),
                })
                continue
            if quantity == "cap":
                for cap_spec in geometry.caps:
                    cap = SphericalCap(SphereSpec(center, r), cap_spec.axis, cap_spec.half_angle)
                    estimate = cap_integral(v, cap, scheme)
                    rows.append(dict(estimate.to_dict(), quantity="cap", r=r, center=list(center),
                                     half_angle=cap_spec.half_angle))
                continue
            compute: Callable = {
                "sphere": sphere_mean,
                "ball": ball_mean,
                "identity": ball_from_sphere_identity,
            }[quantity]
            estimate = compute(v, center, r, scheme)
            rows.append(dict(estimate.to_dict(), quantity=quantity, r=r, center=list(center)))
    for row in rows:
        if row["value"] == -math.inf:
            row["value"] = "-inf"
    return RunOutcome(command="mean", rows=rows, summary={"values": len(rows)})


def _run_order(cfg: RunConfig, v: ScalarField, scheme: QuadratureScheme) -> RunOutcome:
    geometry = cfg.geometry
    radii = geometry.radii or geometric_radii(geometry.first_radius, geometry.ratio, geometry.count)
    estimate = estimate_order(v, radii, geometry.profile_kind, scheme=scheme)
    summary: Dict[str, Any] = {"order_proxy": estimate.order_proxy, "degenerate": estimate.degenerate}
    if geometry.order_ceiling is not None:
        summary["finite_order"] = is_finite_order(estimate, geometry.order_ceiling)
    return RunOutcome(command="order", rows=estimate.to_rows(), summary=summary)


def _run_audit(cfg: RunConfig, v: ScalarField, scheme: QuadratureScheme) -> RunOutcome:
    geometry = cfg.geometry
    seq = radii_sequence(geometry)
    E = exceptional_set(v.dim, geometry, seq.radii)
    verdict = run_liouville_audit(
        v, E, seq, geometry.M, geometry.order_ceiling, scheme, cfg.effective_seed
    )
    return RunOutcome(
        command="audit",
        rows=verdict.to_rows(),
        passed=verdict.status != AuditStatus.RECURRENCE_VIOLATED,
        status=verdict.status.value,
        summary=verdict.to_dict()
    )


def _run_slices(cfg: RunConfig, v: ScalarField, scheme: Optional[QuadratureScheme]) -> RunOutcome:
    geometry = cfg.geometry
    seq = radii_sequence(geometry)
    E = exceptional_set(2, geometry, seq.radii)
    result = audit_complex_slices(
        v, geometry.directions, (E, seq, geometry.M), geometry.order_ceiling, scheme, cfg.effective_seed
    )
    rows = []
    for direction, verdict, constant in zip(result.directions, result.verdicts, result.slice_constants):
        rows.append({
            "direction": direction,
            "status": verdict.status.value,
            "constant": "" if constant is None else constant,
            "order_proxy": "" if verdict.order is None else verdict.order.order_proxy,
            "M": verdict.sup_estimates["M"],
        })
    return RunOutcome(
        command="slices",
        rows=rows,
        passed=result.status != AuditStatus.RECURRENCE_VIOLATED,
        status=result.status.value,
        summary=result.to_dict()
    )


def run_command(cfg: RunConfig) -> RunOutcome:
    """
    Build the field and geometry of a run configuration and execute its command

    Args:
        cfg: Validated run configuration

    Returns:
        RunOutcome: Report rows, pass flag and summary
    """
    v = build_field(cfg.field.as_spec())
    geometry = cfg.geometry
    seed = cfg.effective_seed

    if cfg.command == "slices":
        scheme = build_scheme(cfg.scheme, 2, seed)
        return _run_slices(cfg, v, scheme)

    scheme = build_scheme(cfg.scheme, v.dim, seed)
    if cfg.command == "mean":
        return _run_mean(cfg, v, scheme)
    if cfg.command == "chain":
        return _report_outcome("chain", check_mean_chain(v, geometry.R, scheme, geometry.center))
    if cfg.command == "prop1":
        return _report_outcome(
            "prop1", check_prop1(v, geometry.r, geometry.R, geometry.probes, geometry.t, scheme)
        )
    if cfg.command == "prop2":
        sphere = SphereSpec(origin(v.dim), geometry.r)
        caps = [SphericalCap(sphere, c.axis, c.half_angle) for c in geometry.caps]
        report = check_prop2(v, caps, geometry.R, scheme, cfg.debug.rhs_scale, seed)
        return _report_outcome("prop2", [report])
    if cfg.command == "harnack":
        return _report_outcome("harnack", check_harnack(v, geometry.R, geometry.probes, seed))
    if cfg.command == "order":
        return _run_order(cfg, v, scheme)
    return _run_audit(cfg, v, scheme)
