"""
Boundedness audits through the sphere-mean recurrence
基于球面均值递推的有界性审计
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from ..errors import BadRadii, DomainViolation, InvalidGeometry
from ..fields.scalar_field import ScalarField, shift_sub_const
from ..geometry.constants import unit_sphere_area
from ..geometry.shapes import origin
from ..growth.order import OrderEstimate, is_finite_order, order_from_profile
from ..quadrature.means import sphere_mean, sphere_sup
from ..quadrature.nodes import quasi_uniform_directions
from ..quadrature.schemes import MeanEstimate, QuadratureScheme
from .exceptional import EpsilonSequence, ExceptionalSet, epsilon_sequence
from .sequences import RadiiSequence


AUDIT_DEFAULTS: Dict[str, Any] = {
    "min_off_cap_probes": 100,
    "initial_probe_resolution": 128,
    "max_probe_resolution": 1 << 16,
    "row_tolerance_floor": 1e-10,
    "order_ceiling": 10.0,
    "first_shell_spheres": 4,
}

VERDICT_NOTE = (
    "audit outcome on finitely many radii, not a proof: "
    "limsup conditions cannot be certified from finite data"
)


def configure_audit(section: Optional[Dict[str, Any]]) -> None:
    """Override audit defaults from the `audit` settings section"""
    for key, value in (section or {}).items():
        if key in AUDIT_DEFAULTS:
            AUDIT_DEFAULTS[key] = type(AUDIT_DEFAULTS[key])(value)


class AuditStatus(str, Enum):
    CONSISTENT_BOUNDED = "ConsistentBounded"
    UNBOUNDED_OFF_EXCEPTIONAL = "UnboundedOffExceptional"
    RECURRENCE_VIOLATED = "RecurrenceViolated"
    INCONCLUSIVE = "Inconclusive"


def recurrence_factor(m: int, q: float, epsilon_k: float) -> float:
    """(4 / s_{m-1}) (q / (q - 1))^{m-1} eps_k"""
    if not q > 1:
        raise BadRadii(f"q must exceed 1, got {q}")
    if epsilon_k < 0:
        raise ValueError(f"eps_k must be nonnegative, got {epsilon_k}")
    return 4.0 / unit_sphere_area(m) * (q / (q - 1.0)) ** (m - 1) * epsilon_k


@dataclass
class OffSetProbe:
    """Supremum of v over grid probes of S(r_k) outside E_k"""

    k: int
    r: float
    resolution: int
    probes: int
    sup: Optional[float]

    @property
    def covered(self) -> bool:
        return self.sup is None


@dataclass
class RecurrenceRow:
    k: int
    r_k: float
    r_next: float
    sphere_mean: float
    next_sphere_mean: float
    factor: float
    bound: float
    tolerance: float
    hypothesis: bool
    passed: bool
    monotone: Optional[bool] = None

    def to_row(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "r_k": self.r_k,
            "r_next": self.r_next,
            "S_V": self.sphere_mean,
            "S_V_next": self.next_sphere_mean,
            "factor": self.factor,
            "bound": self.bound,
            "tolerance": self.tolerance,
            "hypothesis": self.hypothesis,
            "passed": self.passed,
            "monotone": "" if self.monotone is None else self.monotone,
        }


@dataclass
class AuditVerdict:
    status: AuditStatus
    recurrence_table: List[RecurrenceRow]
    sup_estimates: Dict[str, float]
    epsilon: EpsilonSequence
    sphere_means: List[float] = field(default_factory=list)
    off_set: List[OffSetProbe] = field(default_factory=list)
    order: Optional[OrderEstimate] = None
    finite_order: Optional[bool] = None
    note: str = VERDICT_NOTE

    @property
    def failed_rows(self) -> List[RecurrenceRow]:
        return [row for row in self.recurrence_table if not row.passed]

    def to_rows(self) -> List[Dict[str, Any]]:
        """One CSV row per recurrence step, with eps_k alongside"""
        rows = []
        for row in self.recurrence_table:
            record = row.to_row()
            record["epsilon"] = self.epsilon.values[row.k]
            record["status"] = self.status.value
            rows.append(record)
        return rows

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "note": self.note,
            "sup_estimates": self.sup_estimates,
            "finite_order": self.finite_order,
            "order_proxy": None if self.order is None else self.order.order_proxy,
            "epsilon": {
                "values": self.epsilon.values,
                "tends_to_zero_proxy": self.epsilon.tends_to_zero_proxy,
            },
            "sphere_means": self.sphere_means,
            "off_exceptional": [
                {"k": p.k, "r": p.r, "resolution": p.resolution, "probes": p.probes, "sup": p.sup}
                for p in self.off_set
            ],
            "recurrence_table": [row.to_row() for row in self.recurrence_table],
        }


def off_set_sup(v: ScalarField, E: ExceptionalSet, k: int, seed: int = 0) -> OffSetProbe:
    """
    Supremum of v over quasi-uniform probes of S(r_k) that avoid E_k

    The probe resolution doubles until enough probes lie outside the caps. When
    the caps swallow every probe at the largest resolution the sphere is treated
    as covered and contributes no constraint.
    """
    m = E.dim
    r = E.radii[k]
    minimum = AUDIT_DEFAULTS["min_off_cap_probes"]
    resolution = AUDIT_DEFAULTS["initial_probe_resolution"]
    while True:
        directions = quasi_uniform_directions(m, resolution, seed)
        outside = E.off_set_mask(k, directions)
        count = int(outside.sum())
        if count >= minimum or m == 1 or resolution >= AUDIT_DEFAULTS["max_probe_resolution"]:
            break
        resolution *= 2
        logger.debug(f"off-set probes on S({r:g}): {count} < {minimum}, resolution -> {resolution}")
    if count == 0:
        return OffSetProbe(k=k, r=r, resolution=resolution, probes=0, sup=None)
    values = v.evaluate(r * directions[outside])
    return OffSetProbe(k=k, r=r, resolution=resolution, probes=count, sup=float(values.max()))


def first_shell_sup(v: ScalarField, r1: float) -> float:
    """Proxy for the supremum of v over the shell between the excluded ball and S(r1)"""
    inner = v.exterior_radius or 0.0
    count = AUDIT_DEFAULTS["first_shell_spheres"]
    radii = np.linspace(inner, r1, count + 1)[1:]
    zero = origin(v.dim)
    return max(sphere_sup(v, zero, float(r)) for r in radii if v.sphere_in_domain(zero, float(r)))


def _order_check(v: ScalarField, radii: Sequence[float], ceiling: float):
    if len(radii) < 3:
        return None, None
    window = max(2, min(6, len(radii) - 2))
    tail = max(1, min(3, len(radii) - window + 1))
    profile = [sphere_sup(v, origin(v.dim), r) for r in radii]
    estimate = order_from_profile(radii, profile, window=window, tail_windows=tail)
    return estimate, is_finite_order(estimate, ceiling)


def _check_alignment(v: ScalarField, E: ExceptionalSet, seq: RadiiSequence) -> None:
    if E.dim != v.dim:
        raise InvalidGeometry(f"exceptional set in R^{E.dim}, field in R^{v.dim}")
    if len(E.radii) != len(seq.radii) or not np.allclose(E.radii, seq.radii, rtol=1e-12, atol=0.0):
        raise InvalidGeometry("exceptional set radii do not match the radii sequence")
    zero = origin(v.dim)
    for r in seq.radii:
        if not v.sphere_in_domain(zero, r):
            raise DomainViolation(f"sphere S({r:g}) meets the excluded ball of {v.label}")


def run_liouville_audit(
    v: ScalarField,
    E: ExceptionalSet,
    seq: RadiiSequence,
    M: Optional[float] = None,
    order_ceiling: Optional[float] = None,
    scheme: Optional[QuadratureScheme] = None,
    seed: int = 0
) -> AuditVerdict:
    """
    Audit the boundedness mechanism for v along a radii sequence

    V = (v - M)^+ is checked to vanish off E_k on every sphere, its sphere means
    are run through the recurrence S_V(r_k) <= factor_k S_V(r_{k+1}), and the
    growth order of v is estimated from sphere suprema.

    Status precedence: UnboundedOffExceptional (V > 0 off E with growing suprema),
    RecurrenceViolated (a row whose hypothesis holds fails), ConsistentBounded
    (every S_V vanishes and the order is finite), otherwise Inconclusive.

    Args:
        v: Field whose spheres S(r_k) lie in its domain
        E: Exceptional caps on the same radii
        seq: Radii sequence with its ratio window
        M: Level; defaults to max of the first-shell supremum and the off-set
           supremum on the first sphere
        order_ceiling: Finite-order ceiling (default 10)
        scheme: Sphere rule for the means
        seed: Seed for probes and Monte Carlo measures

    Returns:
        AuditVerdict: Status, recurrence table and supporting estimates
    """
    _check_alignment(v, E, seq)
    ceiling = AUDIT_DEFAULTS["order_ceiling"] if order_ceiling is None else float(order_ceiling)
    floor = AUDIT_DEFAULTS["row_tolerance_floor"]
    m = v.dim
    radii = list(seq.radii)
    zero = origin(m)

    off_set = [off_set_sup(v, E, k, seed) for k in range(len(radii))]
    first_shell = first_shell_sup(v, radii[0])
    off_first = off_set[0].sup if off_set[0].sup is not None else -math.inf
    if M is None:
        M = max(first_shell, off_first)
        logger.info(f"audit level M defaulted to {M:.6g}")
    if not math.isfinite(M):
        raise ValueError(f"level M must be finite, got {M}")
    off_values = [p.sup for p in off_set if p.sup is not None]
    sup_estimates = {
        "M_E": max(off_values) if off_values else -math.inf,
        "M0": first_shell,
        "M": float(M),
    }

    V = shift_sub_const(v, M)
    means: List[MeanEstimate] = [sphere_mean(V, zero, r, scheme) for r in radii]
    epsilon = epsilon_sequence(E, seed=seed)

    rows: List[RecurrenceRow] = []
    for k in range(len(radii) - 1):
        factor = recurrence_factor(m, seq.q, epsilon.values[k])
        current, following = means[k], means[k + 1]
        bound = factor * following.value
        tolerance = current.error_bound + factor * following.error_bound + floor
        probe = off_set[k]
        hypothesis = probe.covered or probe.sup - M <= floor
        within = current.value <= bound + tolerance
        monotone = None
        if seq.Q * radii[k] > radii[k + 1] and V.sphere_in_domain(zero, seq.Q * radii[k]):
            reference = sphere_mean(V, zero, seq.Q * radii[k], scheme)
            monotone = following.value <= reference.value + following.error_bound + reference.error_bound + floor
        elif seq.Q * radii[k] == radii[k + 1]:
            monotone = True
        rows.append(RecurrenceRow(
            k=k,
            r_k=radii[k],
            r_next=radii[k + 1],
            sphere_mean=current.value,
            next_sphere_mean=following.value,
            factor=factor,
            bound=bound,
            tolerance=tolerance,
            hypothesis=hypothesis,
            passed=within or not hypothesis,
            monotone=monotone
        ))

    order, finite = _order_check(v, radii, ceiling)

    violations = [p for p in off_set if not p.covered and p.sup - M > floor]
    checked = [p.sup for p in off_set if not p.covered]
    growing = len(checked) >= 2 and checked[-1] > checked[0] + floor
    all_vanish = all(e.value <= e.error_bound + floor for e in means)

    if violations and growing:
        status = AuditStatus.UNBOUNDED_OFF_EXCEPTIONAL
    elif any(not row.passed for row in rows):
        status = AuditStatus.RECURRENCE_VIOLATED
    elif all_vanish and not violations and finite:
        status = AuditStatus.CONSISTENT_BOUNDED
    else:
        status = AuditStatus.INCONCLUSIVE
    logger.info(f"audit of {v.label} over {len(radii)} radii: {status.value}")

    return AuditVerdict(
        status=status,
        recurrence_table=rows,
        sup_estimates=sup_estimates,
        epsilon=epsilon,
        sphere_means=[e.value for e in means],
        off_set=off_set,
        order=order,
        finite_order=finite
    )


@dataclass
class SyntheticCheck:
    """Implied bound for S(r_1) from S(r_k) <= f_k S(r_{k+1})"""

    premise_holds: bool
    log_bounds: List[float]
    best_index: int
    implied_bound: float
    tolerance: float

    @property
    def forces_zero(self) -> bool:
        """The bound vanishes and the profile actually obeys the recurrence"""
        return self.premise_holds and self.implied_bound <= self.tolerance


def synthetic_sequence_check(
    factors: Sequence[float],
    profile: Sequence[float],
    tolerance: float = 1e-10
) -> SyntheticCheck:
    """
    Iterate the recurrence on an array profile in log space

    Chaining S(r_1) <= f_1 ... f_{K-1} S(r_K) gives one bound per truncation
    index K; the smallest is reported. A nondecreasing finite-order profile with
    factors tending to zero drives the bound below the tolerance.

    Args:
        factors: f_1, ..., f_{n-1}, nonnegative
        profile: S(r_1), ..., S(r_n), nonnegative
        tolerance: Level below which S(r_1) counts as zero

    Returns:
        SyntheticCheck: log bounds per truncation index and the implied bound
    """
    f = np.asarray(factors, dtype=float)
    s = np.asarray(profile, dtype=float)
    if len(s) != len(f) + 1:
        raise ValueError(f"need one more profile value than factors, got {len(s)} and {len(f)}")
    if (f < 0).any() or (s < 0).any():
        raise ValueError("factors and profile values must be nonnegative")
    with np.errstate(divide="ignore"):
        log_f = np.log(f)
        log_s = np.log(s)
    premise = bool(np.all(s[:-1] <= f * s[1:] * (1.0 + 1e-12) + 1e-300))
    log_bounds = [float(log_s[0])]
    running = 0.0
    for K in range(1, len(s)):
        running += log_f[K - 1]
        log_bounds.append(float(running + log_s[K]))
    clean = [b if not math.isnan(b) else math.inf for b in log_bounds]
    best = int(np.argmin(clean))
    return SyntheticCheck(
        premise_holds=premise,
        log_bounds=clean,
        best_index=best,
        implied_bound=math.exp(clean[best]) if clean[best] < 700 else math.inf,
        tolerance=tolerance
    )
