"""
Audits along complex lines through the origin
沿过原点复直线的审计
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger

from ..errors import InvalidGeometry
from ..fields.scalar_field import ScalarField, complex_direction, slice_complex_line
from ..quadrature.means import sphere_mean
from ..quadrature.schemes import QuadratureScheme
from .audit import AuditStatus, AuditVerdict, run_liouville_audit
from .exceptional import ExceptionalSet
from .sequences import RadiiSequence


SLICE_AGREEMENT = 1e-9

SliceSetup = Tuple[ExceptionalSet, RadiiSequence, Optional[float]]


@dataclass
class SliceAudit:
    """Per-direction verdicts with the combined outcome"""

    directions: List[List[Any]]
    verdicts: List[AuditVerdict]
    slice_constants: List[Optional[float]]
    shared_value: Optional[float]
    agree: bool
    status: AuditStatus
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "shared_value": self.shared_value,
            "agree": self.agree,
            "slices": [
                {
                    "direction": direction,
                    "status": verdict.status.value,
                    "constant": constant,
                    "verdict": verdict.to_dict(),
                }
                for direction, verdict, constant in zip(
                    self.directions, self.verdicts, self.slice_constants
                )
            ],
        }


def _setups(directions: Sequence, per_slice: Union[SliceSetup, Sequence[SliceSetup]]) -> List[SliceSetup]:
    if isinstance(per_slice, tuple) and len(per_slice) == 3 and isinstance(per_slice[0], ExceptionalSet):
        return [per_slice] * len(directions)
    setups = list(per_slice)
    if len(setups) != len(directions):
        raise InvalidGeometry(f"{len(directions)} directions but {len(setups)} slice setups")
    return setups


def audit_complex_slices(
    v: ScalarField,
    directions: Sequence[Sequence],
    per_slice: Union[SliceSetup, Sequence[SliceSetup]],
    order_ceiling: Optional[float] = None,
    scheme: Optional[QuadratureScheme] = None,
    seed: int = 0
) -> SliceAudit:
    """
    Run a boundedness audit on the restriction of v to each complex line z s

    Bounded slices of a function with finite order are constant; every slice passes
    through 0, so their constants must agree with each other and with v(0).

    Args:
        v: Field on C^n identified with R^{2n}
        directions: Unit vectors of C^n
        per_slice: One (ExceptionalSet, RadiiSequence, M) for all slices or one per direction
        order_ceiling: Finite-order ceiling
        scheme: Sphere rule
        seed: Seed for probes

    Returns:
        SliceAudit: Verdicts, slice constants and the combined status
    """
    if v.dim % 2:
        raise InvalidGeometry(f"complex slicing needs an even real dimension, got {v.dim}")
    setups = _setups(directions, per_slice)
    verdicts, constants, parsed = [], [], []
    for direction, (E, seq, M) in zip(directions, setups):
        s = complex_direction(direction)
        parsed.append([[z.real, z.imag] for z in s])
        line = slice_complex_line(v, s)
        verdict = run_liouville_audit(line, E, seq, M, order_ceiling, scheme, seed)
        verdicts.append(verdict)
        constant = None
        if verdict.status == AuditStatus.CONSISTENT_BOUNDED:
            constant = sphere_mean(line, (0.0, 0.0), seq.radii[0], scheme).value
        constants.append(constant)
        logger.debug(f"slice {parsed[-1]}: {verdict.status.value}, constant {constant}")

    shared = v.value_at([0.0] * v.dim) if v.point_in_domain([0.0] * v.dim) else None
    known = [c for c in constants if c is not None]
    reference = shared if shared is not None and math.isfinite(shared) else (known[0] if known else None)
    agree = all(abs(c - reference) <= SLICE_AGREEMENT for c in known) if known else True

    statuses = {verdict.status for verdict in verdicts}
    if statuses == {AuditStatus.CONSISTENT_BOUNDED} and agree:
        status = AuditStatus.CONSISTENT_BOUNDED
    elif AuditStatus.RECURRENCE_VIOLATED in statuses:
        status = AuditStatus.RECURRENCE_VIOLATED
    elif AuditStatus.UNBOUNDED_OFF_EXCEPTIONAL in statuses:
        status = AuditStatus.UNBOUNDED_OFF_EXCEPTIONAL
    else:
        status = AuditStatus.INCONCLUSIVE
    return SliceAudit(
        directions=parsed,
        verdicts=verdicts,
        slice_constants=constants,
        shared_value=shared,
        agree=agree,
        status=status
    )
