"""
Inequality reports
不等式检验报告
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

from ..quadrature.schemes import MeanEstimate


ABSOLUTE_FLOOR = 1e-12

Side = Union[float, MeanEstimate]


def _format_float(value: float) -> Union[float, str]:
    if value == -math.inf:
        return "-inf"
    if value == math.inf:
        return "inf"
    return value


@dataclass(frozen=True)
class InequalityReport:
    """
    One instance of an inequality lhs <= rhs

    A left side equal to -inf makes the check pass trivially; such reports carry
    trivial=True and no numeric slack.
    """

    label: str
    lhs: float
    rhs: float
    tolerance: float
    inputs: Dict[str, Any] = field(default_factory=dict)
    trivial: bool = False

    @property
    def slack(self) -> Optional[float]:
        if self.trivial:
            return None
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        if self.trivial:
            return True
        slack = self.rhs - self.lhs
        return not math.isnan(slack) and slack >= -self.tolerance

    def describe(self) -> str:
        slack = "+inf (trivial)" if self.trivial else f"{self.slack:.6g}"
        status = "✓" if self.passed else "✗"
        return (
            f"{status} {self.label}: {self.lhs:.10g} <= {self.rhs:.10g} "
            f"(slack {slack}, tol {self.tolerance:.3g})"
        )

    def to_row(self) -> Dict[str, Any]:
        """Flat record for CSV and JSON reports"""
        return {
            "label": self.label,
            "lhs": _format_float(self.lhs),
            "rhs": _format_float(self.rhs),
            "slack": "trivial" if self.trivial else _format_float(self.slack),
            "tolerance": self.tolerance,
            "passed": self.passed,
            "inputs": json.dumps(self.inputs, sort_keys=True, default=str),
        }


def _split(side: Side) -> tuple:
    if isinstance(side, MeanEstimate):
        return side.value, side.error_bound
    return float(side), 0.0


def make_report(
    label: str,
    lhs: Side,
    rhs: Side,
    inputs: Optional[Dict[str, Any]] = None,
    rhs_factor: float = 1.0,
    extra_tolerance: float = 0.0
) -> InequalityReport:
    """
    Build a report for lhs <= rhs_factor * rhs

    The tolerance is the sum of both error bounds (the right one scaled by
    rhs_factor), extra_tolerance and an absolute floor of 1e-12.
    """
    lhs_value, lhs_error = _split(lhs)
    rhs_value, rhs_error = _split(rhs)
    rhs_value *= rhs_factor
    rhs_error *= abs(rhs_factor)
    return InequalityReport(
        label=label,
        lhs=lhs_value,
        rhs=rhs_value,
        tolerance=lhs_error + rhs_error + extra_tolerance + ABSOLUTE_FLOOR,
        inputs=dict(inputs or {}),
        trivial=lhs_value == -math.inf
    )


def all_passed(reports) -> bool:
    return all(report.passed for report in reports)
