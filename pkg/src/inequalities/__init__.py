"""
Inequality lab: mean chains, upper bounds on balls, Harnack and cap bounds
不等式实验室：均值链、球上上界、Harnack 与球冠估计
"""

from .checks import check_harnack, check_mean_chain, check_prop1, check_prop2
from .factors import (
    half_gap_factor,
    harnack_factor,
    harnack_shell_factor,
    limit_factor,
    prop2_branches,
    cap_bound_factor,
    shell_bound_factor,
    volume_ratio_factor,
)
from .report import InequalityReport, all_passed, make_report

__all__ = [
    "InequalityReport",
    "all_passed",
    "cap_bound_factor",
    "check_harnack",
    "check_mean_chain",
    "check_prop1",
    "check_prop2",
    "half_gap_factor",
    "harnack_factor",
    "harnack_shell_factor",
    "limit_factor",
    "make_report",
    "prop2_branches",
    "shell_bound_factor",
    "volume_ratio_factor",
]
