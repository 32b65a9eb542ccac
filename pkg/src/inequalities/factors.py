"""
Closed-form factors of the mean-value inequalities
均值不等式中的闭式系数
"""

import math
from typing import Any, Dict

from ..errors import BadRadii


def _check_pair(r: float, R: float) -> None:
    if not (0 < r < R and math.isfinite(R)):
        raise BadRadii(f"need 0 < r < R, got r = {r}, R = {R}")


def harnack_factor(m: int, modulus: float, R: float) -> float:
    """
    Harnack factor (R + |x|) R^{m-2} / (R - |x|)^{m-1}

    Bounds H(x) / H(0) for a nonnegative harmonic H on B(R). Equals 1 at modulus 0
    for every m.

    Raises:
        BadRadii: Unless 0 <= modulus < R
    """
    if not (R > 0 and 0 <= modulus < R):
        raise BadRadii(f"Harnack factor needs 0 <= |x| < R, got |x| = {modulus}, R = {R}")
    return (R + modulus) * R ** (m - 2) / (R - modulus) ** (m - 1)


def volume_ratio_factor(m: int, r: float, R: float) -> float:
    """(1 + r / (R - r))^m, the volume ratio of B(R) to B(x, R - r)"""
    _check_pair(r, R)
    return (1.0 + r / (R - r)) ** m


def harnack_shell_factor(m: int, r: float, t: float, R: float) -> float:
    """Harnack factor at modulus r + t"""
    if not 0 < t < R - r:
        raise BadRadii(f"need 0 < t < R - r, got t = {t}")
    return harnack_factor(m, r + t, R)


def shell_bound_factor(m: int, r: float, t: float, R: float) -> float:
    """4 (1 + (r + t) / (R - (r + t)))^{m-1}"""
    _check_pair(r, R)
    if not 0 < t < R - r:
        raise BadRadii(f"need 0 < t < R - r, got t = {t}")
    return 4.0 * (1.0 + (r + t) / (R - (r + t))) ** (m - 1)


def half_gap_factor(m: int, r: float, R: float) -> float:
    """2^{m+1} (1 + r / (R - r))^{m-1}; the shell bound at t = (R - r) / 2"""
    _check_pair(r, R)
    return 2.0 ** (m + 1) * (1.0 + r / (R - r)) ** (m - 1)


def limit_factor(m: int, r: float, R: float) -> float:
    """4 (1 + r / (R - r))^{m-1}; the shell bound as t -> 0"""
    _check_pair(r, R)
    return 4.0 * (1.0 + r / (R - r)) ** (m - 1)


def prop2_branches(m: int, r: float, R: float) -> Dict[str, Any]:
    """
    Both branches of the cap bound min{4, 1 + r/(R-r)} * (1 + (R+r)/(R-r))^{m-1}

    Returns:
        dict: constant branch, ratio branch, the active branch name and the minimum
    """
    _check_pair(r, R)
    tail = (1.0 + (R + r) / (R - r)) ** (m - 1)
    constant = 4.0 * tail
    ratio = (1.0 + r / (R - r)) * tail
    return {
        "constant_branch": constant,
        "ratio_branch": ratio,
        "active": "ratio" if ratio <= constant else "constant",
        "factor": min(constant, ratio),
    }


def cap_bound_factor(m: int, r: float, R: float) -> float:
    return prop2_branches(m, r, R)["factor"]
