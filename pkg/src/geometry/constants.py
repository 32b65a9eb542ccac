"""
Measure constants of balls, spheres and caps in R^m
R^m 中球、球面与球冠的测度常数
"""

import math

from scipy.special import betainc, gamma

from ..errors import BadRadii, InvalidGeometry


MAX_DIMENSION = 64


def _check_dimension(m: int) -> int:
    if isinstance(m, bool) or int(m) != m or m < 1 or m > MAX_DIMENSION:
        raise InvalidGeometry(f"dimension must be an integer in [1, {MAX_DIMENSION}], got {m!r}")
    return int(m)


def unit_ball_volume(m: int) -> float:
    """
    Volume b_m of the unit ball in R^m

    Args:
        m: Dimension

    Returns:
        float: pi^{m/2} / Gamma(m/2 + 1)
    """
    m = _check_dimension(m)
    return math.pi ** (m / 2) / float(gamma(m / 2 + 1))


def unit_sphere_area(m: int) -> float:
    """
    Surface measure s_{m-1} of the unit sphere in R^m

    For m = 1 the "sphere" {-1, +1} carries counting measure, so the value is 2.

    Args:
        m: Dimension

    Returns:
        float: 2 pi^{m/2} / Gamma(m/2)
    """
    m = _check_dimension(m)
    if m == 1:
        return 2.0
    return 2.0 * math.pi ** (m / 2) / float(gamma(m / 2))


def ball_volume(m: int, r: float) -> float:
    """Lebesgue measure b_m r^m of a ball of radius r"""
    if r < 0:
        raise BadRadii(f"radius must be nonnegative, got {r}")
    return unit_ball_volume(m) * r ** m


def sphere_area(m: int, r: float) -> float:
    """Surface measure s_{m-1} r^{m-1} of a sphere of radius r"""
    if r <= 0:
        raise BadRadii(f"sphere radius must be positive, got {r}")
    m = _check_dimension(m)
    if m == 1:
        return 2.0
    return unit_sphere_area(m) * r ** (m - 1)


def sharp_mean_constant(m: int) -> float:
    """
    Sharp constant a_m of the mean chain v(0) <= S_v(a_m R) <= B_v(R) <= S_v(R)

    Args:
        m: Dimension

    Returns:
        float: 1/2 for m = 1, 1/sqrt(e) for m = 2, (m/2)^{-1/(m-2)} for m >= 3
    """
    m = _check_dimension(m)
    if m == 1:
        return 0.5
    if m == 2:
        return 1.0 / math.sqrt(math.e)
    return (m / 2.0) ** (-1.0 / (m - 2))


def cap_area_fraction(m: int, half_angle: float) -> float:
    """
    Fraction of the unit sphere covered by an open cap of the given half angle

    Uses the regularized incomplete beta function; m = 1 follows the counting
    convention (one of two points unless the cap is empty or the whole sphere).
    """
    m = _check_dimension(m)
    if half_angle < 0 or half_angle > math.pi:
        raise InvalidGeometry(f"half angle must lie in [0, pi], got {half_angle}")
    if half_angle == 0:
        return 0.0
    if half_angle == math.pi:
        return 1.0
    if m == 1:
        return 0.5
    if m == 2:
        return half_angle / math.pi
    s2 = math.sin(half_angle) ** 2
    half = 0.5 * float(betainc((m - 1) / 2.0, 0.5, s2))
    return half if half_angle <= math.pi / 2 else 1.0 - half
