"""
Tests for inequalities module
"""

import json
import math
import pytest
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import BadRadii, DomainViolation, InvalidGeometry, NegativeField, NotHarmonic
from src.fields import (
    constant,
    coordinate,
    make_harmonic_poly,
    make_log_modulus,
    poisson_kernel,
    radial_power,
    squared_norm,
)
from src.geometry import SphereSpec, SphericalCap, origin, sharp_mean_constant
from src.inequalities import (
    all_passed,
    check_harnack,
    check_mean_chain,
    check_prop1,
    check_prop2,
    half_gap_factor,
    harnack_factor,
    limit_factor,
    make_report,
    prop2_branches,
    shell_bound_factor,
    volume_ratio_factor,
)
from src.quadrature import MeanEstimate, MeanMethod, QuadratureScheme, SchemeKind


CIRCLE = QuadratureScheme(SchemeKind.UNIFORM_CIRCLE, 1024)
PRODUCT = QuadratureScheme(SchemeKind.PRODUCT_GAUSS_SPHERE, 64)


class TestFactors:
    """Tests for the closed-form factors"""

    @pytest.mark.parametrize("m", [1, 2, 3, 7])
    def test_harnack_factor_at_center(self, m):
        """Test that the Harnack factor is 1 at the center"""
        assert harnack_factor(m, 0.0, 2.5) == pytest.approx(1.0, rel=1e-14)

    def test_harnack_factor_value(self):
        """Test (R + |x|) R^{m-2} / (R - |x|)^{m-1} for m = 3"""
        assert harnack_factor(3, 0.5, 1.0) == pytest.approx(1.5 / 0.25, rel=1e-14)

    def test_harnack_factor_boundary_rejected(self):
        """Test that |x| = R is outside the admissible range"""
        with pytest.raises(BadRadii):
            harnack_factor(2, 1.0, 1.0)

    def test_volume_ratio(self):
        """Test (R / (R - r))^m"""
        assert volume_ratio_factor(3, 0.5, 1.0) == pytest.approx(8.0, rel=1e-14)

    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_half_gap_is_shell_bound_at_half_gap(self, m):
        """Test that the half-gap factor is the shell bound at t = (R - r) / 2"""
        r, R = 0.3, 1.1
        assert half_gap_factor(m, r, R) == pytest.approx(shell_bound_factor(m, r, (R - r) / 2.0, R), rel=1e-12)

    @pytest.mark.parametrize("m", [2, 4])
    def test_limit_is_shell_bound_as_t_vanishes(self, m):
        """Test the t -> 0 limit of the shell bound"""
        r, R = 0.4, 1.0
        assert shell_bound_factor(m, r, 1e-9, R) == pytest.approx(limit_factor(m, r, R), rel=1e-6)

    def test_cap_bound_ratio_branch(self):
        """Test that small r / R makes the ratio branch active"""
        branches = prop2_branches(2, 0.1, 1.0)
        assert branches["active"] == "ratio"
        assert branches["factor"] == pytest.approx((1.0 + 0.1 / 0.9) * (1.0 + 1.1 / 0.9), rel=1e-14)

    def test_cap_bound_constant_branch(self):
        """Test that r close to R makes the constant branch active"""
        branches = prop2_branches(3, 0.9, 1.0)
        assert branches["active"] == "constant"
        assert branches["factor"] == pytest.approx(4.0 * (1.0 + 19.0) ** 2, rel=1e-12)
        assert branches["constant_branch"] <= branches["ratio_branch"]

    def test_bad_radii(self):
        """Test that r >= R is rejected"""
        with pytest.raises(BadRadii):
            prop2_branches(2, 1.0, 1.0)


class TestReports:
    """Tests for inequality reports"""

    def test_tolerance_combines_error_bounds(self):
        """Test lhs and scaled rhs errors plus the floor"""
        lhs = MeanEstimate(value=1.0, error_bound=1e-6, method=MeanMethod.MONTE_CARLO, samples=10)
        rhs = MeanEstimate(value=0.5, error_bound=2e-6, method=MeanMethod.MONTE_CARLO, samples=10)
        report = make_report("demo", lhs, rhs, rhs_factor=3.0)
        assert report.rhs == pytest.approx(1.5)
        assert report.tolerance == pytest.approx(1e-6 + 6e-6 + 1e-12, rel=1e-12)
        assert report.slack == pytest.approx(0.5)
        assert report.passed

    def test_failure_beyond_tolerance(self):
        """Test that a negative slack beyond the tolerance fails"""
        report = make_report("demo", 2.0, 1.0)
        assert not report.passed
        assert report.describe().startswith("✗ demo")

    def test_minus_infinity_is_trivial(self):
        """Test that a -inf left side passes with no slack"""
        report = make_report("demo", -math.inf, -5.0)
        assert report.trivial
        assert report.passed
        assert report.slack is None
        row = report.to_row()
        assert row["lhs"] == "-inf"
        assert row["slack"] == "trivial"

    def test_row_inputs_are_json(self):
        """Test that report inputs serialize with sorted keys"""
        row = make_report("demo", 0.0, 1.0, {"b": 1, "a": [1.0, 2.0]}).to_row()
        assert row["inputs"] == json.dumps({"a": [1.0, 2.0], "b": 1}, sort_keys=True)
        assert set(row) == {"label", "lhs", "rhs", "slack", "tolerance", "passed", "inputs"}


class TestMeanChain:
    """Tests for v(x) <= S(x, a_m R) <= B(x, R) <= S(x, R)"""

    def test_harmonic_chain_is_equality(self):
        """Test that every link is tight for a harmonic polynomial"""
        h = make_harmonic_poly(3, [[1, [2, 0, 0]], [-1, [0, 2, 0]]])
        reports = check_mean_chain(h, 1.0, PRODUCT, x=(0.2, -0.1, 0.3))
        assert [r.label for r in reports] == [
            "chain.center_vs_sharp_sphere",
            "chain.sharp_sphere_vs_ball",
            "chain.ball_vs_sphere",
        ]
        assert all_passed(reports)
        for report in reports:
            assert abs(report.slack) <= 1e-9

    def test_squared_norm_chain(self):
        """Test the strict chain 0 < a_2^2 R^2 < R^2 / 2 < R^2"""
        reports = check_mean_chain(squared_norm(2), 1.0, CIRCLE)
        assert all_passed(reports)
        a = sharp_mean_constant(2)
        assert reports[0].rhs == pytest.approx(a * a, rel=1e-10)
        assert reports[1].rhs == pytest.approx(0.5, abs=reports[1].tolerance + 1e-12)
        assert reports[2].rhs == pytest.approx(1.0, rel=1e-12)

    def test_one_dimensional_chain(self):
        """Test |x| on the line, where S(0, R / 2) equals B(0, R)"""
        reports = check_mean_chain(radial_power(1, 1.0), 2.0)
        assert all_passed(reports)
        assert reports[1].lhs == pytest.approx(1.0, rel=1e-12)
        assert reports[1].rhs == pytest.approx(1.0, rel=1e-10)

    def test_monte_carlo_chain(self):
        """Test the chain in R^4 with a seeded Monte Carlo rule"""
        scheme = QuadratureScheme(SchemeKind.MONTE_CARLO_SPHERE, 1 << 14, seed=5)
        assert all_passed(check_mean_chain(squared_norm(4), 1.0, scheme))

    def test_bad_radius(self):
        """Test R > 0"""
        with pytest.raises(BadRadii):
            check_mean_chain(squared_norm(2), -1.0)

    def test_pole_inside_ball(self):
        """Test that a Poisson kernel whose pole lies in B(R) is refused, not failed"""
        h = poisson_kernel(2, (1.0, 0.0))
        with pytest.raises(DomainViolation):
            check_mean_chain(h, 2.0, CIRCLE)
        with pytest.raises(DomainViolation):
            check_mean_chain(h, 1.0, CIRCLE)
        assert all_passed(check_mean_chain(h, 0.5, CIRCLE))


class TestProp1:
    """Tests for the upper bounds on B(r) through the positive part on S(R)"""

    def test_log_modulus_bounds(self):
        """Test every link for ln|z^2 - 1/4| with probes in B(1/2)"""
        v = make_log_modulus([-0.25, 0.0, 1.0])
        probes = [(0.0, 0.0), (0.3, 0.1)]
        reports = check_prop1(v, 0.5, 1.0, probes, scheme=CIRCLE)
        assert len(reports) == 1 + 11 * len(probes)
        assert all_passed(reports)
        labels = {report.label for report in reports}
        assert "prop1.limit_surrogate[0.01]" in labels
        assert "prop1.volume_ratio" in labels

    def test_sharp_sphere_equals_center_for_harmonic_part(self):
        """Test that v(0) = S_v(0, a_2 (R - r)) when no zero lies within that radius"""
        v = make_log_modulus([-0.25, 0.0, 1.0])
        reports = check_prop1(v, 0.5, 1.0, [(0.0, 0.0)], scheme=CIRCLE)
        point = next(r for r in reports if r.label == "prop1.point_vs_sharp_sphere")
        assert point.lhs == pytest.approx(math.log(0.25), rel=1e-12)
        assert abs(point.slack) <= 1e-10

    def test_constant_field_in_three_dimensions(self):
        """Test a positive constant, where every factor is at least 1"""
        reports = check_prop1(constant(3, 1.0), 0.25, 1.0, [(0.0, 0.0, 0.25)], scheme=PRODUCT)
        assert all_passed(reports)

    def test_probe_outside_inner_ball(self):
        """Test that probes must lie in the closed ball B(r)"""
        with pytest.raises(DomainViolation):
            check_prop1(squared_norm(2), 0.5, 1.0, [(0.6, 0.0)], scheme=CIRCLE)

    def test_radii_out_of_order(self):
        """Test 0 < r < R"""
        with pytest.raises(BadRadii):
            check_prop1(squared_norm(2), 1.0, 1.0, [(0.0, 0.0)])

    def test_shell_width_out_of_range(self):
        """Test 0 < t < R - r"""
        with pytest.raises(BadRadii):
            check_prop1(squared_norm(2), 0.5, 1.0, [(0.0, 0.0)], t=0.5)


class TestHarnack:
    """Tests for the Harnack check"""

    def test_poisson_kernel_passes(self):
        """Test a positive harmonic kernel with its pole outside B(R)"""
        h = poisson_kernel(2, (2.0, 0.0))
        reports = check_harnack(h, 1.5, [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.2)], seed=7)
        assert len(reports) == 3
        assert all_passed(reports)

    def test_sharp_when_pole_on_boundary(self):
        """Test equality along the ray to a pole on S(R)"""
        h = poisson_kernel(3, (1.0, 0.0, 0.0))
        reports = check_harnack(h, 1.0, [(0.9, 0.0, 0.0)])
        assert reports[0].passed
        assert reports[0].lhs == pytest.approx(190.0, rel=1e-12)
        assert abs(reports[0].slack) <= 1e-9

    def test_pole_inside_ball(self):
        """Test that a pole strictly inside B(R) is refused"""
        h = poisson_kernel(2, (1.0, 0.0))
        with pytest.raises(DomainViolation, match="open ball"):
            check_harnack(h, 2.0, [(0.5, 0.0)])

    def test_not_harmonic(self):
        """Test that a non-harmonic field is rejected"""
        with pytest.raises(NotHarmonic):
            check_harnack(squared_norm(2), 1.0, [(0.5, 0.0)])

    def test_negative_harmonic(self):
        """Test that a sign-changing harmonic field is rejected"""
        with pytest.raises(NegativeField):
            check_harnack(coordinate(2, 0), 1.0, [(0.5, 0.0)])

    def test_probe_on_boundary(self):
        """Test that probes must be strictly inside B(R)"""
        with pytest.raises(DomainViolation):
            check_harnack(constant(2, 1.0), 1.0, [(1.0, 0.0)])


def caps_on(m, r, *axes_and_angles):
    sphere = SphereSpec(origin(m), r)
    return [SphericalCap(sphere, tuple(axis), theta) for axis, theta in axes_and_angles]


class TestProp2:
    """Tests for the cap bound"""

    def test_constant_field_passes(self):
        """Test a positive constant on one cap"""
        caps = caps_on(3, 0.5, ((0.0, 0.0, 1.0), 0.5))
        report = check_prop2(constant(3, 1.0), caps, 1.0, PRODUCT)
        assert report.passed
        assert report.inputs["sigma_method"] == "exact"
        assert report.inputs["active"] in ("ratio", "constant")

    def test_scaled_right_side_fails(self):
        """Test that shrinking the right side by 100 makes the check fail"""
        caps = caps_on(3, 0.5, ((0.0, 0.0, 1.0), 0.5))
        report = check_prop2(constant(3, 1.0), caps, 1.0, PRODUCT, rhs_scale=0.01)
        assert not report.passed
        assert report.inputs["rhs_scale"] == 0.01

    def test_arcs_on_circle(self):
        """Test |x|^2 over two overlapping arcs"""
        caps = caps_on(2, 0.6, ((1.0, 0.0), 0.4), ((0.0, 1.0), 1.2))
        report = check_prop2(squared_norm(2), caps, 1.0, CIRCLE)
        assert report.passed
        assert report.lhs == pytest.approx(0.36 * report.inputs["sigma_E"], rel=1e-10)

    def test_log_modulus_field(self):
        """Test ln|z^2 - 1/4| on caps of S(1/2) avoiding the zeros"""
        caps = caps_on(2, 0.5, ((0.0, 1.0), 0.5), ((0.0, -1.0), 0.5))
        report = check_prop2(make_log_modulus([-0.25, 0.0, 1.0]), caps, 1.0, CIRCLE)
        assert report.passed

    def test_caps_must_be_centered(self):
        """Test that caps off the origin are rejected"""
        caps = [SphericalCap(SphereSpec((0.1, 0.0), 0.5), (1.0, 0.0), 0.3)]
        with pytest.raises(InvalidGeometry):
            check_prop2(squared_norm(2), caps, 1.0)

    def test_sphere_outside_outer_ball(self):
        """Test r < R"""
        with pytest.raises(BadRadii):
            check_prop2(squared_norm(2), caps_on(2, 1.0, ((1.0, 0.0), 0.3)), 1.0)

    def test_empty_exceptional_set(self):
        """Test that at least one cap is needed"""
        with pytest.raises(InvalidGeometry):
            check_prop2(squared_norm(2), [], 1.0)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
