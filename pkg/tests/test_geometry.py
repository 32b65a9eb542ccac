"""
Tests for geometry module
"""

import math
import pytest
import sys
from pathlib import Path

import numpy as np
from scipy.integrate import quad

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import InvalidGeometry
from src.geometry import (
    BallSpec,
    SphereSpec,
    SphericalCap,
    ball_volume,
    cap_area_fraction,
    cap_surface_measure,
    cap_union_measure,
    circle_arcs,
    intersect_intervals,
    intersection_fraction,
    origin,
    pairwise_disjoint,
    reduce_caps,
    sharp_mean_constant,
    sphere_area,
    unit_ball_volume,
    unit_sphere_area,
)


def make_cap(m, r, axis, theta):
    return SphericalCap(SphereSpec(origin(m), r), tuple(axis), theta)


class TestMeasureConstants:
    """Tests for ball volumes, sphere areas and the sharp constant"""

    def test_ball_volume_examples(self):
        """Test interval length, disk area and r^m scaling"""
        assert ball_volume(1, 1.0) == pytest.approx(2.0, rel=1e-14)
        assert ball_volume(2, 1.0) == pytest.approx(math.pi, rel=1e-14)
        assert ball_volume(3, 2.0) == pytest.approx(4.0 * math.pi / 3.0 * 8.0, rel=1e-14)

    def test_sphere_area_examples(self):
        """Test circle length, unit sphere and the counting convention for m = 1"""
        assert sphere_area(2, 1.0) == pytest.approx(2.0 * math.pi, rel=1e-14)
        assert sphere_area(3, 1.0) == pytest.approx(4.0 * math.pi, rel=1e-14)
        assert sphere_area(1, 5.0) == 2.0

    @pytest.mark.parametrize("m", range(2, 9))
    @pytest.mark.parametrize("r", [0.5, 1.0, 3.7])
    def test_area_volume_identity(self, m, r):
        """Test sphere_area(m, r) = m * ball_volume(m, r) / r"""
        assert sphere_area(m, r) == pytest.approx(m * ball_volume(m, r) / r, rel=1e-12)

    @pytest.mark.parametrize("m", range(1, 9))
    def test_unit_constants_against_high_precision(self, m):
        """Test b_m against a 50-digit evaluation of the Gamma closed form"""
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 50
        exact = mpmath.pi ** (mpmath.mpf(m) / 2) / mpmath.gamma(mpmath.mpf(m) / 2 + 1)
        assert unit_ball_volume(m) == pytest.approx(float(exact), rel=1e-13)
        if m >= 2:
            assert unit_sphere_area(m) == pytest.approx(float(m * exact), rel=1e-13)

    def test_sharp_mean_constant_table(self):
        """Test the three cases of a_m"""
        assert sharp_mean_constant(1) == 0.5
        assert sharp_mean_constant(2) == pytest.approx(0.6065306597, abs=1e-10)
        assert sharp_mean_constant(3) == pytest.approx(2.0 / 3.0, rel=1e-14)
        assert sharp_mean_constant(4) == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-14)

    @pytest.mark.parametrize("m", range(1, 9))
    def test_sharp_mean_constant_in_unit_interval(self, m):
        """Test 0 < a_m < 1"""
        assert 0.0 < sharp_mean_constant(m) < 1.0

    @pytest.mark.parametrize("m", [0, -1, 2.5, True])
    def test_invalid_dimension(self, m):
        """Test that bad dimensions are rejected"""
        with pytest.raises(InvalidGeometry):
            unit_ball_volume(m)


class TestShapes:
    """Tests for balls, spheres and caps"""

    def test_ball_allows_zero_radius(self):
        """Test that a degenerate ball is valid"""
        ball = BallSpec((0.0, 1.0), 0.0)
        assert ball.dim == 2
        assert ball.radius == 0.0

    def test_sphere_needs_positive_radius(self):
        """Test that spheres of radius 0 are rejected"""
        with pytest.raises(InvalidGeometry):
            SphereSpec((0.0, 0.0), 0.0)

    def test_cap_axis_must_be_unit(self):
        """Test the unit-axis invariant"""
        with pytest.raises(InvalidGeometry):
            make_cap(3, 1.0, (1.0, 1.0, 0.0), 0.5)

    def test_cap_half_angle_above_pi_rejected(self):
        """Test that half angles beyond pi are rejected, not clamped"""
        with pytest.raises(InvalidGeometry):
            make_cap(3, 1.0, (0.0, 0.0, 1.0), math.pi + 1e-9)

    def test_cap_axis_dimension_mismatch(self):
        """Test that the axis must live in the sphere's space"""
        with pytest.raises(InvalidGeometry):
            make_cap(3, 1.0, (1.0, 0.0), 0.5)

    def test_contains_directions(self):
        """Test the open-cap membership mask"""
        cap = make_cap(3, 2.0, (0.0, 0.0, 1.0), math.pi / 4)
        directions = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])
        assert cap.contains_directions(directions).tolist() == [True, False, False]


class TestCapMeasure:
    """Tests for cap surface measures"""

    def test_arc_length(self):
        """Test 2 theta r on circles"""
        assert cap_surface_measure(make_cap(2, 3.0, (1.0, 0.0), 0.5)) == pytest.approx(3.0, rel=1e-14)

    def test_full_and_half_sphere(self):
        """Test theta = pi and theta = pi/2 on the unit sphere"""
        assert cap_surface_measure(make_cap(3, 1.0, (0.0, 0.0, 1.0), math.pi)) == pytest.approx(
            4.0 * math.pi, rel=1e-14
        )
        assert cap_surface_measure(make_cap(3, 1.0, (0.0, 0.0, 1.0), math.pi / 2)) == pytest.approx(
            2.0 * math.pi, rel=1e-13
        )

    def test_empty_cap(self):
        """Test theta = 0 gives zero measure"""
        assert cap_surface_measure(make_cap(4, 2.0, (1.0, 0.0, 0.0, 0.0), 0.0)) == 0.0

    @pytest.mark.parametrize("m", [3, 4, 5, 7])
    @pytest.mark.parametrize("theta", [0.1, 0.9, 2.0, 3.0])
    def test_against_numeric_integral(self, m, theta):
        """Test s_{m-2} r^{m-1} int_0^theta sin^{m-2} against quad"""
        r = 1.7
        integral, _ = quad(lambda t: math.sin(t) ** (m - 2), 0.0, theta)
        expected = unit_sphere_area(m - 1) * r ** (m - 1) * integral
        axis = (1.0,) + (0.0,) * (m - 1)
        assert cap_surface_measure(make_cap(m, r, axis, theta)) == pytest.approx(expected, rel=1e-10)

    @pytest.mark.parametrize("m", [2, 3, 6])
    def test_monotone_in_half_angle(self, m):
        """Test that the cap measure is nondecreasing in theta"""
        values = [cap_area_fraction(m, theta) for theta in np.linspace(0.0, math.pi, 41)]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert values[0] == 0.0
        assert values[-1] == 1.0


class TestCapUnions:
    """Tests for unions of caps"""

    def test_circle_arcs_merge_across_pi(self):
        """Test that arcs crossing the negative real axis merge"""
        caps = [make_cap(2, 1.0, (-1.0, 0.0), 0.3), make_cap(2, 1.0, (math.cos(2.9), math.sin(2.9)), 0.2)]
        arcs = circle_arcs(caps)
        assert all(-math.pi <= start < end <= math.pi for start, end in arcs)
        total = sum(end - start for start, end in arcs)
        assert total == pytest.approx(math.pi + 0.3 - 2.7, abs=1e-12)

    def test_circle_union_overlap(self):
        """Test overlapping arcs on a circle of radius 2"""
        caps = [make_cap(2, 2.0, (1.0, 0.0), 0.5), make_cap(2, 2.0, (math.cos(0.6), math.sin(0.6)), 0.5)]
        measure = cap_union_measure(caps)
        assert measure.method == "exact"
        assert measure.value == pytest.approx(2.0 * (0.6 + 1.0), rel=1e-12)

    def test_circle_union_covering(self):
        """Test that a covering family has the full circle length"""
        caps = [make_cap(2, 1.0, (1.0, 0.0), 2.0), make_cap(2, 1.0, (-1.0, 0.0), 2.0)]
        assert cap_union_measure(caps).value == pytest.approx(2.0 * math.pi, rel=1e-14)

    def test_nested_caps_reduce(self):
        """Test that a cap inside another is dropped"""
        outer = make_cap(3, 1.0, (0.0, 0.0, 1.0), 1.0)
        inner = make_cap(3, 1.0, (0.0, math.sin(0.2), math.cos(0.2)), 0.3)
        assert reduce_caps([inner, outer]) == [outer]
        measure = cap_union_measure([inner, outer])
        assert measure.method == "exact"
        assert measure.value == pytest.approx(cap_surface_measure(outer), rel=1e-14)

    def test_disjoint_caps_sum(self):
        """Test that disjoint caps add up exactly"""
        north = make_cap(3, 2.0, (0.0, 0.0, 1.0), 0.4)
        south = make_cap(3, 2.0, (0.0, 0.0, -1.0), 0.4)
        assert pairwise_disjoint([north, south])
        measure = cap_union_measure([north, south])
        assert measure.method == "exact"
        assert measure.value == pytest.approx(2.0 * cap_surface_measure(north), rel=1e-14)

    def test_overlapping_caps_inclusion_exclusion(self):
        """Test two overlapping caps in R^3 against a seeded sampling estimate"""
        a = make_cap(3, 1.0, (0.0, 0.0, 1.0), 0.8)
        b = make_cap(3, 1.0, (math.sin(0.6), 0.0, math.cos(0.6)), 0.8)
        measure = cap_union_measure([a, b])
        assert measure.method == "inclusion_exclusion"
        assert measure.error_bound < 1e-8
        rng = np.random.default_rng(5)
        directions = rng.standard_normal((1 << 20, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        covered = a.contains_directions(directions) | b.contains_directions(directions)
        fraction = covered.mean()
        sigma = math.sqrt(fraction * (1.0 - fraction) / len(directions))
        assert measure.value / (4.0 * math.pi) == pytest.approx(fraction, abs=5.0 * sigma)

    @pytest.mark.parametrize("m", [3, 4, 5])
    @pytest.mark.parametrize("phi", [math.pi / 3, 1.0, 2.5])
    def test_two_hemispheres_closed_form(self, m, phi):
        """Test the union of two hemispheres at angle phi: (pi + phi) / (2 pi) of the sphere"""
        north = (0.0,) * (m - 1) + (1.0,)
        tilted = (math.sin(phi),) + (0.0,) * (m - 2) + (math.cos(phi),)
        caps = [make_cap(m, 2.0, north, math.pi / 2), make_cap(m, 2.0, tilted, math.pi / 2)]
        measure = cap_union_measure(caps)
        assert measure.method == "inclusion_exclusion"
        expected = sphere_area(m, 2.0) * (math.pi + phi) / (2.0 * math.pi)
        assert measure.value == pytest.approx(expected, rel=1e-8)

    @pytest.mark.parametrize("m", [3, 5])
    def test_three_orthogonal_hemispheres(self, m):
        """Test that three orthogonal hemispheres miss exactly one octant"""
        caps = [make_cap(m, 1.0, tuple(np.eye(m)[i]), math.pi / 2) for i in range(3)]
        measure = cap_union_measure(caps)
        assert measure.method == "inclusion_exclusion"
        assert measure.value == pytest.approx(7.0 / 8.0 * sphere_area(m, 1.0), rel=1e-7)

    @pytest.mark.parametrize("m", [3, 4, 6])
    def test_lens_of_a_cap_with_itself(self, m):
        """Test that a cap intersected with itself keeps its incomplete-beta measure"""
        axis = np.eye(m)[0]
        fraction, error = intersection_fraction(m, [(axis, math.cos(0.7)), (axis, math.cos(0.7))])
        assert fraction == pytest.approx(cap_area_fraction(m, 0.7), rel=1e-9)
        assert error < 1e-9

    def test_disjoint_lens_is_empty(self):
        """Test that caps further apart than their half angles do not meet"""
        fraction, _ = intersection_fraction(3, [(np.eye(3)[0], math.cos(0.5)), (np.eye(3)[1], math.cos(0.5))])
        assert fraction == pytest.approx(0.0, abs=1e-12)

    def test_circle_intersection(self):
        """Test arcs of width 1 whose centers are 0.6 apart"""
        axes = [np.array([1.0, 0.0]), np.array([math.cos(0.6), math.sin(0.6)])]
        fraction, _ = intersection_fraction(2, [(axes[0], math.cos(0.5)), (axes[1], math.cos(0.5))])
        assert fraction == pytest.approx(0.4 / (2.0 * math.pi), rel=1e-12)

    def test_intervals(self):
        """Test pairwise interval intersection"""
        assert intersect_intervals([(0.0, 2.0), (3.0, 4.0)], [(1.0, 3.5)]) == [(1.0, 2.0), (3.0, 3.5)]
        assert intersect_intervals([(0.0, 1.0)], [(1.0, 2.0)]) == []

    def test_many_overlapping_caps_monte_carlo(self):
        """Test the seeded Monte Carlo union beyond three overlapping caps"""
        caps = [
            make_cap(3, 1.0, (math.sin(0.4 * k), 0.0, math.cos(0.4 * k)), 0.5)
            for k in range(4)
        ]
        first = cap_union_measure(caps, seed=3, samples=1 << 16)
        second = cap_union_measure(caps, seed=3, samples=1 << 16)
        assert first.method == "monte_carlo"
        assert first.value == second.value
        single = cap_surface_measure(caps[0])
        assert single - first.error_bound <= first.value <= 4.0 * single + first.error_bound

    def test_empty_family(self):
        """Test that an empty union has measure 0"""
        assert cap_union_measure([]).value == 0.0

    def test_mixed_spheres_rejected(self):
        """Test that caps on different spheres cannot be united"""
        with pytest.raises(InvalidGeometry):
            cap_union_measure([make_cap(3, 1.0, (0.0, 0.0, 1.0), 0.5), make_cap(3, 2.0, (0.0, 0.0, 1.0), 0.5)])


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
