"""
Tests for randomized inequality suites, order estimation and audit outcomes
"""

import math
import pytest
import sys
from pathlib import Path

import numpy as np

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.fields import (
    affine,
    constant,
    coordinate,
    extend_inward,
    make_harmonic_poly,
    make_log_modulus,
    newton_kernel,
    poisson_kernel,
    radial_power,
    squared_norm,
)
from src.geometry import SphereSpec, SphericalCap, origin
from src.growth import estimate_order, is_finite_order
from src.inequalities import (
    check_harnack,
    check_mean_chain,
    check_prop1,
    check_prop2,
    harnack_factor,
)
from src.liouville import (
    AuditStatus,
    ExceptionalSet,
    RadiiSequence,
    recurrence_factor,
    run_liouville_audit,
    synthetic_sequence_check,
)
from src.quadrature import QuadratureScheme, SchemeKind, sphere_mean


SUITE_DIMENSIONS = (1, 2, 3, 5)


def suite_scheme(m):
    """Small deterministic rules for m <= 3, seeded Monte Carlo above"""
    if m <= 2:
        return QuadratureScheme(SchemeKind.UNIFORM_CIRCLE, 512)
    if m == 3:
        return QuadratureScheme(SchemeKind.PRODUCT_GAUSS_SPHERE, 32)
    return QuadratureScheme(SchemeKind.MONTE_CARLO_SPHERE, 1 << 14, seed=11)


def unit_vector(rng, m):
    u = rng.normal(size=m)
    return u / np.linalg.norm(u)


def far_point(rng, center, low, high):
    """A point at distance in [low, high] from center"""
    center = np.asarray(center, dtype=float)
    return center + rng.uniform(low, high) * unit_vector(rng, len(center))


def point_in_ball(rng, m, radius):
    return unit_vector(rng, m) * radius * rng.uniform() ** (1.0 / m)


def harmonic_polys(m):
    if m == 2:
        return [[[1, [2, 0]], [-1, [0, 2]]], [[1, [1, 1]], [0.5, [1, 0]]]]
    return [
        [[1, [2, 0, 0]], [-1, [0, 2, 0]]],
        [[1, [1, 1, 1]]],
        [[1, [2, 0, 0]], [1, [0, 2, 0]], [-2, [0, 0, 2]]],
    ]


def chain_case(rng, m):
    """A subharmonic field and a closed ball B(x, R) inside its domain"""
    R = rng.uniform(0.5, 3.0)
    if m == 1:
        x = rng.uniform(-1.0, 1.0, size=1)
        choices = [
            lambda: constant(1, rng.uniform(-3.0, 3.0)),
            lambda: affine(coordinate(1, 0), rng.uniform(0.2, 3.0), rng.uniform(-2.0, 2.0)),
            lambda: squared_norm(1),
            lambda: radial_power(1, 4.0),
            lambda: affine(squared_norm(1), rng.uniform(0.2, 3.0), rng.uniform(-2.0, 2.0)),
        ]
        return choices[rng.integers(len(choices))](), R, x
    if m == 5:
        choices = [
            lambda: constant(5, rng.uniform(-3.0, 3.0)),
            lambda: squared_norm(5),
            lambda: radial_power(5, rng.uniform(1.0, 3.0)),
            lambda: affine(squared_norm(5), rng.uniform(0.2, 3.0), rng.uniform(-2.0, 2.0)),
        ]
        return choices[rng.integers(len(choices))](), R, origin(5)

    x = rng.uniform(-1.0, 1.0, size=m)
    polys = harmonic_polys(m)
    choices = [
        lambda: constant(m, rng.uniform(-3.0, 3.0)),
        lambda: coordinate(m, int(rng.integers(m))),
        lambda: squared_norm(m),
        lambda: make_harmonic_poly(m, polys[rng.integers(len(polys))]),
        lambda: poisson_kernel(m, far_point(rng, x, 2.0 * R, 4.0 * R)),
        lambda: newton_kernel(m, far_point(rng, x, 2.0 * R, 4.0 * R)),
    ]
    index = rng.integers(len(choices) + 1)
    if index == len(choices):
        return radial_power(m, rng.uniform(1.0, 3.0)), R, origin(m)
    return choices[index](), R, x


def prop1_case(rng, m):
    """A field on a neighborhood of B(R) with radii r < R, a shell width and probes"""
    R = rng.uniform(1.0, 3.0)
    r = R * rng.uniform(0.2, 0.7)
    t = (R - r) * rng.uniform(0.1, 0.9)
    spread = 0.25 * r if m == 5 else r
    probes = [point_in_ball(rng, m, spread) for _ in range(2)]
    choices = [
        lambda: constant(m, rng.uniform(-2.0, 3.0)),
        lambda: squared_norm(m),
        lambda: affine(squared_norm(m), rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0)),
    ]
    if m == 1:
        choices += [
            lambda: radial_power(1, 4.0),
            lambda: affine(coordinate(1, 0), 1.0, R * rng.uniform(1.0, 2.0)),
        ]
    elif m == 5:
        choices.append(lambda: radial_power(5, rng.uniform(1.0, 2.0)))
    else:
        shift = [[R * rng.uniform(1.0, 2.0), [0] * m], [1, [1] + [0] * (m - 1)]]
        choices += [
            lambda: radial_power(m, rng.uniform(1.0, 3.0)),
            lambda: poisson_kernel(m, far_point(rng, origin(m), 2.0 * R, 4.0 * R)),
            lambda: make_harmonic_poly(m, shift),
        ]
        if m == 3:
            choices.append(lambda: newton_kernel(3, far_point(rng, origin(3), 2.0 * R, 4.0 * R)))
    return choices[rng.integers(len(choices))](), r, R, t, probes


def random_caps(rng, m, r, count):
    sphere = SphereSpec(origin(m), r)
    return [
        SphericalCap(sphere, tuple(unit_vector(rng, m)), rng.uniform(0.05, 1.2))
        for _ in range(count)
    ]


def failing(reports):
    return [report.describe() for report in reports if not report.passed]


class TestRandomizedMeanChain:
    """Tests for v(x) <= S(x, a_m R) <= B(x, R) <= S(x, R) on random cases"""

    def test_two_hundred_cases(self):
        """Test 50 seeded cases in each of R^1, R^2, R^3 and R^5"""
        failures = []
        for m in SUITE_DIMENSIONS:
            rng = np.random.default_rng(100 + m)
            scheme = suite_scheme(m)
            for case in range(50):
                v, R, x = chain_case(rng, m)
                reports = check_mean_chain(v, R, scheme, x)
                assert len(reports) == 3
                failures += [(m, case, v.label, text) for text in failing(reports)]
        assert failures == []


class TestRandomizedProp1:
    """Tests for the upper bounds on B(r) in terms of S_{v+}(R)"""

    def test_two_hundred_cases(self):
        """Test 50 seeded cases per dimension with two probes each"""
        failures = []
        for m in SUITE_DIMENSIONS:
            rng = np.random.default_rng(200 + m)
            scheme = suite_scheme(m)
            for case in range(50):
                v, r, R, t, probes = prop1_case(rng, m)
                reports = check_prop1(v, r, R, probes, t, scheme)
                labels = {report.label for report in reports}
                assert "prop1.point_vs_limit_bound" in labels
                assert "prop1.limit_surrogate[0.001]" in labels
                failures += [(m, case, v.label, text) for text in failing(reports)]
        assert failures == []


class TestRandomizedProp2:
    """Tests for the cap bound on random unions of caps"""

    def test_hundred_cases(self):
        """Test 50 seeded cases on circles and 50 on spheres in R^3"""
        failures = []
        for m in (2, 3):
            rng = np.random.default_rng(300 + m)
            scheme = suite_scheme(m)
            for case in range(50):
                R = rng.uniform(1.0, 3.0)
                r = R * rng.uniform(0.2, 0.8)
                caps = random_caps(rng, m, r, int(rng.integers(1, 4)))
                choices = [
                    lambda: constant(m, rng.uniform(-2.0, 3.0)),
                    lambda: coordinate(m, int(rng.integers(m))),
                    lambda: squared_norm(m),
                    lambda: radial_power(m, rng.uniform(1.0, 3.0)),
                    lambda: poisson_kernel(m, far_point(rng, origin(m), 2.0 * R, 4.0 * R)),
                ]
                v = choices[rng.integers(len(choices))]()
                report = check_prop2(v, caps, R, scheme, seed=case)
                if not report.passed:
                    failures.append((m, case, v.label, report.describe()))
        assert failures == []


class TestRandomizedHarnack:
    """Tests for the Harnack bound on nonnegative harmonic fields"""

    def test_exact_factor(self):
        """Test (1 + 1/2) / (1 - 1/2) = 3 on the unit disk"""
        assert harnack_factor(2, 0.5, 1.0) == 3.0

    def test_fifty_cases(self):
        """Test Poisson kernels, positive constants and shifted coordinates"""
        rng = np.random.default_rng(400)
        failures = []
        for case in range(50):
            m = SUITE_DIMENSIONS[case % len(SUITE_DIMENSIONS)]
            R = rng.uniform(0.5, 3.0)
            kind = case % 3
            if kind == 0:
                h = poisson_kernel(m, far_point(rng, origin(m), 1.2 * R, 3.0 * R))
            elif kind == 1:
                h = constant(m, rng.uniform(0.1, 5.0))
            else:
                h = make_harmonic_poly(m, [[R * rng.uniform(1.0, 2.0), [0] * m], [1, [1] + [0] * (m - 1)]])
            probes = [point_in_ball(rng, m, 0.95 * R) for _ in range(3)]
            reports = check_harnack(h, R, probes, seed=case)
            assert len(reports) == 3
            failures += [(m, case, h.label, text) for text in failing(reports)]
        assert failures == []


def harmonic_catalog():
    """Ten harmonic fields in R^2 and ten in R^3, with poles and zeros far from B(x, r)"""
    x2, x3 = (0.3, -0.2), (0.2, -0.1, 0.4)
    plane = [
        coordinate(2, 1),
        make_harmonic_poly(2, [[1, [2, 0]], [-1, [0, 2]]]),
        make_harmonic_poly(2, [[1, [3, 0]], [-3, [1, 2]]]),
        make_harmonic_poly(2, [[1, [4, 0]], [-6, [2, 2]], [1, [0, 4]]]),
        make_harmonic_poly(2, [[2, [1, 1]], [1, [0, 0]], [-0.5, [0, 1]]]),
        poisson_kernel(2, (4.0, 0.0)),
        poisson_kernel(2, (-2.0, 3.5)),
        newton_kernel(2, (0.0, 4.5)),
        make_log_modulus([-5.0, 1.0]),
        make_log_modulus([24.0, -10.0, 1.0]),
    ]
    space = [
        coordinate(3, 2),
        make_harmonic_poly(3, [[1, [2, 0, 0]], [-1, [0, 2, 0]]]),
        make_harmonic_poly(3, [[1, [1, 1, 1]]]),
        make_harmonic_poly(3, [[1, [2, 0, 0]], [1, [0, 2, 0]], [-2, [0, 0, 2]]]),
        make_harmonic_poly(3, [[1, [3, 0, 0]], [-3, [1, 2, 0]], [1, [0, 0, 1]]]),
        poisson_kernel(3, (4.0, 0.0, 0.0)),
        poisson_kernel(3, (0.0, -3.0, 3.0)),
        newton_kernel(3, (0.0, 0.0, 4.5)),
        newton_kernel(3, (-3.0, 3.0, 0.0)),
        constant(3, -1.5),
    ]
    return [(h, x2) for h in plane] + [(h, x3) for h in space]


class TestMeanValueProperty:
    """Tests for S_h(x, r) = h(x) on harmonic fields"""

    def test_twenty_harmonic_fields(self):
        """Test agreement to 1e-8 at the default resolutions"""
        schemes = {
            2: QuadratureScheme(SchemeKind.UNIFORM_CIRCLE, 4096),
            3: QuadratureScheme(SchemeKind.PRODUCT_GAUSS_SPHERE, 256),
        }
        catalog = harmonic_catalog()
        assert len(catalog) == 20
        for h, x in catalog:
            for r in (0.5, 1.0):
                estimate = sphere_mean(h, x, r, schemes[h.dim])
                assert abs(estimate.value - h.value_at(x)) <= 1e-8, h.label


class TestFactorMonotonicity:
    """Tests for closed-form monotonicity of the factors"""

    def test_harnack_factor_grid(self):
        """Test growth in |x| and m, decay in R, and the value 1 at the center"""
        moduli = np.linspace(0.0, 0.9, 10)
        for m in range(1, 7):
            for R in (1.0, 2.0, 5.0):
                values = [harnack_factor(m, s * R, R) for s in moduli]
                assert values[0] == 1.0
                assert all(a < b for a, b in zip(values, values[1:]))
            for modulus in (0.1, 0.5, 0.9):
                by_R = [harnack_factor(m, modulus, R) for R in (1.0, 1.5, 3.0, 10.0)]
                assert all(a > b for a, b in zip(by_R, by_R[1:]))
        for s in (0.1, 0.5, 0.9):
            by_m = [harnack_factor(m, s, 1.0) for m in range(1, 7)]
            assert all(a <= b for a, b in zip(by_m, by_m[1:]))

    def test_recurrence_factor_decreases_in_q(self):
        """Test strict decay in q for m >= 2 and constancy for m = 1"""
        qs = (1.1, 1.5, 2.0, 3.0, 8.0)
        for m in range(2, 7):
            for epsilon in (0.01, 0.5, 2.0):
                values = [recurrence_factor(m, q, epsilon) for q in qs]
                assert all(a > b for a, b in zip(values, values[1:]))
        assert len({recurrence_factor(1, q, 0.5) for q in qs}) == 1


class TestSyntheticRecurrence:
    """Tests for the array-level recurrence over 60 factors"""

    FACTORS = [1.0 / k for k in range(1, 61)]

    def test_constant_profile_bound(self):
        """Test that chaining 1/k against a constant profile bounds S(r_1) by 1/60!"""
        check = synthetic_sequence_check(self.FACTORS, [1.0] * 61)
        assert check.implied_bound <= 1e-10
        assert check.implied_bound == pytest.approx(1.0 / math.factorial(60), rel=1e-9)
        assert check.best_index == 60
        assert not check.premise_holds
        assert not check.forces_zero

    def test_profile_obeying_recurrence_forces_zero(self):
        """Test a profile with S(r_{k+1}) = k S(r_k) and a tiny first value"""
        profile = [1e-90]
        for k in range(1, 61):
            profile.append(profile[-1] * k)
        check = synthetic_sequence_check(self.FACTORS, profile)
        assert check.premise_holds
        assert check.implied_bound <= 1e-10
        assert check.forces_zero


class TestOrderEstimation:
    """Tests for orders of closed-form profiles"""

    @pytest.mark.parametrize("power", [0.5, 2.5, 5.0])
    def test_radial_power(self, power):
        """Test that |x|^p has order p"""
        estimate = estimate_order(radial_power(2, power))
        assert estimate.order_proxy == pytest.approx(power, abs=0.02)

    def test_exp_of_cube(self):
        """Test ln|exp(z^3)| = Re z^3, of order 3 and finite below ceiling 10"""
        estimate = estimate_order(make_log_modulus(exp_degree=3))
        assert estimate.order_proxy == pytest.approx(3.0, abs=0.02)
        assert is_finite_order(estimate, 10.0)

    @pytest.mark.parametrize("shift", [-3.0, 1.0, 10.0])
    def test_invariant_under_constants(self, shift):
        """Test that adding a constant moves the proxy by less than 0.02"""
        for v in (coordinate(2, 0), squared_norm(2), radial_power(2, 2.5), make_log_modulus(exp_degree=2)):
            base = estimate_order(v).order_proxy
            moved = estimate_order(affine(v, 1.0, shift)).order_proxy
            assert abs(moved - base) < 0.02, v.label

    @pytest.mark.parametrize("scale", [0.5, 3.0])
    def test_invariant_under_scaling(self, scale):
        """Test that scaling by c > 0 moves the proxy by less than 0.02"""
        for v in (coordinate(2, 0), squared_norm(2), radial_power(2, 2.5), make_log_modulus(exp_degree=2)):
            base = estimate_order(v).order_proxy
            scaled = estimate_order(affine(v, scale)).order_proxy
            assert abs(scaled - base) < 0.02, v.label


class TestAuditExamples:
    """Tests for audit verdicts on worked examples"""

    def test_exponential_is_unbounded_off_exceptional(self):
        """Test ln|exp z| = Re z against caps of half angle 1/k at level 0"""
        seq = RadiiSequence.geometric(1.0, 2.0, 8)
        E = ExceptionalSet.shrinking(2, seq.radii)
        verdict = run_liouville_audit(make_log_modulus(exp_degree=1), E, seq, M=0.0)
        assert verdict.status == AuditStatus.UNBOUNDED_OFF_EXCEPTIONAL

    def test_extended_logarithm_is_consistent_bounded(self):
        """Test max{ln|z|, 0} on radii 2, ..., 2^8 at level ln(2^8) + 1"""
        v = extend_inward(make_log_modulus([0.0, 1.0]), 0.0, 1.0)
        seq = RadiiSequence.geometric(1.0, 2.0, 8)
        E = ExceptionalSet.shrinking(2, seq.radii)
        verdict = run_liouville_audit(v, E, seq, M=math.log(2.0 ** 8) + 1.0)
        assert verdict.status == AuditStatus.CONSISTENT_BOUNDED
        assert verdict.sphere_means == [0.0] * 8
        assert verdict.finite_order


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
