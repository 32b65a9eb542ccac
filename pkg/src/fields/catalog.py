"""
Catalog of test fields and the named-constructor grammar used by run configs
测试场目录及运行配置使用的具名构造语法
"""

import math
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from loguru import logger

from ..errors import ConfigValidationError, NotHarmonic, NotSubharmonic, PotentialLabError, ZeroFunction
from .scalar_field import (
    FieldClass,
    ScalarField,
    affine,
    extend_inward,
    positive_part,
    restrict_exterior,
    shift_sub_const,
)


LAPLACIAN_STEP = 1e-3
LAPLACIAN_TOLERANCE = 1e-4
LAPLACIAN_PROBES = 100

Monomial = Tuple[float, Tuple[int, ...]]


def as_complex(value: Any) -> complex:
    """Parse a complex number given as a number or an [re, im] pair"""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex coefficient must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def _norms(points: np.ndarray) -> np.ndarray:
    return np.linalg.norm(points, axis=1)


def _as_complex_plane(points: np.ndarray) -> np.ndarray:
    return points[:, 0] + 1j * points[:, 1]


def _safe_log_abs(values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(values))


def constant(m: int, value: float) -> ScalarField:
    """The constant field v = value"""
    if not math.isfinite(value):
        raise ValueError(f"constant must be finite, got {value}")
    value = float(value)
    return ScalarField(
        evaluator=lambda p: np.full(len(p), value),
        dim=m,
        class_tag=FieldClass.HARMONIC,
        label=f"const({value:g})"
    )


def coordinate(m: int, index: int) -> ScalarField:
    """The coordinate function x_index (0-based)"""
    if not 0 <= index < m:
        raise ValueError(f"coordinate index {index} out of range for R^{m}")
    return ScalarField(
        evaluator=lambda p: p[:, index].copy(),
        dim=m,
        class_tag=FieldClass.HARMONIC,
        label=f"x{index + 1}"
    )


def squared_norm(m: int) -> ScalarField:
    """|x|^2, convex and subharmonic"""
    return ScalarField(
        evaluator=lambda p: np.sum(p * p, axis=1),
        dim=m,
        class_tag=FieldClass.CONVEX,
        label="|x|^2"
    )


def radial_power(m: int, power: float) -> ScalarField:
    """
    |x|^power

    Subharmonic on R^m for power > 0 when m >= 2; convex for power >= 1 when m = 1.
    """
    if not power > 0 or (m == 1 and power < 1):
        raise ValueError(f"|x|^{power} is not subharmonic on R^{m}")
    return ScalarField(
        evaluator=lambda p: _norms(p) ** power,
        dim=m,
        class_tag=FieldClass.CONVEX if power >= 1 else FieldClass.SUBHARMONIC,
        label=f"|x|^{power:g}"
    )


def newton_kernel(m: int, pole: Sequence[float]) -> ScalarField:
    """
    Fundamental subharmonic kernel centered at pole

    |x - a| for m = 1, ln|x - a| for m = 2, -|x - a|^{2-m} for m >= 3; -inf at the pole.
    """
    a = np.asarray(pole, dtype=float)
    if a.shape != (m,):
        raise ValueError(f"pole must have {m} coordinates, got {a.tolist()}")

    def evaluate(points: np.ndarray) -> np.ndarray:
        d = _norms(points - a)
        if m == 1:
            return d
        if m == 2:
            return _safe_log_abs(d)
        with np.errstate(divide="ignore"):
            return -(d ** (2.0 - m))

    return ScalarField(
        evaluator=evaluate,
        dim=m,
        class_tag=FieldClass.CONVEX if m == 1 else FieldClass.SUBHARMONIC,
        label=f"newton(a={a.tolist()})"
    )


def poisson_kernel(m: int, pole: Sequence[float]) -> ScalarField:
    """
    Normalized Poisson kernel (|a|^2 - |x|^2) |a|^{m-2} / |x - a|^m

    Harmonic off the pole, positive on the open ball of radius |a|, equal to 1 at 0.
    The pole is removed from the domain: balls and spheres used with this field
    must avoid it.
    """
    a = np.asarray(pole, dtype=float)
    if a.shape != (m,) or not np.linalg.norm(a) > 0:
        raise ValueError(f"pole must be a nonzero point of R^{m}, got {a.tolist()}")
    rho = float(np.linalg.norm(a))

    def evaluate(points: np.ndarray) -> np.ndarray:
        d = _norms(points - a)
        return (rho * rho - np.sum(points * points, axis=1)) * rho ** (m - 2) / d ** m

    return ScalarField(
        evaluator=evaluate,
        dim=m,
        class_tag=FieldClass.HARMONIC,
        label=f"poisson(a={a.tolist()})",
        poles=(tuple(a),)
    )


def _parse_monomials(m: int, terms: Sequence) -> List[Monomial]:
    parsed = []
    for term in terms:
        if len(term) != 2:
            raise ValueError(f"polynomial term must be [coefficient, exponents], got {term!r}")
        coefficient, exponents = term
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != m or any(e < 0 for e in exponents):
            raise ValueError(f"exponents {exponents} do not describe a monomial on R^{m}")
        parsed.append((float(coefficient), exponents))
    return parsed


def _monomial_evaluator(terms: List[Monomial]) -> Callable[[np.ndarray], np.ndarray]:
    def evaluate(points: np.ndarray) -> np.ndarray:
        total = np.zeros(len(points))
        for coefficient, exponents in terms:
            total += coefficient * np.prod(points ** np.asarray(exponents), axis=1)
        return total

    return evaluate


def discrete_laplacian(
    evaluator: Callable[[np.ndarray], np.ndarray],
    points: np.ndarray,
    step: float = LAPLACIAN_STEP
) -> np.ndarray:
    """Central second-difference Laplacian at the rows of points"""
    m = points.shape[1]
    center = evaluator(points)
    total = np.zeros(len(points))
    for i in range(m):
        offset = np.zeros(m)
        offset[i] = step
        total += evaluator(points + offset) - 2.0 * center + evaluator(points - offset)
    return total / (step * step)


def make_harmonic_poly(m: int, terms: Sequence, seed: int = 0) -> ScalarField:
    """
    Harmonic polynomial given as a list of [coefficient, exponents] monomials

    Args:
        m: Dimension
        terms: Monomials, e.g. [[1, [2, 0, 0]], [-1, [0, 2, 0]]] for x^2 - y^2
        seed: Seed of the random probe points

    Returns:
        ScalarField: Field tagged harmonic

    Raises:
        NotHarmonic: If the finite-difference Laplacian exceeds 1e-4 * scale
    """
    monomials = _parse_monomials(m, terms)
    evaluate = _monomial_evaluator(monomials)
    probes = np.random.default_rng(seed).uniform(-1.0, 1.0, size=(LAPLACIAN_PROBES, m))
    scale = max(1.0, float(np.max(np.abs(evaluate(probes)))))
    laplacian = np.abs(discrete_laplacian(evaluate, probes))
    worst = float(laplacian.max())
    if worst > LAPLACIAN_TOLERANCE * scale:
        index = int(laplacian.argmax())
        raise NotHarmonic(
            f"discrete Laplacian {worst:.3g} exceeds {LAPLACIAN_TOLERANCE * scale:.3g} "
            f"at {probes[index].tolist()}"
        )
    label = " + ".join(f"{c:g}*x^{list(e)}" for c, e in monomials) or "0"
    return ScalarField(evaluator=evaluate, dim=m, class_tag=FieldClass.HARMONIC, label=label)


def make_log_modulus(
    coefficients: Optional[Sequence] = None,
    exp_degree: Optional[int] = None,
    exp_coefficient: Any = 1.0
) -> ScalarField:
    """
    ln|f| on the complex plane (identified with R^2)

    f is the polynomial with ascending coefficients, times exp(c z^d) when
    exp_degree is given; either part may be omitted.

    Args:
        coefficients: Ascending polynomial coefficients (numbers or [re, im] pairs)
        exp_degree: Degree d of the exponential factor exp(c z^d)
        exp_coefficient: Coefficient c of the exponential factor

    Returns:
        ScalarField: Field tagged log_modulus, -inf at the zeros of f

    Raises:
        ZeroFunction: If all polynomial coefficients vanish
    """
    if coefficients is None and exp_degree is None:
        raise ValueError("log-modulus field needs polynomial coefficients or an exponential degree")
    poly = None
    if coefficients is not None:
        poly = np.asarray([as_complex(c) for c in coefficients], dtype=complex)
        if poly.size == 0 or not np.any(poly != 0):
            raise ZeroFunction("all polynomial coefficients vanish")
    exp_c = as_complex(exp_coefficient)
    if exp_degree is not None and (int(exp_degree) != exp_degree or exp_degree < 0):
        raise ValueError(f"exponential degree must be a nonnegative integer, got {exp_degree}")

    def evaluate(points: np.ndarray) -> np.ndarray:
        z = _as_complex_plane(points)
        values = np.zeros(len(points))
        if poly is not None:
            values += _safe_log_abs(P.polyval(z, poly))
        if exp_degree is not None:
            values += np.real(exp_c * z ** int(exp_degree))
        return values

    parts = []
    if poly is not None:
        parts.append(f"poly{[complex(c) for c in poly]}")
    if exp_degree is not None:
        parts.append(f"exp({exp_c}*z^{exp_degree})")
    return ScalarField(
        evaluator=evaluate,
        dim=2,
        class_tag=FieldClass.LOG_MODULUS,
        label=f"ln|{' * '.join(parts)}|"
    )


def make_log_modulus_multi(n: int, terms: Sequence) -> ScalarField:
    """
    ln|F| for a polynomial F on C^n given as [coefficient, exponents] monomials

    C^n is identified with R^{2n} as (Re w1, Im w1, Re w2, Im w2, ...).
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    monomials = []
    for term in terms:
        coefficient, exponents = term
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != n or any(e < 0 for e in exponents):
            raise ValueError(f"exponents {exponents} do not describe a monomial on C^{n}")
        monomials.append((as_complex(coefficient), exponents))
    if not any(c != 0 for c, _ in monomials):
        raise ZeroFunction("all polynomial coefficients vanish")

    def evaluate(points: np.ndarray) -> np.ndarray:
        w = points[:, 0::2] + 1j * points[:, 1::2]
        total = np.zeros(len(points), dtype=complex)
        for coefficient, exponents in monomials:
            total += coefficient * np.prod(w ** np.asarray(exponents), axis=1)
        return _safe_log_abs(total)

    return ScalarField(
        evaluator=evaluate,
        dim=2 * n,
        class_tag=FieldClass.LOG_MODULUS,
        label=f"ln|F on C^{n}|"
    )


def _build_nested(params: Dict[str, Any]) -> ScalarField:
    if "of" not in params:
        raise ValueError("combinator needs the nested field under 'of'")
    return build_field(params["of"], spot_check=False)


FIELD_BUILDERS: Dict[str, Callable[[Dict[str, Any]], ScalarField]] = {
    "constant": lambda p: constant(int(p["m"]), float(p["value"])),
    "coordinate": lambda p: coordinate(int(p["m"]), int(p.get("index", 0))),
    "squared_norm": lambda p: squared_norm(int(p["m"])),
    "radial_power": lambda p: radial_power(int(p["m"]), float(p["power"])),
    "newton_kernel": lambda p: newton_kernel(int(p["m"]), p["pole"]),
    "poisson_kernel": lambda p: poisson_kernel(int(p["m"]), p["pole"]),
    "harmonic_poly": lambda p: make_harmonic_poly(int(p["m"]), p["terms"]),
    "log_modulus_poly": lambda p: make_log_modulus(coefficients=p["coeffs"]),
    "log_modulus_exp": lambda p: make_log_modulus(
        coefficients=p.get("coeffs"),
        exp_degree=int(p["degree"]),
        exp_coefficient=p.get("coefficient", 1.0)
    ),
    "log_modulus_multi": lambda p: make_log_modulus_multi(int(p["n"]), p["terms"]),
    "positive_part": lambda p: positive_part(_build_nested(p)),
    "shift_sub_const": lambda p: shift_sub_const(_build_nested(p), float(p["M"])),
    "extend_inward": lambda p: extend_inward(_build_nested(p), float(p["M0"]), float(p["r1"])),
    "affine": lambda p: affine(_build_nested(p), float(p.get("scale", 1.0)), float(p.get("shift", 0.0))),
}

COMPOSITE_BUILDERS = ("positive_part", "shift_sub_const", "extend_inward", "affine")


def check_composite(field: ScalarField, seed: int = 0) -> None:
    """
    Spot-check the sub-mean-value inequality of a field built from combinators

    Raises:
        NotSubharmonic: If any spot-check center fails
    """
    from ..quadrature.means import spot_check_sub_mean_value

    report = spot_check_sub_mean_value(field, seed=seed)
    logger.debug(
        f"spot check of {field.label}: {report.probes - report.skipped} centers, "
        f"worst slack {report.worst_slack:.3g}"
    )
    if not report.passed:
        worst = min(report.failures, key=lambda failure: failure["slack"])
        raise NotSubharmonic(
            f"{field.label} fails the sub-mean-value inequality at {len(report.failures)} of "
            f"{report.probes} centers; worst at {worst['center']} with radius {worst['radius']:.3g}: "
            f"value {worst['value']:.6g} > sphere mean {worst['sphere_mean']:.6g}"
        )


def build_field(spec: Dict[str, Any], spot_check: bool = True) -> ScalarField:
    """
    Build a field from a named-constructor specification

    Args:
        spec: {"name": ..., "params": {...}, "exterior_radius": optional float}
        spot_check: Run the sub-mean-value spot check when the outermost
            constructor is a combinator

    Returns:
        ScalarField: The constructed field

    Raises:
        ConfigValidationError: If the name is unknown or a parameter is missing
            or has the wrong type
        NotSubharmonic: If a composite field fails the spot check
    """
    if not isinstance(spec, dict):
        raise ConfigValidationError("field", f"field specification must be an object, got {spec!r}")
    name = spec.get("name")
    if name not in FIELD_BUILDERS:
        raise ConfigValidationError(
            "field.name", f"unknown field constructor {name!r}; known: {sorted(FIELD_BUILDERS)}"
        )
    params = spec.get("params") or {}
    if not isinstance(params, dict):
        raise ConfigValidationError("field.params", f"params of {name!r} must be an object, got {params!r}")
    try:
        field = FIELD_BUILDERS[name](dict(params))
        exterior = spec.get("exterior_radius")
        if exterior is not None:
            field = restrict_exterior(field, float(exterior))
    except PotentialLabError:
        raise
    except KeyError as e:
        raise ConfigValidationError("field.params", f"field {name!r} is missing parameter {e.args[0]!r}") from e
    except (TypeError, ValueError) as e:
        raise ConfigValidationError("field.params", f"field {name!r}: {e}") from e
    logger.debug(f"built field {field.describe()}")
    if spot_check and name in COMPOSITE_BUILDERS:
        check_composite(field)
    return field
