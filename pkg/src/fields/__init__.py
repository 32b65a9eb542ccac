"""
Fields module: evaluatable test fields and combinators
场模块：可求值的测试场与组合子
"""

from .catalog import (
    FIELD_BUILDERS,
    as_complex,
    build_field,
    constant,
    coordinate,
    discrete_laplacian,
    make_harmonic_poly,
    make_log_modulus,
    make_log_modulus_multi,
    newton_kernel,
    poisson_kernel,
    radial_power,
    squared_norm,
)
from .scalar_field import (
    NEG_INF,
    ExtendedReal,
    FieldClass,
    ScalarField,
    affine,
    complex_direction,
    extend_inward,
    positive_part,
    restrict_exterior,
    shift_sub_const,
    slice_complex_line,
)

__all__ = [
    "FIELD_BUILDERS",
    "NEG_INF",
    "ExtendedReal",
    "FieldClass",
    "ScalarField",
    "affine",
    "as_complex",
    "build_field",
    "complex_direction",
    "constant",
    "coordinate",
    "discrete_laplacian",
    "extend_inward",
    "make_harmonic_poly",
    "make_log_modulus",
    "make_log_modulus_multi",
    "newton_kernel",
    "poisson_kernel",
    "positive_part",
    "radial_power",
    "restrict_exterior",
    "shift_sub_const",
    "slice_complex_line",
    "squared_norm",
]
