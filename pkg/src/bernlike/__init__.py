"""Recursive Bernstein-like bases, alpha-Bernstein operators and shape checks."""

__version__ = "0.1.0"

from .basis_core import (
    BasisVector,
    basis_coeff_matrix,
    basis_derivative_grid,
    basis_grid,
    basis_polynomial_coeffs,
    eval_alpha_closed,
    eval_basis_derivative,
    eval_basis_point,
    eval_classical_bernstein,
    eval_starting_basis,
    expand_via_lower_order,
)
from .bernstein import BernsteinPoly
from .families import (
    AlphaQuadratic,
    ClassicalQuadratic,
    Custom,
    FamilySpec,
    SqRoot,
    alpha_family,
    classical_family,
    custom_family,
    sq_family,
    validate_family,
)
from .operators import (
    LimitEstimate,
    MomentValue,
    OperatorSample,
    apply_operator,
    convergence_table,
    gruss_voronovskaja_estimate,
    moment_direct,
    moment_recurrence,
    voronovskaja_estimate,
)
from .shape_analysis import (
    DataClass,
    DataVector,
    ShapeReport,
    check_convex_image,
    check_monotone_image,
    check_monotonicity_preserving_basis,
    cumulative_tail,
    second_derivative_form_n2,
)
