"""Orthogonal polynomial basis of the unit disk for the weight
1/(1 - x^2 - y^2): exact construction, verification, singular-weight
quadrature, spectral expansion, and a Dirichlet-compatible solve.
"""

from .poly_algebra import (
    BOUNDARY_FACTOR,
    ONE,
    Z,
    ZBAR,
    BivariatePoly,
    ComplexRational,
    NotDivisibleError,
)
from .jacobi import (
    ConvergenceError,
    JacobiParams,
    QuadratureRule,
    gauss_legendre,
    jacobi_eval,
    jacobi_norm_sq,
    quasipolynomial_q,
)
from .scattering import (
    PQIndex,
    RadialForm,
    SignValidationError,
    apply_modified_laplacian,
    basis_indices,
    eigencheck,
    eigenspace_indices,
    jacobi_form,
    norm_sq,
    radial_sum,
    rodrigues,
)
from .quadrature import (
    GramMatrix,
    MomentEstimate,
    gram,
    inner_product_basis,
    inner_product_function,
    inner_product_poly,
    moment_ladder,
    moment_slope,
    truncated_moment,
)
from .transform import (
    ExpansionTable,
    GridSample,
    basis_function,
    boundary_value_check,
    expand,
    expansion_residual,
    polar_grid,
    reconstruct,
    solve_exact,
    solve_weighted_poisson,
    synthesize_exact,
)

__version__ = "0.1.0"

__all__ = [
    "BOUNDARY_FACTOR",
    "ONE",
    "Z",
    "ZBAR",
    "BivariatePoly",
    "ComplexRational",
    "ConvergenceError",
    "ExpansionTable",
    "GramMatrix",
    "GridSample",
    "JacobiParams",
    "MomentEstimate",
    "NotDivisibleError",
    "PQIndex",
    "QuadratureRule",
    "RadialForm",
    "SignValidationError",
    "apply_modified_laplacian",
    "basis_function",
    "basis_indices",
    "boundary_value_check",
    "eigencheck",
    "eigenspace_indices",
    "expand",
    "expansion_residual",
    "gauss_legendre",
    "gram",
    "inner_product_basis",
    "inner_product_function",
    "inner_product_poly",
    "jacobi_eval",
    "jacobi_form",
    "jacobi_norm_sq",
    "moment_ladder",
    "moment_slope",
    "norm_sq",
    "polar_grid",
    "quasipolynomial_q",
    "radial_sum",
    "reconstruct",
    "rodrigues",
    "solve_exact",
    "solve_weighted_poisson",
    "synthesize_exact",
    "truncated_moment",
]
