"""axialmono: exact Clifford algebra arithmetic, two-sided monogenic
inner polynomials, Bessel-based closed-form axial solutions, and
rigorous residual verification.

The float geometric-product kernel is compiled (Cython) when available
and falls back to a pure-numpy implementation; ``KERNEL_BACKEND`` names
the active one.
"""

from .kernels import BACKEND as KERNEL_BACKEND
from .errors import (
    DomainError,
    IntegralityError,
    ParityError,
    TruncationError,
    UnsupportedOrderError,
)
from .clifford import (
    Multivector,
    blade_product,
    geometric_product,
    grade,
    grade_project,
    sandwich_sum,
)
from .polynomials import (
    MonogenicBasis,
    PolyMV,
    dirac_left,
    dirac_right,
    euler_check,
    generate_pkl,
    x_vector,
)
from .bessel import Order, bessel_j, bessel_y, z_family
from .series import (
    RadialSeries,
    bessel_seed_series,
    cnj_extract,
    evaluate_table,
    lambda_coeff,
    seed_scale,
    series_solve,
    series_step,
)
from .axial import (
    AxialQuad,
    AxialTriple,
    ClosedFormParams,
    ProfileSeries,
    ResidualReport,
    a1_closed,
    a2_closed,
    a3_closed,
    assemble_F,
    assemble_F_batch,
    closed_profile_quad,
    closed_profile_triple,
    dirac_residual_numeric,
    residual_axial_left,
    residual_system_I,
    residual_system_II,
    residual_system_combined,
    residual_system_combined_rel,
    residual_system_radial,
    residual_system_radial_rel,
    verify_grid,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    # errors
    "DomainError",
    "IntegralityError",
    "ParityError",
    "TruncationError",
    "UnsupportedOrderError",
    # clifford
    "Multivector",
    "blade_product",
    "geometric_product",
    "grade",
    "grade_project",
    "sandwich_sum",
    # polynomials
    "MonogenicBasis",
    "PolyMV",
    "dirac_left",
    "dirac_right",
    "euler_check",
    "generate_pkl",
    "x_vector",
    # bessel
    "Order",
    "bessel_j",
    "bessel_y",
    "z_family",
    # series
    "RadialSeries",
    "bessel_seed_series",
    "cnj_extract",
    "evaluate_table",
    "lambda_coeff",
    "seed_scale",
    "series_solve",
    "series_step",
    # axial
    "AxialQuad",
    "AxialTriple",
    "ClosedFormParams",
    "ProfileSeries",
    "ResidualReport",
    "a1_closed",
    "a2_closed",
    "a3_closed",
    "assemble_F",
    "assemble_F_batch",
    "closed_profile_quad",
    "closed_profile_triple",
    "dirac_residual_numeric",
    "residual_axial_left",
    "residual_system_I",
    "residual_system_II",
    "residual_system_combined",
    "residual_system_combined_rel",
    "residual_system_radial",
    "residual_system_radial_rel",
    "verify_grid",
]
