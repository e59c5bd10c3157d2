"""Exact cohomological rank functions on polarized abelian varieties."""

from .errors import *  # noqa: F401,F403
from .exact import AlgReal, Poly, algreal_compare, is_real_rooted, isolate_real_roots, poly_eval, sturm_count, taylor_shift
from .rank import (
    SMOOTH,
    UNKNOWN,
    CriticalPoint,
    PiecewisePoly,
    RankFamily,
    Report,
    continuity_report,
    critical_points,
    divisibility_check,
    euler_poly,
    evaluate,
    integrality_check,
    recenter,
    rescale,
    serre_dual_check,
    smoothness_index,
    vanishing_order,
    zero_family,
)
from .transform import (
    TransformGerm,
    double_inversion_identity_check,
    germ_from_transform,
    invert_neg,
    invert_pos,
    mobius_ideal_to_evalbundle,
)
from .models import (
    build_abel_jacobi,
    build_gv_subscheme,
    build_line_bundle,
    build_product_be,
    build_theta_sum,
    catalog,
)
from .regularity import (
    NEG_INF,
    RegularityClass,
    beta_invariant,
    beta_s_consistency,
    classify,
    hacon_monotonicity_check,
    jump_consistency,
    max_critical_point,
    s_from_beta,
)

__version__ = "0.1.0"
