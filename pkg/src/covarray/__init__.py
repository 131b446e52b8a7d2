"""Covering arrays from finite-field constructions and random concatenation."""

from .arrays import (
    ArrayMatrix,
    ColumnSet,
    CoverageReport,
    OaCheckResult,
    coverage_report,
    coverage_sampled,
    covers,
    project_alphabet,
    verify_covering,
    verify_oa,
)
from .bounds import (
    acan_bounds,
    c_tv,
    can_upper_gss,
    can_upper_new,
    covmax_bounds,
    d_bound_table,
    exact_can_strength2_binary,
    next_prime_power,
    pb_max_columns,
)
from .builder import (
    BuilderConfig,
    BuildOutcome,
    BuilderPlan,
    build_almost,
    build_covering,
    build_covering_any_v,
    make_plan,
    required_copies,
    required_copies_almost,
)
from .constructions import (
    BlowupPlan,
    ProjectivePoint,
    blow_up,
    build_a_opt,
    build_block,
    build_random,
    cov_a_opt_exact,
    linearly_independent,
    projective_points,
)
from .field import FieldElement, FieldSpec, ff_add, ff_dot, ff_inv, ff_mul, field_of_order, make_field
from .io import read_array, write_array
from .lagrangian import (
    LagrangianInstance,
    build_h,
    link_degree_check,
    maxima_bruteforce,
    maxima_closed_form,
    optimize_lagrangian,
    support_oa_check,
    weight_poly,
)

__version__ = "0.1.0"
