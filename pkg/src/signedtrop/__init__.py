"""Exact signed tropical convexity: semiring arithmetic, Farkas certificates,
Fourier-Motzkin elimination, hulls and their verification oracles."""

from .semiring import (
    BAL,
    Comparison,
    Interval,
    NEG,
    POS,
    SymNum,
    ZERO,
    balance,
    compare,
    geq,
    parse_symnum,
    strict_gt,
    teq,
    uncomp,
)
from .linalg import (
    SymMatrix,
    cancellation_weights,
    coordinate_section,
    mat_mul,
    mat_vec,
    pair_incidence,
    parse_matrix,
    parse_vector,
    row_partition,
    scale_normalize_row,
    section_closure,
    split_balanced_columns,
    vec_mat,
)
from .elimination import (
    AffineRow,
    Certificate,
    ResolutionError,
    farkas,
    fm_step_nonstrict,
    fm_step_strict,
    nnker_solve,
    sep_solve,
    resolve_balanced_nonstrict,
    seq_system_solve_bruteforce,
    verify_kernel,
    verify_separator,
)
from .convexity import (
    MembershipResult,
    NonConvexError,
    OrthantHull,
    SegmentDescription,
    UnboundedError,
    conic_member,
    halfspace_contains,
    hrep_to_vrep,
    member,
    orthant_hull,
    segment,
    vrep_to_hrep,
)
from .puiseux import Lift, PuiseuxSeries, lift_construct, lift_verify, sval
from .hyperfield import HValue, cancellative_sum, hadd, hconv_check

__version__ = "0.1.0"

__all__ = [
    "AffineRow",
    "BAL",
    "Certificate",
    "Comparison",
    "HValue",
    "Interval",
    "Lift",
    "MembershipResult",
    "NEG",
    "NonConvexError",
    "OrthantHull",
    "POS",
    "PuiseuxSeries",
    "ResolutionError",
    "SegmentDescription",
    "SymMatrix",
    "SymNum",
    "UnboundedError",
    "ZERO",
    "balance",
    "cancellation_weights",
    "cancellative_sum",
    "compare",
    "conic_member",
    "coordinate_section",
    "farkas",
    "fm_step_nonstrict",
    "fm_step_strict",
    "geq",
    "hadd",
    "halfspace_contains",
    "hconv_check",
    "hrep_to_vrep",
    "lift_construct",
    "lift_verify",
    "mat_mul",
    "mat_vec",
    "member",
    "nnker_solve",
    "orthant_hull",
    "pair_incidence",
    "parse_matrix",
    "parse_symnum",
    "parse_vector",
    "resolve_balanced_nonstrict",
    "row_partition",
    "scale_normalize_row",
    "section_closure",
    "segment",
    "sep_solve",
    "seq_system_solve_bruteforce",
    "split_balanced_columns",
    "strict_gt",
    "sval",
    "teq",
    "uncomp",
    "vec_mat",
    "verify_kernel",
    "verify_separator",
    "vrep_to_hrep",
]
