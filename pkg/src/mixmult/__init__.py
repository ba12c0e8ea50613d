"""Exact mixed multiplicities of ideal families in localized polynomial-ring models."""

from .errors import (
    ComputationLimitError,
    HomogeneityError,
    InconsistencyError,
    InputError,
    MMError,
    NilpotentError,
    NotMPrimaryError,
    ProblemSyntaxError,
    SearchFailureError,
    StabilizationError,
    StratumError,
)
from .fc import (
    FCCandidate,
    FCSequenceRecord,
    build_sequence,
    check_fc1,
    check_fc2,
    check_fc3,
    require_member,
    verify_theorem43,
)
from .ideals import (
    GroebnerBasis,
    IdealHandle,
    buchberger,
    divide_exact,
    graded_piece_dim,
    ideal_colon,
    ideal_combine,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_saturate,
    ideal_sum,
    krull_dim_quotient,
    normal_form,
)
from .localmodel import (
    LocalRingModel,
    hilbert_samuel,
    is_m_primary,
    length_quotient,
    m_adic_exponent,
    total_colength,
)
from .mixed import (
    FreeAlgebraSpec,
    HilbertTable,
    InstanceOptions,
    MixedReport,
    ProblemInstance,
    build_table,
    compositions,
    free_algebra_report,
    free_quotient_report,
    mixed_difference,
    mixed_multiplicities,
    positivity,
)
from .problemfile import ProblemFile, format_problem, parse_problem, parse_problem_file
from .ring import (
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    RandomStream,
    RingContext,
    compare,
    derive_seed,
    elimination_order,
    parse_poly,
    poly_arith,
    poly_to_text,
    random_homogeneous_combo,
    splitmix64,
)

__version__ = "0.1.0"
