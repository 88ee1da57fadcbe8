"""Exact *-codimensions of finite-dimensional algebras with involution."""

from .algebra import (
    AlgebraStructureError,
    AlgebraWithInvolution,
    InvolutionAxiomError,
    StarDecomposition,
    Violation,
    change_basis,
    decompose,
    direct_sum,
    dump,
    dumps,
    ensure_valid,
    from_products,
    load,
    loads,
    nilpotent_tensor,
    validate,
)
from .analysis import (
    BoundReport,
    ExponentConstants,
    check_cubic_bound,
    check_cell_support,
    check_cell_bound,
    check_piecewise,
    check_recursion,
    check_sandwich,
    check_dimension_bound,
    exponent_constants,
    window_estimate,
)
from .engine import (
    Assignment,
    CodimSequence,
    assemble_matrix,
    codim_sequence,
    identity_space,
    identity_subset_check,
    is_identity,
    partial_codimension,
    total_codimension,
    verify_certificate,
    witness_lower_bound,
)
from .families import (
    nonvanishing_witness,
    factorial_witness,
    make_A_T,
    make_B_slice,
    make_C_prefix,
    make_tilde_slice,
)
from .monomials import MonomialBasis, MultilinearMonomial, enumerate_monomials, parse_monomial
from .schedule import BlockSchedule, greedy_schedule

__version__ = "0.1.0"
