"""Exact construction, verification and classification of monomial
Rota-Baxter operators of weight zero and monomial averaging operators on the
polynomial algebras F[x,y] and F0[x,y]."""

from .algebra import (
    AlgebraContext,
    Monomial,
    NON_UNITAL,
    Polynomial,
    Rational,
    UNITAL,
    admissible_monomials,
    mono,
    nu,
    poly_mul,
)
from .errors import (
    CoverageError,
    DegenerateDenominator,
    InvalidParams,
    NotAProgression,
    RbavgError,
    Unclassifiable,
    UnknownPreset,
    ZeroScalarError,
)
from .families import (
    FamilySpec,
    build,
    build_averaging,
    build_rb,
    discussion_presets,
    family_table,
    support_lattice,
    validate_family_params,
    zeta,
)
from .operators import (
    CoeffTable,
    MonomialOperator,
    Term,
    apply,
    check_averaging,
    check_coefficient_relation,
    check_rb0,
    eval_term,
)
from .recurrences import (
    KSeqAdditiveParams,
    KSeqShiftedParams,
    SingleRecParams,
    TwoIndexRecParams,
    closed_single,
    closed_two_index,
    k_closed_additive,
    k_closed_shifted,
    verify_k_recurrence,
    verify_single,
    verify_two_index,
)
from .report import CheckReport, Witness
from .sequences import IndexSet, NatSeq, RowMap

__version__ = "0.1.0"
