"""Exact simulation, closed forms and symmetry checks for

    x_{n+1} = x_{n-3} x_{n-4} / (x_n (a_n + b_n x_{n-1} x_{n-2} x_{n-3} x_{n-4})).
"""

from .closedform import (
    GeneralSolution,
    Violation,
    closed_form_table,
    forbidden_check,
    x_const_coeff,
    x_general,
    x_two_periodic,
)
from .engine import iterate, step
from .errors import (
    ConditionViolated,
    DegenerateScale,
    FormulaDenominatorZero,
    IncomparableBeyond,
    IndexBeyondExplicitData,
    NotASymmetry,
    RdeError,
    SeedZero,
    Singularity,
    ValueUnavailable,
    ZeroProduct,
)
from .invariants import v_closed_form, v_recurrence_residual, v_sequence, weight
from .model import (
    CoefficientSpec,
    ExponentPattern,
    InitialConditions,
    InvariantSeq,
    SingularityReason,
    Trajectory,
    coeff_at,
    format_rational,
    parse_rational,
    u_view,
)
from .symmetry import constraint_check, scale_ics, verify_group_invariance

__version__ = "0.1.0"
