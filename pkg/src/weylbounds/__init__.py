"""Weyl-type eigenvalue bounds for the Dirichlet Laplacian, with exact-spectrum audits."""

from .bounds import (
    BOUND_IDS,
    ConstantsBundle,
    CountBound,
    Expansion,
    GapBound,
    ReciprocalBound,
    constants,
    counting_bound,
    evaluate,
    gap_bound,
    gap_sum_bound,
    lemma_bound_family,
    reciprocal_gap_lower,
    riesz_bound_berezin,
    weyl_term,
)
from .exceptions import (
    BudgetExceededError,
    ConvergenceError,
    DimensionError,
    DomainError,
    PreconditionError,
    WeylBoundsError,
)
from .spectra import DomainSpec, Spectrum, ball, ball_spectrum, box, box_spectrum, domain_spectrum

__version__ = "0.1.0"

__all__ = [
    "BOUND_IDS",
    "ConstantsBundle",
    "CountBound",
    "Expansion",
    "GapBound",
    "ReciprocalBound",
    "constants",
    "counting_bound",
    "evaluate",
    "gap_bound",
    "gap_sum_bound",
    "lemma_bound_family",
    "reciprocal_gap_lower",
    "riesz_bound_berezin",
    "weyl_term",
    "BudgetExceededError",
    "ConvergenceError",
    "DimensionError",
    "DomainError",
    "PreconditionError",
    "WeylBoundsError",
    "DomainSpec",
    "Spectrum",
    "ball",
    "ball_spectrum",
    "box",
    "box_spectrum",
    "domain_spectrum",
]
