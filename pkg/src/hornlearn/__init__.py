"""Exact learning of Horn formulas with membership and equivalence queries."""

__version__ = "0.1.0"

from .core import (
    CONTRADICTION,
    Clause,
    Consequent,
    HornFormula,
    brute_force_equal,
    closure,
    entails_clause,
    equivalent,
    evaluate,
)
from .learner import Policy, RunConfig, run, verify_run_invariants
from .normalize import is_normal_form, normalize

__all__ = [
    "CONTRADICTION",
    "Clause",
    "Consequent",
    "HornFormula",
    "Policy",
    "RunConfig",
    "brute_force_equal",
    "closure",
    "entails_clause",
    "equivalent",
    "evaluate",
    "is_normal_form",
    "normalize",
    "run",
    "verify_run_invariants",
]
