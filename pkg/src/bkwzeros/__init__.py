"""Zeros of exponential-sum polynomial families and their limit sets."""

from .families import BUILTIN, FIGURE_CONFIGS, consistency_check, get_spec, resolve_family
from .graphpoly import (
    GraphError,
    Multigraph,
    mean_mst_length,
    steele,
    tutte,
    tutte_oracle,
)
from .limitset import Curve, LimitSet, Window, limit_set, nondegeneracy_check
from .poly_core import (
    ComplexPoly,
    ExpSumFamily,
    ExpTerm,
    NCoeffPoly,
    eval_family,
    expand_at_index,
    load_family,
)
from .recurrence import Recurrence, generate_sequence, to_recurrence
from .rootfind import RootFindingError, RootSet, all_roots, family_roots, winding_count
from .verify import convergence_report, converse_residual

__version__ = "0.1.0"

__all__ = [
    "BUILTIN", "FIGURE_CONFIGS", "ComplexPoly", "Curve", "ExpSumFamily", "ExpTerm",
    "GraphError", "LimitSet", "Multigraph", "NCoeffPoly", "Recurrence", "RootFindingError",
    "RootSet", "Window", "all_roots", "consistency_check", "convergence_report",
    "converse_residual", "eval_family", "expand_at_index", "family_roots",
    "generate_sequence", "get_spec", "limit_set", "load_family", "mean_mst_length",
    "nondegeneracy_check", "resolve_family", "steele", "to_recurrence", "tutte",
    "tutte_oracle", "winding_count",
]
