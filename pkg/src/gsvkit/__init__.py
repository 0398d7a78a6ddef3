"""gsvkit: exact unit-sphere maximizers of summed squared matrix norms.

The core solver computes the generalized supporting vectors of a family of
real matrices A_1..A_k — the unit vectors maximizing
``sum_i ||A_i x||^2`` — via the maximal eigenpair of the Gram sum
``sum_i A_i^T A_i``, together with a closed form for the two-equal-norm-column
case, a Cholesky-whitened solver for quadratic energy constraints, and
application pipelines for multivariate ranking and truncated probability
density operators.
"""

from . import errors
from .density_model import (
    DensityModel,
    build_density,
    check_positivity_chain,
    density_norm,
    density_trace,
    joint_magnitude_state,
)
from .gsv_solver import (
    GsvSolution,
    OperatorStack,
    WeightedProblem,
    brute_force_max,
    gsv_solve,
    gsv_solve_2col_equalnorm,
    objective_value,
    weighted_gsv_solve,
)
from .spectra_core import (
    EigenPair,
    SymmetricMatrix,
    fix_column_signs,
    gram_sum,
    max_eigenpair,
    rayleigh_quotient,
)
from .stat_norm import (
    CriticalSystem,
    StatMatrix,
    StatVector,
    critical_residual,
    is_snv,
    rank_by_score,
    score_rows,
    snv_pair_identities,
    standardize,
)

__version__ = "0.1.0"

__all__ = [
    "CriticalSystem",
    "DensityModel",
    "EigenPair",
    "GsvSolution",
    "OperatorStack",
    "StatMatrix",
    "StatVector",
    "SymmetricMatrix",
    "WeightedProblem",
    "brute_force_max",
    "build_density",
    "check_positivity_chain",
    "critical_residual",
    "density_norm",
    "density_trace",
    "errors",
    "fix_column_signs",
    "gram_sum",
    "gsv_solve",
    "gsv_solve_2col_equalnorm",
    "is_snv",
    "joint_magnitude_state",
    "max_eigenpair",
    "objective_value",
    "rank_by_score",
    "rayleigh_quotient",
    "score_rows",
    "snv_pair_identities",
    "standardize",
    "weighted_gsv_solve",
]
