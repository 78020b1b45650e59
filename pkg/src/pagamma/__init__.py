"""Expected power-law exponent of finite preferential-attachment networks.

The package solves the implicit expected-degree equation for the exponent
gamma(m) of a preferential-attachment network with m links per node,
validates it against simulated networks through maximum-likelihood
estimation, and fits the saturating closed form 3 - (m + alpha)**(-beta)
to the solved curve.
"""

from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateInputError,
    DomainError,
    ExperimentError,
    InsufficientPointsError,
    InvalidParamsError,
    PagammaError,
    RootBracketError,
)
from .estimate import GammaEstimate, estimate_gamma, estimate_gamma_values, sample_power_law
from .fit import FitResult, eval_ansatz, fit_ansatz
from .harness import (
    ExperimentConfig,
    ExperimentRow,
    ExperimentTable,
    load_config,
    replicate_seed,
    run_figure1,
    run_fit_panel,
)
from .netgen import DegreeSequence, GrowthParams, degree_histogram, generate, write_edge_list
from .specfun import hurwitz_zeta, truncated_power_sum
from .theory import GammaSolution, expected_degree, gamma_curve, implicit_residual, solve_gamma

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DegenerateInputError",
    "DegreeSequence",
    "DomainError",
    "ExperimentConfig",
    "ExperimentError",
    "ExperimentRow",
    "ExperimentTable",
    "FitResult",
    "GammaEstimate",
    "GammaSolution",
    "GrowthParams",
    "InsufficientPointsError",
    "InvalidParamsError",
    "PagammaError",
    "RootBracketError",
    "__version__",
    "degree_histogram",
    "estimate_gamma",
    "estimate_gamma_values",
    "eval_ansatz",
    "expected_degree",
    "fit_ansatz",
    "gamma_curve",
    "generate",
    "hurwitz_zeta",
    "implicit_residual",
    "load_config",
    "replicate_seed",
    "run_figure1",
    "run_fit_panel",
    "sample_power_law",
    "solve_gamma",
    "truncated_power_sum",
    "write_edge_list",
]
