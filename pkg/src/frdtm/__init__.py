"""Semi-analytic solver for time-fractional Schrodinger-type equations.

Solutions are represented as truncated fractional power series
u(x, t) = sum_k U_k(x) * t**(k*alpha) whose spatial coefficients are exact
finite sums of complex exponentials. The recurrence that generates the
coefficients is pure field algebra, so sampled tables carry no error beyond
the series truncation itself, and every bundled problem ships with residual
checks plus closed-form references where they exist.
"""

from .engine import (COS_SQUARED, Family, PROBLEM_NAMES, ProblemSpec, Spectrum,
                     conv2, conv3, deriv_shift, initial_fields,
                     monomial_spectrum, named_problem, solve_coupled,
                     solve_lse, solve_nlse, solve_nlse_trap, solve_problem)
from .errors import (ConvergenceError, DomainError, EvaluationOverflowError,
                     InsufficientOrderError, NoOracleError, OutputIOError,
                     SolverError, TermBlowupError,
                     UnsupportedRepresentationError, UsageError)
from .expfield import (MERGE_EPS, PRUNE_EPS, TERM_CAP, ExpField, ExpTerm,
                       constant, make_initial)
from .series import (FractionalSeries, SolutionTable, evaluate, oracle,
                     residual_spectrum, sample)
from .special import (PowerTerm, caputo_power, delta, gamma, mittag_leffler,
                      rl_integral_power)

__version__ = "0.1.0"

__all__ = [
    "COS_SQUARED", "ConvergenceError", "DomainError",
    "EvaluationOverflowError", "ExpField", "ExpTerm", "Family",
    "FractionalSeries", "InsufficientOrderError", "MERGE_EPS",
    "NoOracleError", "OutputIOError", "PROBLEM_NAMES", "PowerTerm",
    "ProblemSpec", "PRUNE_EPS", "SolutionTable", "SolverError", "Spectrum",
    "TERM_CAP", "TermBlowupError", "UnsupportedRepresentationError",
    "UsageError", "caputo_power", "constant", "conv2", "conv3", "delta",
    "deriv_shift", "evaluate", "gamma", "initial_fields", "make_initial",
    "mittag_leffler", "monomial_spectrum", "named_problem", "oracle",
    "residual_spectrum", "rl_integral_power", "sample", "solve_coupled",
    "solve_lse", "solve_nlse", "solve_nlse_trap", "solve_problem",
    "__version__",
]
