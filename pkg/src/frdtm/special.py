"""Scalar special functions: Gamma, Mittag-Leffler, and monomial power rules.

Everything in this module is plain real/complex scalar arithmetic. The
field-valued algebra lives in `expfield`, series assembly in `series`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = [
    "PowerTerm",
    "gamma",
    "mittag_leffler",
    "caputo_power",
    "rl_integral_power",
    "delta",
]

# exp() of anything below this underflows to zero
_LOG_TINY = -745.0


@dataclass(frozen=True)
class PowerTerm:
    """A single monomial coefficient * s**exponent in a nonnegative variable s."""

    exponent: float
    coefficient: complex

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0


def gamma(x: float) -> float:
    """Gamma(x) for real x > 0."""
    if not x > 0:
        raise DomainError(f"gamma requires x > 0, got {x!r}")
    return math.gamma(x)


def mittag_leffler(alpha: float, z: complex, tol: float = 1e-14,
                   max_terms: int = 10_000) -> complex:
    """One-parameter Mittag-Leffler function, sum over k of z**k / Gamma(1 + k*alpha).

    Direct partial summation. Terms are formed in the log domain so neither the
    running power nor the Gamma factor can overflow on its own; summation stops
    once three consecutive terms fall below tol relative to the current partial
    sum. Raises ConvergenceError (carrying the last relative term size) if the
    budget runs out first.
    """
    if not alpha > 0:
        raise DomainError(f"mittag_leffler requires alpha > 0, got {alpha!r}")
    if not tol > 0:
        raise DomainError(f"mittag_leffler requires tol > 0, got {tol!r}")
    z = complex(z)
    if z == 0:
        return 1.0 + 0.0j
    log_z = cmath.log(z)
    total = 0.0 + 0.0j
    term_mag = math.inf
    small_run = 0
    for k in range(max_terms):
        log_term = k * log_z - math.lgamma(1.0 + k * alpha)
        if log_term.real < _LOG_TINY:
            term, term_mag = 0.0j, 0.0
        else:
            term = cmath.exp(log_term)
            term_mag = abs(term)
        total += term
        if term_mag < tol * abs(total):
            small_run += 1
            if small_run >= 3:
                return total
        else:
            small_run = 0
    residual = term_mag / abs(total) if total != 0 else math.inf
    raise ConvergenceError(
        f"Mittag-Leffler sum for alpha={alpha}, z={z} did not settle within "
        f"{max_terms} terms (last relative term {residual:.3e})", residual)


def caputo_power(gamma_exp: float, alpha: float) -> PowerTerm:
    """Caputo derivative of order alpha applied to the monomial s**gamma_exp.

    Integer exponents below ceil(alpha) are annihilated, since the classical
    derivative taken inside the Caputo integral kills them first. Non-integer
    exponents below alpha are rejected rather than analytically continued.
    """
    if not alpha > 0:
        raise DomainError(f"caputo_power requires alpha > 0, got {alpha!r}")
    if gamma_exp < 0:
        raise DomainError(f"caputo_power requires gamma_exp >= 0, got {gamma_exp!r}")
    if float(gamma_exp).is_integer() and gamma_exp < math.ceil(alpha):
        return PowerTerm(0.0, 0.0)
    if gamma_exp < alpha:
        raise DomainError(
            f"caputo_power of s**{gamma_exp} with non-integer exponent below "
            f"alpha={alpha} is not supported")
    coeff = gamma(1.0 + gamma_exp) / gamma(1.0 + gamma_exp - alpha)
    return PowerTerm(gamma_exp - alpha, coeff)


def rl_integral_power(gamma_exp: float, alpha: float) -> PowerTerm:
    """Riemann-Liouville integral of order alpha >= 0 of the monomial s**gamma_exp."""
    if alpha < 0:
        raise DomainError(f"rl_integral_power requires alpha >= 0, got {alpha!r}")
    if gamma_exp <= -1:
        raise DomainError(f"rl_integral_power requires gamma_exp > -1, got {gamma_exp!r}")
    if alpha == 0:
        return PowerTerm(float(gamma_exp), 1.0)
    coeff = gamma(1.0 + gamma_exp) / gamma(1.0 + gamma_exp + alpha)
    return PowerTerm(gamma_exp + alpha, coeff)


def delta(k: float) -> float:
    """Discrete delta: 1.0 at exactly zero, 0.0 everywhere else."""
    return 1.0 if k == 0 else 0.0
