"""Spectrum arithmetic and the recurrence drivers for the bundled problems.

A spectrum is the coefficient sequence U_0(x), U_1(x), ... of a truncated
fractional power series u(x, t) = sum_k U_k(x) * t**(k*alpha). Under the
transform, products of series become Cauchy convolutions of spectra, and a
Caputo time derivative of order alpha becomes an index shift weighted by a
ratio of Gamma values. Each driver below rewrites its evolution equation as
the corresponding algebraic recurrence and iterates it K times, so the whole
solve is exact field algebra with no spatial discretization.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (DomainError, InsufficientOrderError,
                     UnsupportedRepresentationError, UsageError)
from .expfield import ExpField, constant, make_initial
from .special import delta, gamma

__all__ = [
    "Family",
    "ProblemSpec",
    "Spectrum",
    "COS_SQUARED",
    "conv2",
    "conv3",
    "deriv_shift",
    "monomial_spectrum",
    "solve_lse",
    "solve_nlse",
    "solve_nlse_trap",
    "solve_coupled",
    "initial_fields",
    "solve_problem",
    "named_problem",
    "PROBLEM_NAMES",
]


class Family(enum.Enum):
    """Equation families: free linear, cubic, cubic in a cos^2 trap, coupled cubic."""

    LSE = "lse"
    NLSE = "nlse"
    NLSE_TRAP = "nlse_trap"
    COUPLED = "coupled"


# cos(x)**2 as exponentials; the trapping potential of the nlse-trap problem
COS_SQUARED = ExpField(((0.5, 0.0j), (0.25, 2.0j), (0.25, -2.0j)))

_DEFAULT_INITIAL = {
    Family.NLSE: "exp_inx",
    Family.NLSE_TRAP: "sin_x",
    Family.COUPLED: "a_exp_inx",
}

_ALLOWED_INITIAL = {
    Family.LSE: ("one_plus_cosh_ax", "exp_inx"),
    Family.NLSE: ("exp_inx",),
    Family.NLSE_TRAP: ("sin_x",),
    Family.COUPLED: ("a_exp_inx",),
}


@dataclass(frozen=True)
class ProblemSpec:
    """Equation family plus every parameter a run needs."""

    family: Family
    alpha: float
    K: int
    sigma: float = 0.0
    a: float = 0.0
    b: float = 0.0
    n: float = 0.0
    m: float = 0.0
    initial: str = ""

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if self.K < 1:
            raise DomainError(f"truncation order K must be >= 1, got {self.K!r}")
        for name in ("sigma", "a", "b", "n", "m"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"parameter {name} must be finite")
        if not self.initial:
            default = _DEFAULT_INITIAL.get(self.family)
            if default is None:
                raise UsageError(
                    "the linear family needs an explicit initial profile, "
                    "'one_plus_cosh_ax' or 'exp_inx'")
            object.__setattr__(self, "initial", default)
        if self.initial not in _ALLOWED_INITIAL[self.family]:
            raise UsageError(
                f"initial profile {self.initial!r} is not valid for "
                f"family {self.family.value!r}")


@dataclass(frozen=True)
class Spectrum:
    """Ordered coefficients U_0 .. U_K of one truncated series."""

    alpha: float
    coeffs: tuple[ExpField, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise DomainError("a spectrum needs at least one coefficient")
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha!r}")

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> ExpField:
        return self.coeffs[k]

    @property
    def order(self) -> int:
        """Highest stored index K."""
        return len(self.coeffs) - 1

    def conjugate(self) -> "Spectrum":
        """Spectrum of the conjugated series; valid because t**(k*alpha) is real."""
        return Spectrum(self.alpha, tuple(f.conjugate() for f in self.coeffs))


def _conv2_fields(u: Sequence[ExpField], v: Sequence[ExpField], k: int) -> ExpField:
    total = ExpField()
    for r in range(k + 1):
        total = total + u[r].multiply(v[k - r])
    return total


def _conv3_fields(u: Sequence[ExpField], v: Sequence[ExpField],
                  w: Sequence[ExpField], k: int) -> ExpField:
    total = ExpField()
    for r in range(k + 1):
        for i in range(r + 1):
            total = total + u[i].multiply(v[r - i]).multiply(w[k - r])
    return total


def _check_spectra(k: int, *spectra: Spectrum) -> None:
    if k < 0:
        raise InsufficientOrderError(f"coefficient index must be >= 0, got {k}")
    alpha = spectra[0].alpha
    if any(s.alpha != alpha for s in spectra[1:]):
        raise UsageError("spectra must share one fractional order alpha")
    shortest = min(len(s) for s in spectra)
    if k >= shortest:
        raise InsufficientOrderError(
            f"coefficient k={k} needs inputs up to order {k}, "
            f"but a spectrum stops at {shortest - 1}")


def conv2(u: Spectrum, v: Spectrum, k: int) -> ExpField:
    """k-th coefficient of the product series: sum over r of U_r * V_(k-r)."""
    _check_spectra(k, u, v)
    return _conv2_fields(u.coeffs, v.coeffs, k)


def conv3(u: Spectrum, v: Spectrum, w: Spectrum, k: int) -> ExpField:
    """k-th coefficient of a triple product series, as a double Cauchy sum."""
    _check_spectra(k, u, v, w)
    return _conv3_fields(u.coeffs, v.coeffs, w.coeffs, k)


def deriv_shift(u: Spectrum, n_shift: int, k: int) -> ExpField:
    """k-th coefficient of the Caputo time derivative of order n_shift*alpha.

    Equals Gamma(1 + (k+n_shift)*alpha) / Gamma(1 + k*alpha) * U_(k+n_shift).
    """
    if n_shift < 0:
        raise DomainError(f"derivative shift must be >= 0, got {n_shift}")
    if k < 0 or k + n_shift >= len(u):
        raise InsufficientOrderError(
            f"derivative coefficient k={k} needs U_{k + n_shift}, "
            f"spectrum stops at {len(u) - 1}")
    ratio = gamma(1.0 + (k + n_shift) * u.alpha) / gamma(1.0 + k * u.alpha)
    return u.coeffs[k + n_shift].scale(ratio)


def monomial_spectrum(m_pow: int, n_pow: int, alpha: float, K: int) -> Spectrum:
    """Spectrum of x**m_pow * t**n_pow; only m_pow = 0 stays inside the field class.

    The k-th coefficient is 1 exactly where k*alpha equals n_pow and 0
    elsewhere, so for irrational alpha a t-monomial has an all-zero spectrum.
    """
    if m_pow < 0 or n_pow < 0:
        raise DomainError("monomial powers must be nonnegative")
    if K < 0:
        raise DomainError(f"truncation order must be >= 0, got {K!r}")
    if m_pow != 0:
        raise UnsupportedRepresentationError(
            "x**m factors with m > 0 fall outside finite exponential sums")
    return Spectrum(alpha, tuple(constant(delta(k * alpha - n_pow))
                                 for k in range(K + 1)))


def _inv_ratio(alpha: float, k: int) -> float:
    # Gamma(1+k*alpha) / Gamma(1+(k+1)*alpha): maps the assembled RHS to U_(k+1)
    return gamma(1.0 + k * alpha) / gamma(1.0 + (k + 1) * alpha)


def _require_family(spec: ProblemSpec, family: Family, op: str) -> None:
    if spec.family is not family:
        raise UsageError(
            f"{op} expects family {family.value!r}, got {spec.family.value!r}")


def solve_lse(spec: ProblemSpec, u0: ExpField) -> Spectrum:
    """Free linear evolution  i D_t^alpha u + u_xx = 0."""
    _require_family(spec, Family.LSE, "solve_lse")
    coeffs = [u0]
    for k in range(spec.K):
        coeffs.append(coeffs[k].d2dx2().scale(1j * _inv_ratio(spec.alpha, k)))
    return Spectrum(spec.alpha, tuple(coeffs))


def solve_nlse(spec: ProblemSpec, u0: ExpField) -> Spectrum:
    """Cubic evolution  i D_t^alpha u + u_xx + sigma |u|^2 u = 0."""
    _require_family(spec, Family.NLSE, "solve_nlse")
    coeffs = [u0]
    conj = [u0.conjugate()]
    for k in range(spec.K):
        cubic = _conv3_fields(conj, coeffs, coeffs, k)
        rhs = coeffs[k].d2dx2() + cubic.scale(spec.sigma)
        nxt = rhs.scale(1j * _inv_ratio(spec.alpha, k))
        coeffs.append(nxt)
        conj.append(nxt.conjugate())
    return Spectrum(spec.alpha, tuple(coeffs))


def solve_nlse_trap(spec: ProblemSpec, u0: ExpField) -> Spectrum:
    """Cubic evolution in a cos^2 trap  i D_t^alpha u = -u_xx/2 + u cos^2(x) + |u|^2 u."""
    _require_family(spec, Family.NLSE_TRAP, "solve_nlse_trap")
    coeffs = [u0]
    conj = [u0.conjugate()]
    for k in range(spec.K):
        cubic = _conv3_fields(conj, coeffs, coeffs, k)
        rhs = coeffs[k].d2dx2().scale(0.5) - coeffs[k] * COS_SQUARED - cubic
        nxt = rhs.scale(1j * _inv_ratio(spec.alpha, k))
        coeffs.append(nxt)
        conj.append(nxt.conjugate())
    return Spectrum(spec.alpha, tuple(coeffs))


def solve_coupled(spec: ProblemSpec, u0: ExpField,
                  v0: ExpField) -> tuple[Spectrum, Spectrum]:
    """Coupled cubic system  i D_t^alpha w + w_xx + sigma (|u|^2 + |v|^2) w = 0
    for w in {u, v}. The driver is calibrated for sigma = 2, the value the
    bundled problem uses."""
    _require_family(spec, Family.COUPLED, "solve_coupled")
    if spec.sigma != 2:
        raise UsageError(f"solve_coupled requires sigma = 2, got {spec.sigma!r}")
    us, vs = [u0], [v0]
    cus, cvs = [u0.conjugate()], [v0.conjugate()]
    for k in range(spec.K):
        uu_u = _conv3_fields(cus, us, us, k)
        vv_u = _conv3_fields(cvs, vs, us, k)
        uu_v = _conv3_fields(cus, us, vs, k)
        vv_v = _conv3_fields(cvs, vs, vs, k)
        step = 1j * _inv_ratio(spec.alpha, k)
        nu = (us[k].d2dx2() + (uu_u + vv_u).scale(spec.sigma)).scale(step)
        nv = (vs[k].d2dx2() + (uu_v + vv_v).scale(spec.sigma)).scale(step)
        us.append(nu)
        cus.append(nu.conjugate())
        vs.append(nv)
        cvs.append(nv.conjugate())
    return Spectrum(spec.alpha, tuple(us)), Spectrum(spec.alpha, tuple(vs))


def initial_fields(spec: ProblemSpec) -> tuple[ExpField, ExpField | None]:
    """Initial coefficient U_0, plus V_0 for the coupled family."""
    if spec.family is Family.COUPLED:
        return (make_initial("a_exp_inx", (spec.a, spec.n)),
                make_initial("a_exp_inx", (spec.b, spec.m)))
    if spec.family is Family.NLSE_TRAP:
        return make_initial("sin_x"), None
    if spec.initial == "one_plus_cosh_ax":
        return make_initial("one_plus_cosh_ax", (spec.a,)), None
    return make_initial("exp_inx", (spec.n,)), None


def solve_problem(spec: ProblemSpec):
    """Run the family's recurrence driver on its own initial data.

    Returns one Spectrum, or a (u, v) pair for the coupled family.
    """
    u0, v0 = initial_fields(spec)
    if spec.family is Family.LSE:
        return solve_lse(spec, u0)
    if spec.family is Family.NLSE:
        return solve_nlse(spec, u0)
    if spec.family is Family.NLSE_TRAP:
        return solve_nlse_trap(spec, u0)
    return solve_coupled(spec, u0, v0)


_NAMED = {
    "lse-cosh": dict(family=Family.LSE, initial="one_plus_cosh_ax",
                     alpha=0.9, K=25, a=2.0),
    "lse-exp": dict(family=Family.LSE, initial="exp_inx",
                    alpha=0.5, K=25, n=3.0),
    "nlse-plane": dict(family=Family.NLSE, alpha=0.9, K=20, sigma=2.0, n=1.0),
    "nlse-trap": dict(family=Family.NLSE_TRAP, alpha=0.5, K=16),
    "coupled": dict(family=Family.COUPLED, alpha=0.9, K=12, sigma=2.0,
                    a=0.5, b=0.5, n=1.0, m=1.5),
}

PROBLEM_NAMES = tuple(_NAMED)

_OVERRIDABLE = ("alpha", "K", "sigma", "a", "b", "n", "m")


def named_problem(name: str, **overrides) -> ProblemSpec:
    """ProblemSpec for one of the bundled problem names.

    Keyword overrides replace that problem's defaults; None values are
    ignored so callers can pass optional settings straight through.
    """
    try:
        base = dict(_NAMED[name])
    except KeyError:
        raise UsageError(f"unknown problem {name!r}; expected one of: "
                         f"{', '.join(_NAMED)}") from None
    for key, value in overrides.items():
        if key not in _OVERRIDABLE:
            raise UsageError(f"unknown problem parameter {key!r}")
        if value is not None:
            base[key] = value
    return ProblemSpec(**base)
