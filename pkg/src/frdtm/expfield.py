"""Exact algebra of finite sums  c1*exp(r1*x) + c2*exp(r2*x) + ...  with
complex coefficients and rates.

This class of functions is closed under everything the transform recurrences
need (sums, products, conjugation, second x-derivatives), which is what lets
the solver carry every spatial coefficient in closed form instead of on a
grid. Fields are immutable and always stored canonically: terms sorted by
rate, near-equal rates merged, negligible coefficients dropped.
"""

from __future__ import annotations

import cmath
import json
import math
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import DomainError, EvaluationOverflowError, TermBlowupError, UsageError

__all__ = [
    "ExpTerm",
    "ExpField",
    "constant",
    "make_initial",
    "MERGE_EPS",
    "PRUNE_EPS",
    "TERM_CAP",
]

# rates closer than this, componentwise, collapse into one term
MERGE_EPS = 1e-12
# terms whose |coeff| is at or below this are dropped after merging
PRUNE_EPS = 1e-14
# hard cap on the canonical term count a multiply may produce
TERM_CAP = 4096

_EXP_OVERFLOW = 709.782712893384  # log of the largest finite double


class ExpTerm(NamedTuple):
    coeff: complex
    rate: complex


def _canonicalize(terms: Iterable[ExpTerm]) -> tuple[ExpTerm, ...]:
    live = sorted((t for t in terms if t.coeff != 0),
                  key=lambda t: (t.rate.real, t.rate.imag))
    merged: list[list[complex]] = []
    for coeff, rate in live:
        if merged:
            # compare against the bucket anchor, not the last merged rate
            anchor = merged[-1][1]
            if (abs(rate.real - anchor.real) <= MERGE_EPS
                    and abs(rate.imag - anchor.imag) <= MERGE_EPS):
                merged[-1][0] += coeff
                continue
        merged.append([coeff, rate])
    return tuple(ExpTerm(c, r) for c, r in merged if abs(c) > PRUNE_EPS)


class ExpField:
    """An immutable, canonical finite sum of complex exponentials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[complex, complex]] = ()):
        self._terms = _canonicalize(
            ExpTerm(complex(c), complex(r)) for c, r in terms)

    @property
    def terms(self) -> tuple[ExpTerm, ...]:
        return self._terms

    def __iter__(self) -> Iterator[ExpTerm]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExpField):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({t.coeff})e^({t.rate})x" for t in self._terms)
        return f"ExpField({body or '0'})"

    def __add__(self, other: "ExpField") -> "ExpField":
        if not isinstance(other, ExpField):
            return NotImplemented
        return ExpField((*self._terms, *other._terms))

    def __sub__(self, other: "ExpField") -> "ExpField":
        if not isinstance(other, ExpField):
            return NotImplemented
        return ExpField((*self._terms,
                         *((-t.coeff, t.rate) for t in other._terms)))

    def __mul__(self, other):
        if isinstance(other, ExpField):
            return self.multiply(other)
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor: complex) -> "ExpField":
        factor = complex(factor)
        return ExpField((t.coeff * factor, t.rate) for t in self._terms)

    def multiply(self, other: "ExpField", cap: int = TERM_CAP) -> "ExpField":
        """Pointwise product; rates add, coefficients multiply pairwise."""
        out = ExpField((a.coeff * b.coeff, a.rate + b.rate)
                       for a in self._terms for b in other._terms)
        if len(out) > cap:
            raise TermBlowupError(
                f"multiply produced {len(out)} terms, cap is {cap}")
        return out

    def conjugate(self) -> "ExpField":
        return ExpField((t.coeff.conjugate(), t.rate.conjugate())
                        for t in self._terms)

    def d2dx2(self) -> "ExpField":
        return ExpField((t.coeff * t.rate * t.rate, t.rate)
                        for t in self._terms)

    def eval_at(self, x: float) -> complex:
        """Value of the field at a real point x."""
        if not math.isfinite(x):
            raise DomainError(f"eval_at requires finite x, got {x!r}")
        total = 0.0 + 0.0j
        for coeff, rate in self._terms:
            arg = rate * x
            if arg.real > _EXP_OVERFLOW:
                raise EvaluationOverflowError(
                    f"exp of {arg.real:.6g} overflows at x={x!r}")
            total += coeff * cmath.exp(arg)
        return total

    def max_coeff(self) -> float:
        """Largest coefficient magnitude; 0.0 for the empty field."""
        return max((abs(t.coeff) for t in self._terms), default=0.0)

    def debug_terms(self) -> list[dict[str, float]]:
        return [{"re_coeff": t.coeff.real, "im_coeff": t.coeff.imag,
                 "re_rate": t.rate.real, "im_rate": t.rate.imag}
                for t in self._terms]

    def debug_json(self) -> str:
        return json.dumps(self.debug_terms())


def constant(value: complex) -> ExpField:
    """Embed a constant as a rate-zero field; zero embeds as the empty field."""
    return ExpField(((value, 0.0j),))


def make_initial(kind: str, params: Sequence[float] = ()) -> ExpField:
    """Initial profiles used by the bundled problems.

    kind               params   profile
    "exp_inx"          (n,)     exp(i n x)
    "one_plus_cosh_ax" (a,)     1 + cosh(a x)
    "sin_x"            ()       sin(x)
    "a_exp_inx"        (a, n)   a exp(i n x)
    """
    vals = [float(p) for p in params]
    if not all(math.isfinite(v) for v in vals):
        raise DomainError(f"make_initial parameters must be finite, got {params!r}")
    if kind == "exp_inx":
        _expect_params(kind, vals, 1)
        return ExpField(((1.0, 1j * vals[0]),))
    if kind == "one_plus_cosh_ax":
        _expect_params(kind, vals, 1)
        a = vals[0]
        return ExpField(((1.0, 0.0j), (0.5, complex(a)), (0.5, complex(-a))))
    if kind == "sin_x":
        _expect_params(kind, vals, 0)
        return ExpField(((-0.5j, 1j), (0.5j, -1j)))
    if kind == "a_exp_inx":
        _expect_params(kind, vals, 2)
        return ExpField(((vals[0], 1j * vals[1]),))
    raise UsageError(f"unknown initial profile kind {kind!r}")


def _expect_params(kind: str, vals: list[float], count: int) -> None:
    if len(vals) != count:
        raise UsageError(
            f"initial profile {kind!r} takes {count} parameter(s), got {len(vals)}")
