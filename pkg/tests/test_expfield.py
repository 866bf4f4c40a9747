import cmath
import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import assert_fields_close, random_field
from frdtm.errors import (DomainError, EvaluationOverflowError,
                          TermBlowupError, UsageError)
from frdtm.expfield import ExpField, ExpTerm, constant, make_initial

finite = st.floats(min_value=-3.0, max_value=3.0,
                   allow_nan=False, allow_infinity=False)


@st.composite
def fields(draw, max_terms=4):
    count = draw(st.integers(min_value=0, max_value=max_terms))
    return ExpField((complex(draw(finite), draw(finite)),
                     complex(draw(finite), draw(finite)))
                    for _ in range(count))


def test_constant_embeds_scalars():
    assert constant(1.0).terms == (ExpTerm(1.0 + 0.0j, 0.0j),)
    assert constant(2.5j).terms == (ExpTerm(2.5j, 0.0j),)
    assert constant(0.0).terms == ()
    assert not constant(0.0)


def test_make_initial_profiles_evaluate_correctly():
    cosh_field = make_initial("one_plus_cosh_ax", (2.0,))
    assert cosh_field.eval_at(0.0) == pytest.approx(2.0, abs=1e-14)
    assert cosh_field.eval_at(1.3) == pytest.approx(
        1.0 + math.cosh(2.6), rel=1e-14)

    sin_field = make_initial("sin_x")
    assert sin_field.eval_at(math.pi / 2) == pytest.approx(1.0, abs=1e-13)
    assert sin_field.eval_at(math.pi / 6) == pytest.approx(0.5, abs=1e-13)

    wave = make_initial("exp_inx", (3.0,))
    assert wave.eval_at(math.pi) == pytest.approx(-1.0 + 0.0j, abs=1e-12)

    pair = make_initial("a_exp_inx", (0.5, 2.0))
    assert pair.eval_at(0.3) == pytest.approx(0.5 * cmath.exp(0.6j), rel=1e-14)


def test_make_initial_rejects_bad_input():
    with pytest.raises(UsageError):
        make_initial("exp_inx", ())
    with pytest.raises(UsageError):
        make_initial("sin_x", (1.0,))
    with pytest.raises(UsageError):
        make_initial("no_such_profile")
    with pytest.raises(DomainError):
        make_initial("exp_inx", (math.nan,))


def test_canonical_order_is_rate_lexicographic():
    field = ExpField(((1.0, 2.0j), (1.0, -1.0 + 0.0j), (1.0, 0.0j),
                      (1.0, -2.0j)))
    rates = [t.rate for t in field.terms]
    assert rates == [-1.0 + 0.0j, -2.0j, 0.0j, 2.0j]


def test_near_equal_rates_merge():
    field = ExpField(((1.0, 1.0j), (2.0, 1e-13 + 1.0j)))
    assert len(field) == 1
    assert field.terms[0].coeff == 3.0 + 0.0j


def test_cancellation_prunes_to_empty():
    field = ExpField(((1.0, 1.0j), (-1.0, 1.0j + 1e-13)))
    assert field.terms == ()
    assert ExpField(((1e-15, 0.0j),)).terms == ()


@given(fields())
def test_canonicalization_is_idempotent(field):
    assert ExpField(field.terms).terms == field.terms


def test_add_identity_and_cancellation():
    wave = make_initial("exp_inx", (1.0,))
    assert (wave + ExpField()).terms == wave.terms
    assert (wave - wave).terms == ()


def test_scale_examples():
    sin_field = make_initial("sin_x")
    doubled = sin_field.scale(2.0j)
    assert doubled.eval_at(math.pi / 2) == pytest.approx(2.0j, abs=1e-13)
    assert sin_field.scale(0.0).terms == ()
    assert (2.0 * sin_field).terms == sin_field.scale(2.0).terms
    assert (sin_field * 2.0).terms == sin_field.scale(2.0).terms


def test_multiply_inverse_waves_give_constant():
    wave = make_initial("exp_inx", (1.0,))
    back = make_initial("exp_inx", (-1.0,))
    assert (wave * back).terms == (ExpTerm(1.0 + 0.0j, 0.0j),)


def test_multiply_sin_squared_value():
    sin_field = make_initial("sin_x")
    squared = sin_field * sin_field
    assert squared.eval_at(math.pi / 4) == pytest.approx(0.5, abs=1e-13)


def test_multiply_cos_squared_terms():
    cos_field = ExpField(((0.5, 1.0j), (0.5, -1.0j)))
    squared = cos_field * cos_field
    assert squared.terms == (ExpTerm(0.25 + 0.0j, -2.0j),
                             ExpTerm(0.5 + 0.0j, 0.0j),
                             ExpTerm(0.25 + 0.0j, 2.0j))


@given(fields(), fields())
def test_multiply_commutes(f, g):
    # bucket sums may associate differently, so compare to tolerance
    assert_fields_close(f * g, g * f, tol=1e-13)


@given(fields(max_terms=3), fields(max_terms=3))
@settings(max_examples=60)
def test_conjugate_distributes_over_multiply(f, g):
    assert_fields_close((f * g).conjugate(),
                        f.conjugate() * g.conjugate(), tol=1e-13)


@given(fields())
def test_conjugate_is_an_exact_involution(field):
    assert field.conjugate().conjugate().terms == field.terms


def test_conjugate_examples():
    spun = make_initial("sin_x").scale(1j).conjugate()
    assert spun.eval_at(math.pi / 2) == pytest.approx(-1j, abs=1e-13)
    cosh_field = make_initial("one_plus_cosh_ax", (1.7,))
    assert cosh_field.conjugate().terms == cosh_field.terms


def test_multiply_associates_within_tolerance():
    rng = random.Random(7)
    for _ in range(40):
        f, g, h = (random_field(rng) for _ in range(3))
        assert_fields_close((f * g) * h, f * (g * h), tol=1e-11)


def test_d2dx2_examples():
    a = 1.3
    cosh_field = ExpField(((0.5, complex(a)), (0.5, complex(-a))))
    assert cosh_field.d2dx2().terms == cosh_field.scale(a * a).terms

    wave = make_initial("exp_inx", (2.0,))
    assert wave.d2dx2().terms == (ExpTerm(-4.0 + 0.0j, 2.0j),)

    assert constant(3.0).d2dx2().terms == ()


def test_d2dx2_matches_finite_differences():
    rng = random.Random(11)
    h = 1e-5
    for _ in range(20):
        field = random_field(rng)
        x = rng.uniform(-2.0, 2.0)
        numeric = (field.eval_at(x + h) - 2.0 * field.eval_at(x)
                   + field.eval_at(x - h)) / (h * h)
        exact = field.d2dx2().eval_at(x)
        assert abs(numeric - exact) <= 1e-5 * (1.0 + abs(exact))


def test_eval_is_a_ring_homomorphism():
    rng = random.Random(13)
    for _ in range(50):
        f, g = random_field(rng), random_field(rng)
        x = rng.uniform(-math.pi, math.pi)
        fx, gx = f.eval_at(x), g.eval_at(x)
        assert abs((f * g).eval_at(x) - fx * gx) <= 1e-12 * (1.0 + abs(fx * gx))
        assert abs((f + g).eval_at(x) - (fx + gx)) <= 1e-12 * (1.0 + abs(fx + gx))


def test_eval_requires_finite_x():
    field = constant(1.0)
    with pytest.raises(DomainError):
        field.eval_at(math.inf)
    with pytest.raises(DomainError):
        field.eval_at(math.nan)


def test_eval_overflow_is_reported():
    growing = ExpField(((1.0, 800.0 + 0.0j),))
    with pytest.raises(EvaluationOverflowError):
        growing.eval_at(1.0)
    # decaying exponentials underflow quietly instead
    assert ExpField(((1.0, -800.0 + 0.0j),)).eval_at(1.0) == 0.0


def test_multiply_term_cap():
    f = ExpField(((1.0, k * 1.0j) for k in range(70)))
    g = ExpField(((1.0, k * 0.01j) for k in range(70)))
    with pytest.raises(TermBlowupError, match="multiply"):
        f.multiply(g)
    with pytest.raises(TermBlowupError):
        f.multiply(g, cap=16)
    assert len(f.multiply(g, cap=4900)) == 4900


def test_max_coeff():
    assert ExpField().max_coeff() == 0.0
    assert ExpField(((3.0j, 0.0j), (-4.0, 1.0j))).max_coeff() == 4.0


def test_debug_serialization_round_trips():
    field = make_initial("one_plus_cosh_ax", (2.0,))
    payload = json.loads(field.debug_json())
    assert payload == [
        {"re_coeff": 0.5, "im_coeff": 0.0, "re_rate": -2.0, "im_rate": 0.0},
        {"re_coeff": 1.0, "im_coeff": 0.0, "re_rate": 0.0, "im_rate": 0.0},
        {"re_coeff": 0.5, "im_coeff": 0.0, "re_rate": 2.0, "im_rate": 0.0},
    ]
    rebuilt = ExpField((complex(d["re_coeff"], d["im_coeff"]),
                        complex(d["re_rate"], d["im_rate"]))
                       for d in payload)
    assert rebuilt.terms == field.terms
