from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import laurent, ratfuncs

from gmacdonald.coeff import (BudgetExceeded, Coeff, DivisionByZero, EvaluationPole, Params,
                              RegistryMismatch, evaluate, reset_budget, gamma, gamma_half, q, q1, q2, q3,
                              set_budget, sym, t)


def test_evaluate_on_square_roots():
    # (1 - t/q)/(1 - Q) at s_q = 3, s_t = 2, Q = 5
    c = (1 - t() / q()) / (1 - sym("Q"))
    assert evaluate(c, {"s_q": 3, "s_t": 2, "Q": 5}) == Coeff(Fraction(-5, 36))


def test_parameter_relations():
    assert q1() == t().inv()
    assert q2() == q()
    assert q3() == t() / q()
    assert q1() * q2() * q3() == Coeff(1)
    assert gamma_half() ** 2 == gamma()
    assert gamma() ** 2 == t() / q()


def test_registry_and_poles():
    with pytest.raises(RegistryMismatch):
        Params({"nope": 1})
    with pytest.raises(DivisionByZero):
        Coeff(0).inv()
    with pytest.raises(EvaluationPole):
        evaluate(1 / (1 - sym("Q")), {"Q": 1})


def test_budget():
    token = set_budget(3)
    try:
        with pytest.raises(BudgetExceeded):
            (1 + q() + t() + sym("u1")) * (1 + sym("u2"))
    finally:
        reset_budget(token)


def test_random_params_are_reproducible():
    a, b = Params.random(3, 4), Params.random(3, 4)
    assert a.values == b.values
    assert "Q" in a.values and "a" not in a.values
    with a.active():
        assert q().is_numeric()


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    if not b.is_zero():
        assert (a * b) / b == a


@given(ratfuncs())
def test_json_round_trip(a):
    assert Coeff.from_json(a.to_json()) == a


@given(laurent(), laurent(), st.integers(2, 50), st.integers(2, 50), st.integers(2, 50))
def test_evaluation_is_a_homomorphism(a, b, x, y, z):
    point = {"q4": Fraction(x, 7), "t4": Fraction(y, 11), "u1": Fraction(z, 13)}
    assert evaluate(a * b, point) == evaluate(a, point) * evaluate(b, point)
    assert evaluate(a + b, point) == evaluate(a, point) + evaluate(b, point)


@given(st.integers(0, 10 ** 6))
def test_random_points_are_not_resonant(seed):
    p = Params.random(seed, 3)
    qv, tv = p.values["q4"] ** 4, p.values["t4"] ** 4
    assert qv != tv and qv != 1 and tv != 1 and qv * tv != 1
