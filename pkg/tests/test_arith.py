"""Q(eps) arithmetic: orders, signs, substitution."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadchi.arith import (
    EPS,
    EpsPoly,
    EpsRational,
    eps_sign,
    eps_sign_threshold,
    eps_substitute,
)


def test_eps_sign_of_eps_is_positive():
    assert eps_sign(EPS) == 1


def test_eps_smaller_than_any_positive_rational():
    assert eps_sign(EPS - Fraction(1, 1000)) == -1
    assert EPS < Fraction(1, 10 ** 12)
    assert EPS > 0


def test_eps_sign_quotient_example():
    # (2 eps^2 - eps) / (1 + eps): lowest numerator term is -eps
    x = (2 * EPS * EPS - EPS) / (1 + EPS)
    assert eps_sign(x) == -1
    for e0 in (Fraction(1, 10 ** 6), Fraction(1, 10 ** 9)):
        assert eps_substitute(x, e0) < 0


def test_eps_substitute_examples():
    assert eps_substitute(EPS, Fraction(1, 4)) == Fraction(1, 4)
    x = (1 - EPS) / (1 + EPS)
    assert eps_substitute(x, Fraction(1, 3)) == Fraction(1, 2)
    y = 2 * EPS * EPS - EPS
    assert eps_substitute(y, Fraction(1, 2)) == 0


def test_substitute_validates_input():
    with pytest.raises(ValueError):
        eps_substitute(EPS, 0)
    x = EpsRational(EpsPoly.const(1), EpsPoly((-Fraction(1, 2), 1)))  # 1/(eps - 1/2)
    with pytest.raises(ZeroDivisionError):
        eps_substitute(x, Fraction(1, 2))


def test_canonical_form_reduces():
    a = EpsRational(EpsPoly((0, 2)), EpsPoly((0, 0, 4)))  # 2e / 4e^2 = 1/(2e)
    b = EpsRational(EpsPoly.const(1), EpsPoly((0, 2)))
    assert a == b


_ints = st.integers(min_value=-9, max_value=9)


def _rand_eps(d):
    coeffs = d.draw(st.lists(_ints, min_size=1, max_size=3))
    den = d.draw(st.lists(_ints, min_size=1, max_size=3).filter(lambda cs: any(cs)))
    return EpsRational(EpsPoly(coeffs), EpsPoly(den))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_field_axioms(data):
    a = _rand_eps(data)
    b = _rand_eps(data)
    c = _rand_eps(data)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    if not a.is_zero:
        assert a * (EpsRational(1) / a) == EpsRational(1)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_order_total_transitive_positive_cone(data):
    a = _rand_eps(data)
    b = _rand_eps(data)
    c = _rand_eps(data)
    # totality
    assert (a < b) + (a == b) + (b < a) == 1
    # transitivity on the sampled triple
    lo, mid, hi = sorted([a, b, c])
    assert lo <= mid <= hi and lo <= hi
    # positive cone is closed under + and *
    if a > 0 and b > 0:
        assert a + b > 0
        assert a * b > 0


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_sign_threshold_property(data):
    x = _rand_eps(data)
    s = eps_sign(x)
    if s == 0:
        return
    estar = eps_sign_threshold(x)
    assert estar > 0
    for e in (estar / 2, estar / 4):
        v = eps_substitute(x, e)
        assert (v > 0) - (v < 0) == s


def test_epspoly_trailing_invariant():
    p = EpsPoly((1, 2, 0, 0))
    assert p.coeffs == (Fraction(1), Fraction(2))
    assert EpsPoly((0, 0)).is_zero
