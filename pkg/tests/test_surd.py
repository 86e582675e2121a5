import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sadiclab.surd import QuadraticSurd

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def surds(d):
    return st.builds(lambda a, b: QuadraticSurd(a, b, d), fractions, fractions)


@settings(max_examples=60, deadline=None)
@given(surds(2), surds(2))
def test_ring_ops_match_floats(a, b):
    for op in ("__add__", "__sub__", "__mul__"):
        got = float(getattr(a, op)(b))
        want = getattr(float(a), op)(float(b))
        assert got == pytest.approx(want, rel=1e-9, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(surds(5))
def test_inverse(a):
    if a.is_zero():
        return
    assert (a * a.inverse()) == QuadraticSurd(1)


@settings(max_examples=80, deadline=None)
@given(surds(3))
def test_sign_matches_float(a):
    f = float(a)
    if abs(f) > 1e-9:
        assert a.sign() == (1 if f > 0 else -1)
    else:
        # near-zero floats: the exact sign decides, zero only if exactly zero
        assert (a.sign() == 0) == a.is_zero()


def test_sqrt_of_square_is_rational():
    assert QuadraticSurd.sqrt(9) == QuadraticSurd(3)
    assert not QuadraticSurd.sqrt(2).is_rational()


def test_incompatible_radicands_rejected():
    with pytest.raises(ValueError):
        QuadraticSurd.sqrt(2) + QuadraticSurd.sqrt(3)


def test_golden_ratio_identity():
    phi = QuadraticSurd(Fraction(1, 2), Fraction(1, 2), 5)
    assert phi * phi == phi + 1
    assert float(phi) == pytest.approx((1 + math.sqrt(5)) / 2)


def test_high_precision_value():
    s = QuadraticSurd.sqrt(2).to_mpf(50)
    assert abs(s * s - 2) < 1e-48
