"""Truncated Laurent series: valuation reporting and window bookkeeping."""

import math

import pytest

from pcurvkit import QQ, FunctionField, TruncatedLaurentSeries
from pcurvkit.laurent import ValuationUndecided


def S(offset, coeffs, exact=True, prec=None):
    return TruncatedLaurentSeries(QQ, "q", offset, coeffs, prec=prec, exact=exact)


def test_valuation_of_exact_series():
    assert S(-2, [1, 0, 3]).valuation() == -2
    assert S(0, [0, 0, 5]).valuation() == 2  # leading zeros stripped
    assert S(0, [], exact=True).valuation() == math.inf


def test_valuation_undecided_on_finite_window():
    s = S(0, [0, 0, 0], exact=False, prec=3)
    with pytest.raises(ValuationUndecided):
        s.valuation()


def test_coeff_outside_window():
    s = S(1, [2, 3], exact=False, prec=2)
    assert s.coeff(1) == 2
    assert s.coeff(0) == 0  # below offset, known zero
    with pytest.raises(ValuationUndecided):
        s.coeff(5)
    assert S(0, [1]).coeff(100) == 0  # exact series knows its tail


def test_addition_tracks_precision():
    a = S(0, [1, 1, 1], exact=False, prec=3)
    b = S(0, [2, 2], exact=False, prec=2)
    c = a + b
    assert c.coeff(0) == 3
    assert c.coeff(1) == 3
    assert c.known_end() == 2  # pessimistic window


def test_cancellation_pushes_valuation_up():
    a = S(0, [1, 4])
    b = S(0, [-1, 1])
    assert (a + b).valuation() == 1
    assert (a - a).valuation() == math.inf


def test_multiplication_adds_valuations():
    a = S(-1, [1, 2])
    b = S(2, [3])
    c = a * b
    assert c.valuation() == 1
    assert c.coeff(1) == 3
    assert c.coeff(2) == 6


def test_scale_and_shift():
    a = S(0, [1, 1])
    assert a.scale(5).coeff(0) == 5
    assert a.shift(3).valuation() == 3


def test_from_rational_terminating():
    K = FunctionField(QQ, "q")
    q = K.gen()
    f = (K.one + q) / (q * q)
    s = TruncatedLaurentSeries.from_rational(f, prec=10)
    assert s.exact
    assert s.valuation() == -2
    assert s.coeff(-2) == 1 and s.coeff(-1) == 1 and s.coeff(0) == 0


def test_from_rational_geometric():
    K = FunctionField(QQ, "q")
    q = K.gen()
    s = TruncatedLaurentSeries.from_rational(K.one / (K.one - q), prec=6)
    assert not s.exact
    for k in range(6):
        assert s.coeff(k) == 1
    with pytest.raises(ValuationUndecided):
        s.coeff(6)


def test_equality_includes_window():
    assert S(0, [1, 2]) == S(0, [1, 2])
    assert S(0, [1, 2]) != S(0, [1, 2], exact=False, prec=2)
