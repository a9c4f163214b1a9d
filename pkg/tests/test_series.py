import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapcells.series import (
    TruncatedSeries,
    catalan,
    cprime_check,
    kernel_check,
    l0_series,
    tau_u_series,
    theta_apply,
    verify_eliminate_identity,
    verify_tau_ode,
)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=12
)


def series_strategy(order: int):
    return st.lists(rationals, min_size=order + 1, max_size=order + 1).map(
        lambda cs: TruncatedSeries(tuple(cs))
    )


@settings(max_examples=60, deadline=None)
@given(series_strategy(8), series_strategy(8), series_strategy(8))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == TruncatedSeries.zero(8)


@settings(max_examples=40, deadline=None)
@given(series_strategy(6), series_strategy(10))
def test_truncation_is_pessimistic(a, b):
    assert (a + b).order == 6
    assert (a * b).order == 6


def test_l0_coefficients():
    l0 = l0_series(8)
    assert l0[0] == 1
    assert l0[1] == 3
    assert l0[3] == 135
    for n in range(9):
        assert l0[n] == catalan(n) * 3**n


def test_l0_functional_equation():
    n = 20
    l0 = l0_series(n)
    residual = l0 - TruncatedSeries.monomial(1, 0, n) - (l0 * l0).shift(1).truncate(n) * 3
    assert residual.is_zero()


@pytest.mark.parametrize("order", [1, 30, 60])
def test_kernel_identity(order):
    assert kernel_check(order).is_zero()


def test_kernel_evaluation_diagnostic():
    # partial sums at z = 1/12: 1 - 6 z L0 tends to 0, L0 tends to 2 from below
    # (convergence is n^{-1/2}-slow, so the bounds are loose consistency checks)
    l0 = l0_series(60)
    l0_partial = sum(float(c) / 12.0**n for n, c in enumerate(l0.coeffs))
    kernel_partial = 1 - 6 * l0_partial / 12.0
    assert 1.8 < l0_partial < 2.0
    assert 0 < kernel_partial < 0.1
    closer = sum(float(c) / 12.0**n for n, c in enumerate(l0_series(240).coeffs))
    assert closer > l0_partial  # monotone approach to L0(1/12) = 2


def test_theta_apply_examples():
    s = TruncatedSeries.monomial(1, 1, 5)
    assert theta_apply(s, [(1, 0)]) == s  # theta(s) = s
    assert theta_apply(s, [(5, -3)]) == s * 2  # (5 theta - 3) s = 2 s
    s2 = TruncatedSeries.monomial(1, 2, 5)
    factors = [(5, -3), (5, -5), (5, -7), (5, -9), (5, -11)]
    assert theta_apply(s2, factors) == s2 * (7 * 5 * 3 * 1 * -1)


def test_tau_ode_hand_coefficients():
    # residual construction reproduces the recurrence coefficient-by-coefficient
    u = tau_u_series(2)
    assert u[1] == Fraction(1, 3)
    assert u[2] == Fraction(49, 18)
    lin = theta_apply(u, [(5, 1), (5, -1)])
    assert lin[1] == 24 * Fraction(1, 3)  # (5+1)(5-1) tau_1
    assert (u * u)[2] == Fraction(1, 9)


@pytest.mark.parametrize("order", [1, 25, 50, 100])
def test_tau_ode_residual_zero(order):
    assert verify_tau_ode(order).is_zero()


@pytest.mark.parametrize("order", [2, 40, 100])
def test_eliminate_identity_residual_zero(order):
    assert verify_eliminate_identity(order).is_zero()


def test_cprime_values():
    raw0, simp0 = cprime_check(0)
    assert raw0 == simp0 == Fraction(4)
    raw1, simp1 = cprime_check(1)
    assert raw1 == simp1 == Fraction(512, 3)


def test_cprime_range():
    for g in range(51):
        raw, simplified = cprime_check(g)
        assert raw == simplified


def test_shift_extends_known_order():
    s = TruncatedSeries.from_coeffs([1, 2, 3], 2)
    shifted = s.shift(2)
    assert shifted.order == 4
    assert shifted.coeffs == (0, 0, 1, 2, 3)
    with pytest.raises(ValueError):
        s.truncate(5)
