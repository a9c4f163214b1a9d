import time
from fractions import Fraction

import pytest

from mapcells.constants import implied_pair_moment, t_constant, tau_sequence
from mapcells.rationals import GammaPoleError, SqrtPiRational, gamma_half


def test_tau_first_values():
    assert tau_sequence(0) == [Fraction(-1)]
    assert tau_sequence(1) == [Fraction(-1), Fraction(1, 3)]
    assert tau_sequence(3)[2] == Fraction(49, 18)
    assert tau_sequence(3)[3] == Fraction(2450, 27)


def test_tau_prefix_stability_and_signs():
    long = tau_sequence(40)
    for g_max in (0, 1, 5, 17):
        assert tau_sequence(g_max) == long[: g_max + 1]
    assert long[0] < 0
    assert all(t > 0 for t in long[1:])


def test_gamma_half_values():
    assert gamma_half(4) == SqrtPiRational.exact(Fraction(1))  # Gamma(2)
    assert gamma_half(12) == SqrtPiRational.exact(Fraction(120))  # Gamma(6) = 5!
    assert gamma_half(9) == SqrtPiRational(Fraction(105, 16), 1)  # Gamma(9/2)
    assert gamma_half(1) == SqrtPiRational(Fraction(1), 1)  # Gamma(1/2)
    assert gamma_half(-1) == SqrtPiRational(Fraction(-2), 1)  # Gamma(-1/2)


@pytest.mark.parametrize("two_k", [0, -2, -4])
def test_gamma_half_poles(two_k):
    with pytest.raises(GammaPoleError):
        gamma_half(two_k)


def test_gamma_recursion_property():
    # Gamma(x+1) = x Gamma(x) across the half-integer lattice
    for two_k in range(-9, 12, 2):
        if two_k in (0, -2, -4, -6, -8):
            continue
        lhs = gamma_half(two_k + 2)
        rhs = gamma_half(two_k) * Fraction(two_k, 2)
        assert lhs == rhs


def test_t_constants():
    assert t_constant(0) == SqrtPiRational(Fraction(2), -1)
    assert t_constant(1) == SqrtPiRational(Fraction(1, 24), 0)
    assert t_constant(2) == SqrtPiRational(Fraction(7, 4320), -1)


def test_t_constant_parity():
    for g in range(12):
        assert t_constant(g).sqrt_pi_exp == (-1 if g % 2 == 0 else 0)


def test_pair_moment_is_one_sixth_to_200():
    t0 = time.monotonic()
    assert all(implied_pair_moment(g) == Fraction(1, 6) for g in range(201))
    assert time.monotonic() - t0 < 1.0


def test_pair_moment_small_cases_by_hand():
    # g=0: (1/3 - 0) / (2 * 1 * (-1) * (-1))
    assert implied_pair_moment(0) == Fraction(1, 3) / 2
    # g=1: (49/18 - 1/18) / (2 * 6 * 4 * 1/3)
    assert implied_pair_moment(1) == Fraction(48, 18) / 16
