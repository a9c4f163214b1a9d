"""The quadratic recurrence for the map-counting constants, all in exact arithmetic.

``tau_sequence`` iterates

    tau_{g+1} = (5g+1)(5g-1)/3 * tau_g + 1/2 * sum_{g1=1}^{g} tau_{g1} tau_{g+1-g1}

from tau_0 = -1.  ``t_constant`` converts tau_g to the growth constant
t_g = tau_g / (2^(5g-2) Gamma((5g-1)/2)), which is rational for odd g and a
rational multiple of pi^(-1/2) for even g.  ``implied_pair_moment`` rearranges
one recurrence step into the second-moment form, which equals 1/6 identically.
"""

from __future__ import annotations

from fractions import Fraction

from .rationals import SqrtPiRational, gamma_half


_TAU_CACHE: list[Fraction] = [Fraction(-1)]


def tau_sequence(g_max: int) -> list[Fraction]:
    """tau_0..tau_{g_max}, exact.  Deterministic and prefix-stable.

    Values are memoised module-wide; the cache only ever grows, so concurrent
    readers at worst recompute a suffix.
    """
    if g_max < 0:
        raise ValueError("g_max must be >= 0")
    tau = _TAU_CACHE
    if g_max < len(tau):
        return tau[: g_max + 1]
    local = list(tau)
    for g in range(len(local) - 1, g_max):
        head = Fraction((5 * g + 1) * (5 * g - 1), 3) * local[g]
        cross = sum((local[g1] * local[g + 1 - g1] for g1 in range(1, g + 1)), Fraction(0))
        local.append(head + cross / 2)
    tau.extend(local[len(tau) :])
    return local


def t_constant(g: int) -> SqrtPiRational:
    """t_g = tau_g / (2^(5g-2) Gamma((5g-1)/2)), exact."""
    if g < 0:
        raise ValueError("g must be >= 0")
    tau_g = tau_sequence(g)[g]
    denom = gamma_half(5 * g - 1) * Fraction(2) ** (5 * g - 2)
    return SqrtPiRational.exact(tau_g) / denom


def implied_pair_moment(g: int) -> Fraction:
    """(tau_{g+1} - 1/2 sum tau tau) / (2 (5g+1)(5g-1) tau_g); equals 1/6 for all g."""
    if g < 0:
        raise ValueError("g must be >= 0")
    tau = tau_sequence(g + 1)
    cross = sum((tau[g1] * tau[g + 1 - g1] for g1 in range(1, g + 1)), Fraction(0))
    numerator = tau[g + 1] - cross / 2
    return numerator / (2 * (5 * g + 1) * (5 * g - 1) * tau[g])
