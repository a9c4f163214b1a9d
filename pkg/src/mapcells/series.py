"""Truncated formal power series over exact rationals.

A :class:`TruncatedSeries` of order N holds coefficients c_0..c_N and stands
for a series mod s^(N+1).  Arithmetic propagates truncation pessimistically
(min of operand orders); nothing ever zero-extends silently.  Operators of the
form a*theta + b, with theta = s d/ds, act diagonally on coefficients and
therefore preserve the order exactly, which is why all the identity checks
below are phrased through ``theta_apply`` rather than through derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .constants import tau_sequence


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_N of a series known mod s^(N+1)."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise ValueError("a truncated series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def from_coeffs(values, order: int) -> "TruncatedSeries":
        coeffs = [Fraction(v) for v in values][: order + 1]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        return TruncatedSeries(tuple(coeffs))

    @staticmethod
    def zero(order: int) -> "TruncatedSeries":
        return TruncatedSeries((Fraction(0),) * (order + 1))

    @staticmethod
    def monomial(coeff, power: int, order: int) -> "TruncatedSeries":
        values = [Fraction(0)] * (order + 1)
        if 0 <= power <= order:
            values[power] = Fraction(coeff)
        return TruncatedSeries(tuple(values))

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def first_nonzero(self) -> tuple[int, Fraction] | None:
        for n, c in enumerate(self.coeffs):
            if c != 0:
                return n, c
        return None

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("refusing to extend truncation order")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (Fraction, int)):
            return TruncatedSeries(tuple(c * other for c in self.coeffs))
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by s^k (k >= 0); the result is legitimately known mod s^(N+k+1)."""
        if k < 0:
            raise ValueError("negative shifts are not defined on truncated series")
        return TruncatedSeries((Fraction(0),) * k + self.coeffs)

    def differentiate(self) -> "TruncatedSeries":
        """d/ds; drops one order of truncation."""
        if self.order == 0:
            raise ValueError("cannot differentiate a series known only mod s")
        return TruncatedSeries(tuple(n * self.coeffs[n] for n in range(1, self.order + 1)))

    def theta(self) -> "TruncatedSeries":
        """s d/ds, acting diagonally: c_n -> n c_n.  Order preserved."""
        return TruncatedSeries(tuple(n * c for n, c in enumerate(self.coeffs)))


def theta_apply(series: TruncatedSeries, factors) -> TruncatedSeries:
    """Apply a product of operators (a*theta + b), given as (a, b) pairs, right to left."""
    out = series
    for a, b in reversed(list(factors)):
        out = out.theta() * Fraction(a) + out * Fraction(b)
    return out


def l0_series(order: int) -> TruncatedSeries:
    """Labelled-tree series L_0 = 1 + 3 z L_0^2; coefficient n is Catalan(n) 3^n."""
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [Fraction(0)] * (order + 1)
    coeffs[0] = Fraction(1)
    for n in range(1, order + 1):
        coeffs[n] = 3 * sum(coeffs[a] * coeffs[n - 1 - a] for a in range(n))
    return TruncatedSeries(tuple(coeffs))


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def kernel_check(order: int) -> TruncatedSeries:
    """Residual (1 - 6 z L_0)^2 - (1 - 12 z); identically zero when L_0 is correct."""
    l0 = l0_series(order)
    one = TruncatedSeries.monomial(1, 0, order)
    kernel = one - l0.shift(1).truncate(order) * 6
    straight = one - TruncatedSeries.monomial(12, 1, order)
    return kernel * kernel - straight


def tau_u_series(order: int) -> TruncatedSeries:
    """U(s) = sum_{g>=1} tau_g s^g, truncated at the given order."""
    tau = tau_sequence(order)
    return TruncatedSeries.from_coeffs([0] + tau[1:], order)


def verify_tau_ode(order: int) -> TruncatedSeries:
    """Residual of U = s/3 + U^2/2 + (s/3)(5 theta + 1)(5 theta - 1) U."""
    if order < 1:
        raise ValueError("order must be >= 1")
    u = tau_u_series(order)
    lin = theta_apply(u, [(5, 1), (5, -1)])
    rhs = TruncatedSeries.monomial(Fraction(1, 3), 1, order) + u * u * Fraction(1, 2)
    rhs = rhs + lin.shift(1).truncate(order) * Fraction(1, 3)
    return u - rhs


FALLING_FACTORS = [(5, -3), (5, -5), (5, -7), (5, -9), (5, -11)]


def verify_eliminate_identity(order: int) -> TruncatedSeries:
    """Residual of the five-factor identity tying s^2 U to 6U^2 - 2U^3.

    Zero residual means: (4/15)(5 theta - 3)...(5 theta - 11)(s^2 U)
    + (5 theta - 3)(6U^2 - 2U^3) - 12(theta - 1)(U - s/3) + 28 s^2 == 0.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    u = tau_u_series(order)
    s2u = u.shift(2).truncate(order)
    lhs = theta_apply(s2u, FALLING_FACTORS) * Fraction(4, 15)
    u2 = u * u
    u3 = u2 * u
    nonlinear = theta_apply(u2 * 6 - u3 * 2, [(5, -3)])
    linear = theta_apply(u - TruncatedSeries.monomial(Fraction(1, 3), 1, order), [(1, -1)]) * 12
    return lhs + nonlinear - linear + TruncatedSeries.monomial(28, 2, order)


def cprime_check(g: int) -> tuple[Fraction, Fraction]:
    """Raw and simplified forms of the case-(iii) constant; the contract is raw == simplified.

    raw        = 12(g+1)/(5g+7) tau_{g+2} - (6 sum_{pairs} - 2 sum_{triples})
    simplified = (4/15)(5g+5)(5g+3)(5g+1)(5g-1) tau_g
    with both inner sums over positive genera summing to g+2.
    """
    if g < 0:
        raise ValueError("g must be >= 0")
    tau = tau_sequence(g + 2)
    total = g + 2
    pairs = sum(
        (tau[g1] * tau[total - g1] for g1 in range(1, total)),
        Fraction(0),
    )
    triples = sum(
        (
            tau[g1] * tau[g2] * tau[total - g1 - g2]
            for g1 in range(1, total)
            for g2 in range(1, total - g1)
        ),
        Fraction(0),
    )
    raw = Fraction(12 * (g + 1), 5 * g + 7) * tau[total] - (6 * pairs - 2 * triples)
    simplified = (
        Fraction(4, 15) * (5 * g + 5) * (5 * g + 3) * (5 * g + 1) * (5 * g - 1) * tau[g]
    )
    return raw, simplified
