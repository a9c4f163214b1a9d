"""Exact scalar types: rationals and rational multiples of half-integer powers of pi.

``Rational`` is an alias for :class:`fractions.Fraction`, which already keeps
values in lowest terms with a positive denominator (normalised eagerly, so
equality is structural).  :class:`SqrtPiRational` extends it with a factor
``pi**(e/2)``; the constants of interest are always rational or rational
divided by sqrt(pi), but intermediate Gamma values may carry a +1 exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


def rational_str(q: Fraction) -> str:
    """Serialise a rational as ``"p/q"`` (always with the denominator)."""
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den) if den else 1)


class GammaPoleError(ValueError):
    """Raised when Gamma is evaluated at a non-positive integer."""


@dataclass(frozen=True)
class SqrtPiRational:
    """A value ``coeff * pi**(sqrt_pi_exp/2)`` with ``sqrt_pi_exp`` in {-1, 0, +1}.

    The +1 exponent only occurs in intermediate Gamma values; conversion
    results are normalised into {0, -1} by exact division, never by a
    floating-point approximation.
    """

    coeff: Fraction
    sqrt_pi_exp: int = 0

    def __post_init__(self) -> None:
        if self.sqrt_pi_exp not in (-1, 0, 1):
            raise ValueError(f"unsupported sqrt-pi exponent {self.sqrt_pi_exp}")
        if self.coeff == 0 and self.sqrt_pi_exp != 0:
            object.__setattr__(self, "sqrt_pi_exp", 0)

    @staticmethod
    def exact(q: Fraction | int) -> "SqrtPiRational":
        return SqrtPiRational(Fraction(q), 0)

    def is_rational(self) -> bool:
        return self.sqrt_pi_exp == 0

    def __mul__(self, other: "SqrtPiRational | Fraction | int") -> "SqrtPiRational":
        if isinstance(other, (Fraction, int)):
            return SqrtPiRational(self.coeff * other, self.sqrt_pi_exp)
        exp = self.sqrt_pi_exp + other.sqrt_pi_exp
        if exp in (-2, 2):
            raise ValueError("product leaves the rational * pi^(e/2), |e|<=1 lattice")
        return SqrtPiRational(self.coeff * other.coeff, exp)

    __rmul__ = __mul__

    def __truediv__(self, other: "SqrtPiRational | Fraction | int") -> "SqrtPiRational":
        if isinstance(other, (Fraction, int)):
            return SqrtPiRational(self.coeff / other, self.sqrt_pi_exp)
        if other.coeff == 0:
            raise ZeroDivisionError("division by zero SqrtPiRational")
        exp = self.sqrt_pi_exp - other.sqrt_pi_exp
        if exp in (-2, 2):
            raise ValueError("quotient leaves the rational * pi^(e/2), |e|<=1 lattice")
        return SqrtPiRational(self.coeff / other.coeff, exp)

    def __rtruediv__(self, other: Fraction | int) -> "SqrtPiRational":
        return SqrtPiRational.exact(Fraction(other)) / self

    def to_float(self) -> float:
        """Display convenience only; never used in exact checks."""
        return float(self.coeff) * math.pi ** (self.sqrt_pi_exp / 2.0)

    def to_json(self) -> dict:
        return {"coeff": rational_str(self.coeff), "sqrt_pi_exp": self.sqrt_pi_exp}

    def __str__(self) -> str:
        if self.sqrt_pi_exp == 0:
            return rational_str(self.coeff)
        power = "pi^(1/2)" if self.sqrt_pi_exp == 1 else "pi^(-1/2)"
        return f"{rational_str(self.coeff)}*{power}"


def gamma_half(two_k: int) -> SqrtPiRational:
    """Exact Gamma(two_k/2) via the recursion Gamma(x+1) = x Gamma(x).

    Integer arguments give factorials; half-integer arguments reduce to
    Gamma(1/2) = sqrt(pi), downward recursion covering negative half-integers.
    """
    if two_k % 2 == 0:
        k = two_k // 2
        if k <= 0:
            raise GammaPoleError(f"Gamma pole at {k}")
        return SqrtPiRational.exact(Fraction(math.factorial(k - 1)))
    # Gamma(m + 1/2) for odd two_k = 2m + 1.
    coeff = Fraction(1)
    m = (two_k - 1) // 2
    x = Fraction(1, 2)
    while m > 0:
        coeff *= x
        x += 1
        m -= 1
    while m < 0:
        x -= 1
        coeff /= x
        m += 1
    return SqrtPiRational(coeff, 1)
