"""Exact multivariate differential algebra for the elimination proof.

Works in the polynomial ring over Q generated by s, s^(-1) and the symbols
U_0..U_5, where U_i stands for the i-th derivative of the one-variable series
U(s).  The pipeline builds the base equation E_0, derives it three times,
solves the (linear, triangular) system for U_2..U_5, and substitutes into the
five-factor operator expression; the result minus the literal right-hand side
must be the zero polynomial.

Laurent exponents are clamped to [-12, 12]: the derivation only needs small
shifts, so an overflow always indicates a transcription bug, not a need for
more room.
"""

from __future__ import annotations

from fractions import Fraction

from .rationals import rational_str
from .series import TruncatedSeries, tau_u_series

N_U_SYMBOLS = 6
S_EXP_MIN, S_EXP_MAX = -12, 12

# A monomial is (s_exp, u_exps) with u_exps a tuple of 6 non-negative ints.
Monomial = tuple[int, tuple[int, ...]]

ONE_U = (0,) * N_U_SYMBOLS


class LaurentOverflowError(ArithmeticError):
    """s-exponent left the configured window; signals a transcription bug."""


class StructureError(RuntimeError):
    """The system lost the linear/triangular/monomial-pivot structure."""


def _check_s_exp(e: int) -> int:
    if not S_EXP_MIN <= e <= S_EXP_MAX:
        raise LaurentOverflowError(f"s exponent {e} outside [{S_EXP_MIN}, {S_EXP_MAX}]")
    return e


class DiffPoly:
    """Finite map monomial -> rational, with no zero coefficients stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff != 0:
                    _check_s_exp(mono[0])
                    self.terms[mono] = Fraction(coeff)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "DiffPoly":
        return DiffPoly()

    @staticmethod
    def constant(c) -> "DiffPoly":
        return DiffPoly({(0, ONE_U): Fraction(c)})

    @staticmethod
    def s_power(e: int, coeff=1) -> "DiffPoly":
        return DiffPoly({(_check_s_exp(e), ONE_U): Fraction(coeff)})

    @staticmethod
    def u(i: int, coeff=1) -> "DiffPoly":
        exps = [0] * N_U_SYMBOLS
        exps[i] = 1
        return DiffPoly({(0, tuple(exps)): Fraction(coeff)})

    # -- ring operations ----------------------------------------------

    def _add_term(self, mono: Monomial, coeff: Fraction) -> None:
        new = self.terms.get(mono, Fraction(0)) + coeff
        if new == 0:
            self.terms.pop(mono, None)
        else:
            self.terms[mono] = new

    def __add__(self, other: "DiffPoly") -> "DiffPoly":
        out = DiffPoly(dict(self.terms))
        for mono, coeff in other.terms.items():
            out._add_term(mono, coeff)
        return out

    def __sub__(self, other: "DiffPoly") -> "DiffPoly":
        out = DiffPoly(dict(self.terms))
        for mono, coeff in other.terms.items():
            out._add_term(mono, -coeff)
        return out

    def __neg__(self) -> "DiffPoly":
        return DiffPoly({m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "DiffPoly":
        c = Fraction(c)
        if c == 0:
            return DiffPoly()
        return DiffPoly({m: coeff * c for m, coeff in self.terms.items()})

    def __mul__(self, other: "DiffPoly") -> "DiffPoly":
        out = DiffPoly()
        for (se_a, ue_a), ca in self.terms.items():
            for (se_b, ue_b), cb in other.terms.items():
                mono = (
                    _check_s_exp(se_a + se_b),
                    tuple(x + y for x, y in zip(ue_a, ue_b)),
                )
                out._add_term(mono, ca * cb)
        return out

    def __pow__(self, k: int) -> "DiffPoly":
        out = DiffPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DiffPoly) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def max_u_index(self) -> int:
        """Largest i with U_i occurring (or -1 for pure Laurent polynomials)."""
        top = -1
        for _, ue in self.terms:
            for i in range(N_U_SYMBOLS - 1, top, -1):
                if ue[i] > 0:
                    top = i
                    break
        return top

    # -- calculus ------------------------------------------------------

    def derive(self) -> "DiffPoly":
        """Formal d/ds: power rule on s (negative powers included), U_i -> U_{i+1}."""
        if any(ue[N_U_SYMBOLS - 1] > 0 for _, ue in self.terms):
            raise StructureError("derivative would need U_6; input may use U_0..U_4 only")
        out = DiffPoly()
        for (se, ue), coeff in self.terms.items():
            if se != 0:
                out._add_term((_check_s_exp(se - 1), ue), coeff * se)
            for i in range(N_U_SYMBOLS - 1):
                if ue[i] == 0:
                    continue
                bumped = list(ue)
                bumped[i] -= 1
                bumped[i + 1] += 1
                out._add_term((se, tuple(bumped)), coeff * ue[i])
        return out

    def theta(self) -> "DiffPoly":
        """s d/ds."""
        return DiffPoly({(_check_s_exp(se + 1), ue): c for (se, ue), c in self.derive().terms.items()})

    # -- structure probes ---------------------------------------------

    def coefficient_of_u(self, i: int) -> "DiffPoly":
        """Coefficient polynomial of U_i, defined only when U_i appears linearly."""
        out = DiffPoly()
        for (se, ue), coeff in self.terms.items():
            if ue[i] == 0:
                continue
            if ue[i] > 1:
                raise StructureError(f"U_{i} appears with exponent {ue[i]}; not linear")
            rest = list(ue)
            rest[i] = 0
            out._add_term((se, tuple(rest)), coeff)
        return out

    def drop_u(self, i: int) -> "DiffPoly":
        """Terms free of U_i."""
        return DiffPoly({(se, ue): c for (se, ue), c in self.terms.items() if ue[i] == 0})

    def substitute_u(self, i: int, replacement: "DiffPoly") -> "DiffPoly":
        """Replace U_i^k by replacement^k everywhere."""
        out = DiffPoly()
        powers: dict[int, DiffPoly] = {0: DiffPoly.constant(1)}
        for (se, ue), coeff in self.terms.items():
            k = ue[i]
            if k not in powers:
                powers[k] = powers[max(powers)] * replacement ** (k - max(powers))
            rest = list(ue)
            rest[i] = 0
            base = DiffPoly({(se, tuple(rest)): coeff})
            out = out + base * powers[k]
        return out

    def divide_by_monomial(self, divisor: "DiffPoly") -> "DiffPoly":
        """Exact division by a single-monomial polynomial (rational times s^k)."""
        if len(divisor.terms) != 1:
            raise StructureError("pivot coefficient is not a single monomial")
        (dse, due), dcoeff = next(iter(divisor.terms.items()))
        if any(due):
            raise StructureError("pivot coefficient involves U symbols")
        return DiffPoly(
            {(_check_s_exp(se - dse), ue): c / dcoeff for (se, ue), c in self.terms.items()}
        )

    # -- output ---------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    def to_text(self) -> str:
        """Canonical, deterministic rendering (ordered by s exponent, then U exponents)."""
        if not self.terms:
            return "0"
        parts = []
        for (se, ue), coeff in self.sorted_terms():
            factors = [rational_str(coeff)]
            if se:
                factors.append(f"s^{se}")
            for i, e in enumerate(ue):
                if e == 1:
                    factors.append(f"U{i}")
                elif e > 1:
                    factors.append(f"U{i}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DiffPoly({self.to_text()})"

    # -- evaluation on truncated series ---------------------------------

    def eval_on_tau_series(self, order: int) -> tuple[dict[int, Fraction], int]:
        """Substitute U_i -> (d/ds)^i U(s) with U the tau series at the given order.

        Returns (laurent coefficients, trusted_order): coefficients of s^m are
        reliable for m <= trusted_order, accounting for the truncation lost to
        derivatives and to negative s shifts.
        """
        derivatives = [tau_u_series(order)]
        for _ in range(N_U_SYMBOLS - 1):
            derivatives.append(derivatives[-1].differentiate())
        result: dict[int, Fraction] = {}
        trusted = order
        for (se, ue), coeff in self.terms.items():
            term: TruncatedSeries | None = None
            known = order
            for i, e in enumerate(ue):
                for _ in range(e):
                    known = min(known, derivatives[i].order)
                    term = derivatives[i] if term is None else term * derivatives[i]
            if term is None:
                term_coeffs = {0: Fraction(1)}
                known = order
            else:
                known = term.order
                term_coeffs = {n: c for n, c in enumerate(term.coeffs) if c != 0}
            trusted = min(trusted, known + se)
            for n, c in term_coeffs.items():
                m = n + se
                result[m] = result.get(m, Fraction(0)) + coeff * c
        return {m: c for m, c in result.items() if c != 0}, trusted


def assert_vanishes_on_series(poly: DiffPoly, order: int, up_to: int | None = None) -> int:
    """Check the polynomial evaluates to zero mod s^(trusted+1); returns the order checked."""
    coeffs, trusted = poly.eval_on_tau_series(order)
    limit = trusted if up_to is None else min(up_to, trusted)
    bad = [m for m, c in coeffs.items() if m <= limit and c != 0]
    if bad:
        raise AssertionError(f"nonzero series coefficients at s^{sorted(bad)[:5]}")
    return limit


def build_e0() -> DiffPoly:
    """E_0 = U_0 - s/3 - U_0^2/2 - (s/3)(25 s U_1 + 25 s^2 U_2 - U_0)."""
    u0 = DiffPoly.u(0)
    e0 = u0 - DiffPoly.s_power(1, Fraction(1, 3)) - (u0 * u0).scale(Fraction(1, 2))
    e0 = e0 - DiffPoly.s_power(2, Fraction(25, 3)) * DiffPoly.u(1)
    e0 = e0 - DiffPoly.s_power(3, Fraction(25, 3)) * DiffPoly.u(2)
    e0 = e0 + DiffPoly.s_power(1, Fraction(1, 3)) * u0
    return e0


def derived_system() -> list[DiffPoly]:
    """[E_0, E_1, E_2, E_3] with E_{i+1} = d/ds E_i."""
    system = [build_e0()]
    for _ in range(3):
        system.append(system[-1].derive())
    return system


def triangular_solve(order: str = "forward") -> dict[int, DiffPoly]:
    """Solve {E_0..E_3} for U_2..U_5 as polynomials in s^(+-), U_0, U_1.

    ``forward`` substitutes previous solutions before each pivot; ``backward``
    solves every equation for its top symbol first and back-substitutes.  Both
    must agree (checked in tests): the system is linear and triangular in
    U_2..U_5 with single-monomial pivots.
    """
    system = derived_system()
    solutions: dict[int, DiffPoly] = {}
    if order == "forward":
        for i, equation in enumerate(system):
            target = i + 2
            for j, sol in solutions.items():
                equation = equation.substitute_u(j, sol)
            pivot = equation.coefficient_of_u(target)
            if pivot.is_zero() or pivot.max_u_index() >= 0:
                raise StructureError(f"E_{i} is not cleanly linear in U_{target}")
            rest = equation.drop_u(target)
            solutions[target] = (-rest).divide_by_monomial(pivot)
            if solutions[target].max_u_index() > 1:
                raise StructureError(f"solution for U_{target} still involves U_2..U_5")
    elif order == "backward":
        raw: dict[int, DiffPoly] = {}
        for i, equation in enumerate(system):
            target = i + 2
            pivot = equation.coefficient_of_u(target)
            raw[target] = (-equation.drop_u(target)).divide_by_monomial(pivot)
        for target in (2, 3, 4, 5):
            sol = raw[target]
            for j in range(target - 1, 1, -1):
                sol = sol.substitute_u(j, solutions[j])
            solutions[target] = sol
    else:
        raise ValueError("order must be 'forward' or 'backward'")
    return solutions


def five_factor_lhs() -> DiffPoly:
    """(4/15)(5 theta - 3)(5 theta - 5)(5 theta - 7)(5 theta - 9)(5 theta - 11)(s^2 U_0)."""
    x = DiffPoly.s_power(2) * DiffPoly.u(0)
    for c in (-11, -9, -7, -5, -3):
        x = x.theta().scale(5) + x.scale(c)
    return x.scale(Fraction(4, 15))


def literal_rhs() -> DiffPoly:
    """-(5 theta - 3)(6 U_0^2 - 2 U_0^3) + 12 (theta - 1)(U_0 - s/3) - 28 s^2."""
    u0 = DiffPoly.u(0)
    block = (u0 * u0).scale(6) - (u0 * u0 * u0).scale(2)
    nonlinear = block.theta().scale(5) + block.scale(-3)
    affine = u0 - DiffPoly.s_power(1, Fraction(1, 3))
    linear = (affine.theta() - affine).scale(12)
    return -nonlinear + linear - DiffPoly.s_power(2, 28)


def derive_rhs_identity(solutions: dict[int, DiffPoly] | None = None) -> DiffPoly:
    """Residual of the derived identity; the zero polynomial certifies the proof.

    On mismatch the nonzero difference polynomial is returned as a diagnostic
    rather than raising, so callers can dump it.
    """
    if solutions is None:
        solutions = triangular_solve()
    lhs = five_factor_lhs()
    for i in (5, 4, 3, 2):
        lhs = lhs.substitute_u(i, solutions[i])
    return lhs - literal_rhs()
