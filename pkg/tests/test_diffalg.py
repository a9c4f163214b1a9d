from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapcells.diffalg import (
    DiffPoly,
    LaurentOverflowError,
    StructureError,
    assert_vanishes_on_series,
    build_e0,
    derive_rhs_identity,
    derived_system,
    five_factor_lhs,
    literal_rhs,
    triangular_solve,
)


def test_e0_terms():
    e0 = build_e0()
    assert e0.coefficient_of_u(2) == DiffPoly.s_power(3, Fraction(-25, 3))
    # U_0^2 coefficient -1/2
    sq = [c for (se, ue), c in e0.terms.items() if ue[0] == 2 and se == 0]
    assert sq == [Fraction(-1, 2)]
    assert_vanishes_on_series(e0, 45, up_to=40)


def test_derive_examples():
    s_u0 = DiffPoly.s_power(1) * DiffPoly.u(0)
    assert s_u0.derive() == DiffPoly.u(0) + DiffPoly.s_power(1) * DiffPoly.u(1)
    assert DiffPoly.s_power(-1).derive() == DiffPoly.s_power(-2, -1)
    u0sq = DiffPoly.u(0) * DiffPoly.u(0)
    assert u0sq.derive() == (DiffPoly.u(0) * DiffPoly.u(1)).scale(2)


def test_derive_rejects_u5():
    with pytest.raises(StructureError):
        DiffPoly.u(5).derive()


def test_laurent_window_is_enforced():
    with pytest.raises(LaurentOverflowError):
        DiffPoly.s_power(-12) * DiffPoly.s_power(-12)


monomials = st.tuples(
    st.integers(min_value=-2, max_value=2),
    st.tuples(*[st.integers(min_value=0, max_value=2) for _ in range(3)]),
)


def poly_strategy():
    return st.dictionaries(
        monomials.map(lambda m: (m[0], m[1] + (0, 0, 0))),
        st.fractions(min_value=Fraction(-9), max_value=Fraction(9), max_denominator=6),
        max_size=4,
    ).map(DiffPoly)


@settings(max_examples=50, deadline=None)
@given(poly_strategy(), poly_strategy())
def test_derive_is_a_derivation(p, q):
    lhs = (p * q).derive()
    rhs = p.derive() * q + p * q.derive()
    assert lhs == rhs


def test_system_is_triangular_with_monomial_pivots():
    system = derived_system()
    for i, eq in enumerate(system):
        pivot = eq.coefficient_of_u(i + 2)
        assert len(pivot.terms) == 1
        assert pivot == DiffPoly.s_power(3, Fraction(-25, 3))
        assert eq.max_u_index() == i + 2


def test_u2_solution_exact():
    sols = triangular_solve()
    expected = (
        DiffPoly.s_power(-3, Fraction(3, 25)) * DiffPoly.u(0)
        + (DiffPoly.s_power(-3, Fraction(-3, 50)) * DiffPoly.u(0) * DiffPoly.u(0))
        + DiffPoly.s_power(-2, Fraction(-1, 25))
        + DiffPoly.s_power(-2, Fraction(1, 25)) * DiffPoly.u(0)
        + DiffPoly.s_power(-1, -1) * DiffPoly.u(1)
    )
    assert sols[2] == expected


def test_solutions_only_use_u0_u1():
    sols = triangular_solve()
    for i in (2, 3, 4, 5):
        assert sols[i].max_u_index() <= 1


def test_substituting_solutions_annihilates_system():
    sols = triangular_solve()
    for eq in derived_system():
        reduced = eq
        for i in (5, 4, 3, 2):
            reduced = reduced.substitute_u(i, sols[i])
        assert reduced.is_zero()


def test_elimination_order_independence():
    forward = triangular_solve("forward")
    backward = triangular_solve("backward")
    assert all(forward[i] == backward[i] for i in (2, 3, 4, 5))


def test_solutions_match_series_derivatives():
    sols = triangular_solve()
    for i, sol in sols.items():
        assert_vanishes_on_series(sol - DiffPoly.u(i), 46, up_to=38)


def test_rhs_contains_minus_28_s2():
    rhs = literal_rhs()
    assert rhs.terms.get((2, (0,) * 6)) == Fraction(-28)


def test_five_factor_lhs_reaches_u5():
    assert five_factor_lhs().max_u_index() == 5


def test_derived_identity_is_zero():
    assert derive_rhs_identity().is_zero()


def test_canonical_text_is_deterministic():
    e0 = build_e0()
    text = e0.to_text()
    assert text == DiffPoly(dict(reversed(list(e0.terms.items())))).to_text()
    assert "U2" in text and "s^3" in text
