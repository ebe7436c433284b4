from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgdops import groebner as gb
from sgdops.theta import (FactoredGenerator, LinearForm, ThetaIdeal, ThetaPoly,
                          descending_factorial, eval_poly, ideal_equal, ideal_intersection,
                          ideal_membership, ideal_sum, vanishing_ideal_of_stratum)

H1 = LinearForm((0, 1))      # theta2
H2 = LinearForm((3, -1))     # 3 theta1 - theta2


def df(h, n):
    return descending_factorial(h, n)


def test_descending_factorial_values():
    g = df(LinearForm((1,)), 3)
    assert [g((x,)) for x in range(6)] == [0, 0, 0, 0, 24, 120]
    assert df(LinearForm((1,)), -1).is_unit()
    assert len(df(H2, 4).factors) == 5


def test_poly_arithmetic():
    x = ThetaPoly.var(2, 0)
    y = ThetaPoly.var(2, 1)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p((3, 1)) == 8
    assert (x ** 3).degree == 3
    assert (p - p).is_zero()
    assert ThetaPoly.const(2, Fraction(1, 2)).is_constant()


def test_exact_division():
    x = ThetaPoly.var(2, 0)
    y = ThetaPoly.var(2, 1)
    assert ((x + 1) * y).exact_div(y) == x + 1
    assert (x + y).exact_div(y) is None


def test_linear_form_key_up_to_scalar():
    assert LinearForm((2, -4), 6).key == LinearForm((-1, 2), -3).key
    assert LinearForm.from_poly(ThetaPoly.linear((Fraction(1, 2), 1), 3)) == LinearForm((1, 2), 6)
    with pytest.raises(ValueError):
        LinearForm((0, 0))


def test_membership_of_descending_factorial():
    """(h2, 4)! is not in <(h2, 5)!, h1 (h2, 4)!>."""
    jd = ThetaIdeal(2, [df(H2, 5), FactoredGenerator((H1,)) * df(H2, 4)])
    assert not ideal_membership(df(H2, 4), jd)
    assert ideal_membership(df(H2, 5), jd)
    assert ThetaIdeal(2, [df(H2, 4)]).contains(df(H2, 5))


def test_equality_and_containment():
    a = ThetaIdeal(2, [df(H2, 4)])
    b = ThetaIdeal(2, [df(H2, 5), FactoredGenerator((H1,)) * df(H2, 4)])
    assert b.issubset(a) and not a.issubset(b)
    assert not ideal_equal(a, b)
    assert ideal_equal(a, ThetaIdeal(2, [df(H2, 4).expanded]))


def test_unit_and_zero():
    u = ThetaIdeal.unit(2)
    z = ThetaIdeal.zero(2)
    assert u.is_unit() and not z.is_unit()
    assert z.is_zero() and z.issubset(u)
    x = ThetaPoly.var(2, 0)
    assert ThetaIdeal(2, [x, x - 1]).is_unit()


def test_intersection_of_points():
    p = vanishing_ideal_of_stratum((0, 0), [])
    q = vanishing_ideal_of_stratum((1, 0), [])
    both = ideal_intersection(p, q)
    for pt, expected in [((0, 0), True), ((1, 0), True), ((2, 0), False)]:
        assert all(g(pt) == 0 for g in both.generators) is expected
    assert both.contains(FactoredGenerator((LinearForm((0, 1)),)))


def test_intersection_of_principal_ideals_is_lcm():
    a = ThetaIdeal(2, [df(H1, 2)])
    b = ThetaIdeal(2, [FactoredGenerator((H1.shifted(-1), H2))])
    got = a.intersect(b)
    assert got.equals(ThetaIdeal(2, [df(H1, 2) * FactoredGenerator((H2,))]))


def test_codimension_two_intersection():
    """<h3 - 1, h4 - 1> intersected with a hyperplane stays two-generated."""
    h3 = LinearForm((1, 0, -1))
    h4 = LinearForm((1, -1, 0))
    line = ThetaIdeal(3, [h3.shifted(-1), h4.shifted(-1)])
    plane = ThetaIdeal(3, [LinearForm((0, 0, 1))])
    got = line.intersect(plane)
    assert got.equals(ThetaIdeal(3, [FactoredGenerator((h3.shifted(-1), LinearForm((0, 0, 1)))),
                                     FactoredGenerator((h4.shifted(-1), LinearForm((0, 0, 1))))]))


def test_sum():
    a = ThetaIdeal(2, [H1])
    b = ThetaIdeal(2, [H1.shifted(-1)])
    assert ideal_sum(a, b).is_unit()


def test_eval_poly():
    assert eval_poly(df(H1, 1), (0, 3)) == 6


def test_vanishing_ideal_of_stratum_line():
    ideal = vanishing_ideal_of_stratum((0, 2), [(1, 3)])
    assert all(g((t, 2 + 3 * t)) == 0 for g in ideal.generators for t in range(-3, 4))
    assert any(g((1, 1)) != 0 for g in ideal.generators)


def test_groebner_is_reduced_and_monic():
    x, y = ThetaPoly.var(2, 0), ThetaPoly.var(2, 1)
    ideal = ThetaIdeal(2, [x * x - y, x * y - 1])
    basis = ideal.groebner
    for p in basis:
        _, c = p.leading()
        assert c == 1
    leads = [p.leading()[0] for p in basis]
    for i, a in enumerate(leads):
        for j, b in enumerate(leads):
            if i != j:
                assert not gb.divides(a, b)


def test_unit_identity_for_cusp_ring():
    """(h+d-3)^2 - (h+d-2)(h+d-4) = 1 for every shift d."""
    h = ThetaPoly.var(1, 0)
    for d in range(-6, 7):
        u = h + d
        assert (u - 3) * (u - 3) - (u - 2) * (u - 4) == ThetaPoly.const(1, 1)


# -- properties ----------------------------------------------------------------

def _form(a, b, s):
    return LinearForm((a, b), s) if (a, b) != (0, 0) else LinearForm((1, 0), s)


factored = st.lists(st.builds(_form, st.integers(-3, 3), st.integers(-3, 3), st.integers(-4, 4)),
                    min_size=0, max_size=3).map(lambda fs: FactoredGenerator(tuple(fs), None, 2))


@settings(max_examples=40, deadline=None)
@given(st.lists(factored, min_size=1, max_size=3), factored)
def test_multiples_are_members(gens, extra):
    ideal = ThetaIdeal(2, gens)
    for g in gens:
        assert ideal.contains(g * extra)


@settings(max_examples=30, deadline=None)
@given(st.lists(factored, min_size=1, max_size=2), st.lists(factored, min_size=1, max_size=2))
def test_intersection_is_inside_both(a, b):
    ia, ib = ThetaIdeal(2, a), ThetaIdeal(2, b)
    both = ia.intersect(ib)
    assert both.issubset(ia) and both.issubset(ib)
    for g in a:
        for h in b:
            assert both.contains(g * h)


@settings(max_examples=40, deadline=None)
@given(st.lists(factored, min_size=1, max_size=3))
def test_equality_is_reflexive_under_expansion(gens):
    ideal = ThetaIdeal(2, gens)
    expanded = ThetaIdeal(2, [g.expanded for g in gens])
    assert ideal.equals(expanded) and expanded.equals(ideal)
