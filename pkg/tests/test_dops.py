import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgdops.dops import (OperatorRing, SetTag, Which, compare_JD_DRJ, degrees, gorenstein_probe,
                         graded_D, graded_DRJ, graded_idealizer, graded_JD, graded_piece,
                         quotient_piece, required_vanishing, spec_for, stratify)
from sgdops.errors import ContainmentViolation, UnstableStratification
from sgdops.semigroup import MonomialIdeal, Semigroup
from sgdops.theta import FactoredGenerator, LinearForm, ThetaIdeal, ThetaPoly

import closed_forms as cf

RING_NAMES = ["a2", "a3", "a2_p1", "cusp", "tilde", "identity2"]


def test_spec_tags():
    assert spec_for("D", (1, 2)).source is SetTag.SEMIGROUP
    assert spec_for(Which.II, (1, 2)).target is SetTag.IDEAL_J
    s = spec_for("DRJ", (-1, 0))
    assert (s.source, s.target, s.degree) == (SetTag.SEMIGROUP, SetTag.IDEAL_J, (-1, 0))


def test_degrees_are_lexicographic():
    assert degrees([(0, 1), (-1, 0)]) == [(0, -1), (0, 0), (1, -1), (1, 0)]


def test_required_vanishing_a3(rings):
    ring = rings["a3"]
    pts = required_vanishing(ring, spec_for("D", (-1, 2)), radius=8)
    assert pts
    assert all(0 <= 3 * x - y <= 4 and y >= 0 for x, y in pts)
    # every line y = 3x - j with 0 <= j <= 4 is hit
    assert {3 * x - y for x, y in pts} == set(range(5))


def test_required_vanishing_empty_for_members(rings):
    assert required_vanishing(rings["a3"], spec_for("D", (2, 3))) == set()


def test_required_vanishing_idealizer_a2(rings):
    pts = required_vanishing(rings["a2"], spec_for("II", (-1, 0)), radius=8)
    assert {2 * x - y for x, y in pts} == {0, 1, 2}


def test_stratify_a2_idealizer(rings):
    strata = stratify(rings["a2"], spec_for("II", (-1, 0)))
    assert [(s.facets, s.values) for s in strata] == [((2,), (0,)), ((2,), (1,)), ((2,), (2,))]


def test_stratify_codimension_two(rings):
    # facets 3, 4 are theta1 - theta2 and theta1 - theta3
    strata = stratify(rings["book_j2"], spec_for("II", (-1, 0, 0)))
    assert any(s.dim == 1 and s.facets == (3, 4) and s.values == (1, 1) for s in strata)


def test_stratify_empty(rings):
    assert stratify(rings["a2"], spec_for("D", (1, 1))) == []


def test_unstable_stratification_detected(rings, monkeypatch):
    ring = OperatorRing(Semigroup([[1, 1, 1], [0, 1, 2]]))
    original = OperatorRing._strata

    def shrinking(self, spec, radius, depth):
        found = original(self, spec, radius, depth)
        return found if radius > 10 else found[:-1]

    monkeypatch.setattr(OperatorRing, "_strata", shrinking)
    with pytest.raises(UnstableStratification):
        ring.stratify(spec_for("II", (-1, 0)))


def test_graded_piece_examples(rings):
    a3 = rings["a3"]
    want = ThetaIdeal(2, [cf.df((3, -1), 4)])
    assert graded_piece(a3, spec_for("D", (-1, 2))).ideal.equals(want)
    want = ThetaIdeal(2, [cf.df((0, 1), 0) * cf.df((3, -1), 4)])
    assert graded_piece(a3, spec_for("D", (-2, -1))).ideal.equals(want)
    assert graded_piece(a3, spec_for("D", (1, 1))).ideal.is_unit()


def test_graded_D_a2(rings):
    want = ThetaIdeal(2, [FactoredGenerator((LinearForm((0, 1)), LinearForm((2, -1))))])
    assert graded_D(rings["a2"], (-1, -1)).ideal.equals(want)


def test_graded_D_cusp_column(rings):
    # degree (-1, c): the theta1 part vanishes on theta1 in {0, 2}
    for c in (-2, 0, 3):
        got = graded_D(rings["cusp"], (-1, c)).ideal
        want = ThetaIdeal(2, [cf.prod(2, cf.lin((1, 0)), cf.lin((1, 0), -2),
                                      cf.df((0, 1), -c - 1))])
        assert got.equals(want)


def test_graded_D_tilde_two_generators(rings):
    # (1, 0) is the gap of the semigroup
    got = graded_D(rings["tilde"], (1, 0)).ideal
    assert got.equals(ThetaIdeal(2, [cf.lin((1, 0)), cf.lin((0, 1))]))
    assert got.equals(cf.tilde_D((1, 0)))


@pytest.mark.parametrize("name, window", [("a2", 4), ("a3", 4), ("identity2", 3)])
def test_closed_form_matches_pipeline(rings, name, window):
    ring = rings[name]
    for d in degrees([(-window, window)] * 2):
        assert ring.graded_piece(spec_for("D", d)).ideal.equals(ring.closed_form_D(d)), d


def test_closed_form_matches_pipeline_3d(rings):
    ring = rings["book"]
    for d in degrees([(-1, 1)] * 3):
        assert ring.graded_piece(spec_for("D", d)).ideal.equals(ring.closed_form_D(d)), d


def test_spec_examples_for_idealizer_and_drj(rings):
    a2 = rings["a2"]
    assert graded_idealizer(a2, (-1, 0)).ideal.equals(ThetaIdeal(2, [cf.df((2, -1), 2)]))
    assert graded_idealizer(a2, (-1, -2)).ideal.equals(ThetaIdeal(2, [cf.df((0, 1), 2)]))
    assert graded_DRJ(a2, (-1, 0)).ideal.equals(
        ThetaIdeal(2, [cf.lin((0, 1)) * cf.df((2, -1), 2)]))
    p1, table = rings["a2_p1"], cf.QuadraticCurveP1()
    for d in [(-1, 0), (-3, -1), (-2, -2), (1, 1), (0, -1)]:
        assert graded_idealizer(p1, d).ideal.equals(table.idealizer(d)), d
        assert graded_DRJ(p1, d).ideal.equals(table.drj(d)), d


def test_drj_a3_example(rings):
    want = ThetaIdeal(2, [cf.df((0, 1), 1) * cf.df((3, -1), 2)])
    assert graded_DRJ(rings["a3"], (-1, -1)).ideal.equals(want)


def test_jd_is_sum_over_generators(rings):
    a3 = rings["a3"]
    d = (-1, 1)
    want = graded_D(a3, (-2, 0)).ideal + graded_D(a3, (-2, -1)).ideal
    assert graded_JD(a3, d).ideal.equals(want)


def test_quotient_pieces(rings):
    for name in ("a2", "a3", "a4"):
        ring = rings[name]
        n = int(name[1:])
        for d in [(-1, 1), (1, 1), (2, -3)]:
            if d[1] != 0 and d[1] != n * d[0]:
                assert quotient_piece(ring, d).is_zero
        q = quotient_piece(ring, (0, 0))
        assert q.numerator.is_unit()
        assert q.denominator.equals(ThetaIdeal(2, [FactoredGenerator((LinearForm((0, 1)),
                                                                      LinearForm((n, -1))))]))
    q = quotient_piece(rings["a2"], (1, 2))
    assert not q.is_zero and q.numerator.is_unit()
    assert q.denominator.equals(ThetaIdeal(2, [LinearForm((2, -1))]))


def test_containment_violation(rings, monkeypatch):
    ring = OperatorRing(Semigroup([[1, 1, 1], [0, 1, 2]]))
    monkeypatch.setattr(OperatorRing, "drj", lambda self, d: ring.D((5, 5)))
    monkeypatch.setattr(OperatorRing, "idealizer",
                        lambda self, d: type(ring.D((0, 0)))(tuple(d), Which.II,
                                                             ThetaIdeal(2, [LinearForm((0, 1))])))
    with pytest.raises(ContainmentViolation):
        ring.quotient((0, 0))


def test_compare_small(rings):
    assert compare_JD_DRJ(rings["a2"], [(-2, 2), (-2, 2)]).verdict == "ALL_EQUAL"
    rep = compare_JD_DRJ(rings["a3"], [(-1, 1), (-1, 1)])
    assert rep.verdict == "DIFFER(6)" and not rep.all_equal


def test_gorenstein_probe_small():
    a2 = Semigroup([[1, 1, 1], [0, 1, 2]])
    a3 = Semigroup([[1, 1, 1, 1], [0, 1, 2, 3]])
    assert gorenstein_probe(a2, [(-2, 2)] * 2) == {
        "omega_principal": True, "jd_equals_drj_on_window": True, "agree": True,
        "equivalence_applies": True}
    probe = gorenstein_probe(a3, [(-1, 1)] * 2)
    assert not probe["omega_principal"] and not probe["jd_equals_drj_on_window"]


@pytest.mark.parametrize("name", RING_NAMES)
def test_containment_chain(rings, name):
    ring = rings[name]
    for d in degrees([(-2, 2)] * 2):
        assert ring.containment_chain(d) == [], d


def test_containment_chain_3d(rings):
    for name in ("book", "book_j2"):
        for d in degrees([(-1, 1)] * 3):
            assert rings[name].containment_chain(d) == [], (name, d)


@pytest.mark.parametrize("name", RING_NAMES)
def test_unit_pieces(rings, name):
    ring = rings[name]
    sg, j = ring.semigroup, ring.ideal
    for d in degrees([(-3, 3)] * 2):
        if sg.member(d):
            assert ring.D(d).ideal.is_unit() and ring.idealizer(d).ideal.is_unit()
        if j.contains(d):
            assert ring.drj(d).ideal.is_unit() and ring.jd(d).ideal.is_unit()


# -- properties ----------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.sampled_from(RING_NAMES), st.sampled_from(["D", "II", "DRJ"]),
       st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_generators_vanish_on_required_set(rings, name, which, d):
    ring = rings[name]
    piece = ring.piece(which, d)
    for p in required_vanishing(ring, spec_for(which, d), radius=10):
        assert all(g(p) == 0 for g in piece.ideal.generators), (p, d)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(RING_NAMES), st.sampled_from(["D", "II", "DRJ", "JD"]),
       st.tuples(st.integers(-4, 4), st.integers(-4, 4)), st.randoms(use_true_random=False))
def test_action_lands_in_target(rings, name, which, d, rnd):
    """f(m) t^(d+m) lands in the target set, or f(m) = 0."""
    ring = rings[name]
    sg, j = ring.semigroup, ring.ideal
    ideal = ring.piece(which, d).ideal
    x, y = ThetaPoly.var(2, 0), ThetaPoly.var(2, 1)
    f = ThetaPoly.const(2, 0)
    for g in ideal.generators:
        f = f + g.expanded * (rnd.randint(-3, 3) + rnd.randint(-2, 2) * x + rnd.randint(-2, 2) * y)
    source = sg.member if which == "D" else (j.contains if which == "II" else sg.member)
    target = sg.member if which == "D" else j.contains
    for _ in range(25):
        m = (rnd.randint(0, 9), rnd.randint(0, 9))
        if not source(m):
            continue
        moved = (m[0] + d[0], m[1] + d[1])
        assert f(m) == 0 or target(moved), (m, d)
        # every operator preserves R_A
        assert f(m) == 0 or sg.member(moved)


def test_random_3d_soundness(rings):
    ring = rings["book_j2"]
    rnd = random.Random(3)
    for _ in range(6):
        d = tuple(rnd.randint(-2, 2) for _ in range(3))
        for which in ("II", "DRJ"):
            pts = required_vanishing(ring, spec_for(which, d), radius=5)
            gens = ring.piece(which, d).ideal.generators
            assert all(g(p) == 0 for p in pts for g in gens)


def test_p1_ideal_is_facet_prime(semigroups):
    a2 = semigroups["a2"]
    p1 = MonomialIdeal.from_facet_sets(a2, [[1]])
    assert p1.minimal_generators == ((1, 1), (1, 2))
