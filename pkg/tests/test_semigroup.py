import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgdops.errors import FullConeFace, WindowTooSmall
from sgdops.lattice import box_points, cube
from sgdops.semigroup import (MonomialIdeal, Semigroup, ideal_member, interior_ideal, member,
                              minimal_monomial_generators, omega_principal)

from conftest import MATRICES, normal_curve


def brute_member(gens, m, limit=12):
    """Membership by exhaustive nonnegative combinations, for small m."""
    reach = {tuple([0] * len(m))}
    frontier = list(reach)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(a + b for a, b in zip(p, g))
                if q not in reach and all(abs(x) <= limit for x in q):
                    reach.add(q)
                    nxt.append(q)
        frontier = nxt
    return tuple(m) in reach


@pytest.mark.parametrize("name, m, expected", [
    ("cusp", (1, 0), False),
    ("cusp", (0, 0), True),
    ("cusp", (2, 5), True),
    ("cusp", (1, 3), False),
    ("tilde", (1, 0), False),
    ("tilde", (1, 1), True),
    ("tilde", (3, 0), True),
    ("a2", (0, 0), True),
    ("a2", (1, 3), False),
])
def test_member(semigroups, name, m, expected):
    assert member(semigroups[name], m) is expected


@pytest.mark.parametrize("name", ["a2", "a3", "cusp", "tilde", "book"])
def test_member_matches_brute_force(semigroups, name):
    sg = semigroups[name]
    gens = sg.generators
    for p in box_points(cube(5, sg.cone.k)):
        p = tuple(int(x) for x in p)
        assert sg.member(p) == brute_member(gens, p), p


@pytest.mark.parametrize("name", ["a2", "cusp", "tilde"])
def test_member_mask_matches_scalar(semigroups, name):
    sg = semigroups[name]
    pts = box_points(cube(7, 2))
    mask = sg.member_mask(pts)
    assert list(mask) == [sg.member(tuple(int(x) for x in p)) for p in pts]


def test_membership_bounds(semigroups):
    assert semigroups["a2"].membership_bound == 0
    assert semigroups["a3"].membership_bound == 0
    assert semigroups["cusp"].membership_bound > 0
    assert semigroups["tilde"].membership_bound > 0


def test_holes(semigroups):
    window = [(-4, 4), (-4, 4)]
    assert semigroups["a2"].holes(window) == set()
    assert semigroups["cusp"].holes(window) == {(1, y) for y in range(0, 5)}
    assert semigroups["tilde"].holes(window) == {(1, 0)}


@pytest.mark.parametrize("name, flags", [
    ("a3", {"normal": True, "scored": True}),
    ("cusp", {"normal": False, "scored": True}),
    ("tilde", {"normal": False, "scored": False}),
    ("identity2", {"normal": True, "scored": True}),
])
def test_classify(semigroups, name, flags):
    assert semigroups[name].classify() == flags


def test_classify_rejects_small_window(semigroups):
    with pytest.raises(WindowTooSmall):
        semigroups["cusp"].classify([(0, 1), (0, 1)])


def test_face_prime_exponents(semigroups):
    a3 = semigroups["a3"]
    p1 = a3.face_prime_exponents(a3.cone.face([1]))
    assert p1((1, 1)) and p1((3, 3)) and not p1((2, 0))
    book = semigroups["book"]
    # the ray through t1 is the face on theta2 = theta3 = 0
    ray = book.cone.face([1, 2])
    pred = book.face_prime_exponents(ray)
    assert not pred((3, 0, 0)) and pred((1, 1, 0)) and pred((1, 0, 1))
    zero = a3.face_prime_exponents(a3.cone.zero_face)
    assert not zero((0, 0)) and zero((1, 0))
    with pytest.raises(FullConeFace):
        a3.face_prime_exponents(a3.cone.face([]))


def test_interior_ideal_generators(semigroups):
    assert interior_ideal(semigroups["a2"]).minimal_generators == ((1, 1),)
    assert interior_ideal(semigroups["a3"]).minimal_generators == ((1, 1), (1, 2))
    assert interior_ideal(semigroups["book"]).minimal_generators == ((2, 1, 1),)
    assert interior_ideal(semigroups["identity2"]).minimal_generators == ((1, 1),)
    assert interior_ideal(semigroups["cusp"]).minimal_generators == ((2, 1), (3, 1))


def test_rational_normal_curve_interior(semigroups):
    for n in (4, 5, 7):
        sg = Semigroup(normal_curve(n))
        assert sg.interior.minimal_generators == tuple((1, j) for j in range(1, n))


def test_ideal_member(semigroups):
    a2 = semigroups["a2"]
    assert ideal_member(a2.interior, (1, 1))
    assert not ideal_member(a2.interior, (0, 0))
    book = semigroups["book"]
    j2 = MonomialIdeal.from_facet_sets(book, [[1], [2], [3, 4]])
    assert ideal_member(j2, (2, 1, 1))
    assert not ideal_member(j2, (1, 1, 1))
    assert minimal_monomial_generators(j2) == [(2, 1, 1), (2, 1, 2), (2, 2, 1)]


def test_monomial_ideal_reduces_to_antichain(semigroups):
    a2 = semigroups["a2"]
    j = MonomialIdeal.from_facet_sets(a2, [[1], [1, 2]])
    assert [sorted(f.facet_set) for f in j.faces] == [[1]]
    with pytest.raises(FullConeFace):
        MonomialIdeal.from_facet_sets(a2, [[]])


def test_minimal_generators_window_check(semigroups):
    with pytest.raises(WindowTooSmall):
        minimal_monomial_generators(semigroups["a3"].interior, [(0, 0), (0, 0)])


def test_omega_principal(semigroups):
    assert omega_principal(semigroups["a2"])
    assert not omega_principal(semigroups["a3"])
    assert omega_principal(semigroups["book"])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["a2", "a3", "cusp", "tilde", "book"]), st.data())
def test_membership_closed_under_addition(semigroups, name, data):
    sg = semigroups[name]
    k = sg.cone.k
    pt = st.tuples(*[st.integers(-3, 6)] * k)
    a, b = data.draw(pt), data.draw(pt)
    if sg.member(a) and sg.member(b):
        assert sg.member(tuple(x + y for x, y in zip(a, b)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["a2", "a3", "cusp", "tilde"]), st.tuples(st.integers(-5, 8),
                                                              st.integers(-5, 8)))
def test_ideal_is_closed_under_semigroup_action(semigroups, name, m):
    sg = semigroups[name]
    j = sg.interior
    if j.contains(m):
        for g in sg.generators:
            assert j.contains(tuple(x + y for x, y in zip(m, g)))


def test_ideal_mask_matches_scalar(semigroups):
    sg = semigroups["tilde"]
    pts = box_points(cube(5, 2))
    assert list(sg.interior.mask(pts)) == [sg.interior.contains(tuple(int(x) for x in p))
                                           for p in pts]
    assert isinstance(sg.interior.mask(pts), np.ndarray)
