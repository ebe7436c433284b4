import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgdops.errors import ParseError
from sgdops.notation import Notation
from sgdops.theta import FactoredGenerator, LinearForm, ThetaIdeal, descending_factorial

NT = Notation(2, [(0, 1), (3, -1)])


def test_render_descending_factorials():
    h2 = LinearForm((3, -1))
    g = descending_factorial(h2, 4) * FactoredGenerator((LinearForm((0, 1)),))
    assert NT.factored(g) == "df(h2,4)*h1"
    assert NT.factored(FactoredGenerator((), None, 2)) == "1"
    assert NT.factored(FactoredGenerator((h2.shifted(-2),))) == "h2 - 2"


def test_render_ideal():
    ideal = ThetaIdeal(2, [descending_factorial(LinearForm((3, -1)), 5)])
    assert NT.ideal(ideal) == "<df(h2,5)>"
    assert NT.ideal(ThetaIdeal.zero(2)) == "<0>"


def test_render_non_facet_form():
    assert NT.linear(LinearForm((1, 1), 2)) == "theta1 + theta2 + 2"


@pytest.mark.parametrize("text", [
    "df(h2,4)*h1",
    "theta1^2 - 3/2*theta2 + 1",
    "(h1 - 1)*(h2 + 3)",
    "-h1",
    "df(h1, -1)",
    "2*theta1*theta2",
])
def test_parse_render_roundtrip(text):
    g = NT.parse(text)
    again = NT.parse(NT.factored(g))
    assert again.expanded == g.expanded


def test_parse_keeps_factorisation():
    g = NT.parse("df(h2,4)*h1")
    assert len(g.factors) == 6 and g.fully_factored


@pytest.mark.parametrize("text, where", [
    ("", "column 1"),
    ("h3", "column 1"),
    ("theta1 +", "column 9"),
    ("df(theta1^2, 3)", "column"),
    ("theta1 $ 2", "column 8"),
    ("(theta1", "column"),
    ("theta1^x", "column 8"),
])
def test_parse_errors_carry_position(text, where):
    with pytest.raises(ParseError, match=where):
        NT.parse(text)


def _form(a, b, s):
    return LinearForm((a, b), s) if (a, b) != (0, 0) else LinearForm((0, 1), s)


generators = st.lists(st.builds(_form, st.integers(-4, 4), st.integers(-4, 4),
                                st.integers(-6, 6)), max_size=5).map(
    lambda fs: FactoredGenerator(tuple(fs), None, 2))


@settings(max_examples=80, deadline=None)
@given(generators)
def test_factored_roundtrip_property(g):
    back = NT.parse(NT.factored(g))
    assert back.expanded == g.expanded


@settings(max_examples=40, deadline=None)
@given(generators)
def test_expanded_roundtrip_property(g):
    back = NT.parse(NT.expanded(g))
    assert back.expanded == g.expanded
