import pytest

from sgdops.dops import OperatorRing
from sgdops.semigroup import MonomialIdeal, Semigroup

MATRICES = {
    "identity2": [[1, 0], [0, 1]],
    "a2": [[1, 1, 1], [0, 1, 2]],
    "a3": [[1, 1, 1, 1], [0, 1, 2, 3]],
    "book": [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]],
    "cusp": [[2, 3, 0], [0, 0, 1]],
    "tilde": [[1, 2, 3, 0], [1, 0, 0, 1]],
}


def normal_curve(n):
    return [[1] * (n + 1), list(range(n + 1))]


@pytest.fixture(scope="session")
def semigroups():
    return {name: Semigroup(m) for name, m in MATRICES.items()}


@pytest.fixture(scope="session")
def rings(semigroups):
    """Operator rings keyed by name; caches are shared across tests."""
    sg = semigroups
    out = {name: OperatorRing(s) for name, s in sg.items()}
    out["a2_p1"] = OperatorRing(sg["a2"], MonomialIdeal.from_facet_sets(sg["a2"], [[1]]))
    out["book_j2"] = OperatorRing(sg["book"],
                                  MonomialIdeal.from_facet_sets(sg["book"], [[1], [2], [3, 4]]))
    for n in (4, 5, 7):
        out[f"a{n}"] = OperatorRing(Semigroup(normal_curve(n)))
    return out
