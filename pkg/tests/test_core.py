import pytest
from hypothesis import given, strategies as st

from treemaps.core import (
    GroundElement as E,
    LabeledPermutation,
    MapParameters,
    Pairing,
    canonical_cycle,
    compose,
    cycle_count,
    edge_ordering,
    face_count,
    invert,
    is_tree,
    support_graph,
)


def test_parameters_normalise_s():
    p = MapParameters((1, 0), {(1, 0): 2})
    assert p.s == (((0, 1), 2),)
    assert p.s_between(1, 0) == 2
    assert p.degrees == (4, 2)
    assert p.pair_count == 3
    assert MapParameters.from_upper((0, 0, 0), (1, 0, 2)) == MapParameters((0, 0, 0), {(0, 1): 1, (1, 2): 2})


@pytest.mark.parametrize("q, s", [((), {}), ((-1,), {}), ((0, 0), {(0, 0): 1}), ((0, 0), {(0, 2): 1}), ((0, 0), {(0, 1): -1})])
def test_parameters_reject_bad_input(q, s):
    with pytest.raises(ValueError):
        MapParameters(q, s)


def test_canonical_cycle_examples():
    g = canonical_cycle(MapParameters((1,)))
    assert g.cycles() == [(E(0, 0), E(0, 1))]
    # p = (1, 2, 1)
    g = canonical_cycle(MapParameters((0, 0, 0), {(0, 1): 1, (1, 2): 1}))
    assert g(E(0, 0)) == E(0, 0) and g(E(2, 0)) == E(2, 0)
    assert g(E(1, 0)) == E(1, 1) and g(E(1, 1)) == E(1, 0)
    # p = (3, 1)
    g = canonical_cycle(MapParameters((1, 0), {(0, 1): 1}))
    assert sorted(len(c) for c in g.cycles()) == [1, 3]


def test_cycle_count_examples():
    elems = [E(0, x) for x in range(4)]
    assert cycle_count(LabeledPermutation.identity(elems)) == 4
    assert cycle_count(LabeledPermutation({})) == 0
    p = MapParameters((1,))
    assert face_count(Pairing([(E(0, 0), E(0, 1))]), p) == 2
    p = MapParameters((0, 0, 0), {(0, 1): 1, (1, 2): 1})
    mu = Pairing([(E(0, 0), E(1, 0)), (E(1, 1), E(2, 0))])
    assert face_count(mu, p) == 1


perms = st.permutations(range(6)).map(lambda xs: LabeledPermutation({E(0, i): E(0, x) for i, x in enumerate(xs)}))


@given(perms)
def test_compose_identity_and_inverse(s):
    ident = LabeledPermutation.identity(s.domain)
    assert compose(ident, s) == s
    assert compose(s, invert(s)) == ident


def test_compose_disjoint_transpositions():
    a = LabeledPermutation({E(0, 0): E(0, 1), E(0, 1): E(0, 0), E(0, 2): E(0, 2), E(0, 3): E(0, 3)})
    b = LabeledPermutation({E(0, 0): E(0, 0), E(0, 1): E(0, 1), E(0, 2): E(0, 3), E(0, 3): E(0, 2)})
    ab = compose(a, b)
    assert ab == compose(b, a)
    assert sorted(len(c) for c in ab.cycles()) == [2, 2]


def test_compose_rejects_mismatched_domains():
    a = LabeledPermutation.identity([E(0, 0)])
    b = LabeledPermutation.identity([E(0, 1)])
    with pytest.raises(ValueError):
        compose(a, b)


def test_pairing_validation():
    with pytest.raises(ValueError):
        Pairing([(E(0, 0), E(0, 0))])
    with pytest.raises(ValueError):
        Pairing([(E(0, 0), E(0, 1)), (E(0, 1), E(0, 2))])


def test_support_graph_examples():
    assert is_tree(support_graph(MapParameters((0, 0, 0), {(0, 1): 1, (1, 2): 1})))
    assert not is_tree(support_graph(MapParameters((0, 0, 0), {(0, 1): 1, (0, 2): 1, (1, 2): 1})))
    assert is_tree(support_graph(MapParameters((0,))))
    assert not is_tree(support_graph(MapParameters((0, 0))))


def test_edge_ordering_examples():
    path = support_graph(MapParameters((0, 0, 0), {(0, 1): 1, (1, 2): 1}))
    assert edge_ordering(path) == [(0, 1), (1, 2)]
    star = support_graph(MapParameters((0, 0, 0), {(0, 2): 1, (1, 2): 1}))
    assert edge_ordering(star) == [(0, 2), (1, 2)]
    assert edge_ordering(support_graph(MapParameters((0,)))) == []
    with pytest.raises(ValueError):
        edge_ordering(support_graph(MapParameters((0, 0, 0), {(0, 1): 1, (0, 2): 1, (1, 2): 1})))


@given(st.integers(2, 6), st.data())
def test_edge_ordering_endpoint_property(n, data):
    # random tree by parent pointers
    edges = {}
    for v in range(1, n):
        edges[(data.draw(st.integers(0, v - 1)), v)] = 1
    order = edge_ordering(support_graph(MapParameters((0,) * n, edges)))
    assert len(order) == n - 1 and set(order) == set(edges)
    assert all(j in e for j, e in enumerate(order))
