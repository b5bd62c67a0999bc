from hypothesis import given, settings

from simpdist.complexes import cycle, has_simplex, simplex
from simpdist.errors import NotAProductComplex
from simpdist.product import ordered_product, projection

import pytest

from test_complexes import complexes


def test_edge_times_point():
    p = ordered_product(simplex(0, 1), simplex(0))
    assert p.pairs == ((0, 0), (1, 0))
    assert p.complex.maximal == ((0, 1),)


def test_square():
    p = ordered_product(simplex(0, 1), simplex(0, 1))
    tops = {tuple(p.pairs[i] for i in s) for s in p.complex.maximal}
    assert tops == {((0, 0), (0, 1), (1, 1)), ((0, 0), (1, 0), (1, 1))}


def test_circle_squared_counts():
    p = ordered_product(cycle(3), cycle(3))
    assert len(p.complex.vertices) == 9
    assert len(p.complex.maximal) == 18
    assert all(len(s) == 3 for s in p.complex.maximal)


def test_projection_examples():
    sq = ordered_product(simplex(0, 1), simplex(0, 1))
    pr1 = projection(sq, 1)
    s = tuple(sq.encode(*x) for x in ((0, 0), (0, 1), (1, 1)))
    assert pr1.image(s) == (0, 1)
    pt = ordered_product(simplex(0), cycle(3))
    pr2 = projection(pt, 2)
    assert [pr2(pt.encode(0, v)) for v in range(3)] == [0, 1, 2]
    c = ordered_product(cycle(3), cycle(3))
    pr = projection(c, 1)
    for s in c.complex.maximal:
        assert has_simplex(cycle(3), pr.image(s))


def test_projection_needs_product():
    with pytest.raises(NotAProductComplex):
        projection(cycle(3), 1)


@settings(max_examples=40, deadline=None)
@given(complexes(), complexes())
def test_projections_of_simplices_are_simplices(k, l):
    p = ordered_product(k, l)
    for s in p.complex.simplices:
        pairs = [p.pairs[i] for i in s]
        assert has_simplex(k, {u for u, _ in pairs})
        assert has_simplex(l, {v for _, v in pairs})
        # a chain under the componentwise order
        pairs.sort()
        assert all(a[0] <= b[0] and a[1] <= b[1] for a, b in zip(pairs, pairs[1:]))
    assert len(p.complex.vertices) == len(k.vertices) * len(l.vertices)
