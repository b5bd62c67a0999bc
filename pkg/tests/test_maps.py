import random

import pytest
from hypothesis import given, settings, strategies as st

from simpdist.complexes import OrderedComplex, cycle, full_subcomplex, path, simplex
from simpdist.errors import (
    CompositionMismatch,
    DomainMismatch,
    NotASubcomplex,
    NotSimplicial,
    SearchBudgetExceeded,
    UnmappedVertex,
)
from simpdist.maps import (
    ContiguityChain,
    SimplicialMap,
    check_simplicial,
    compose,
    constant,
    contiguity_distance,
    contiguous_pair,
    identity,
    inclusion,
    restrict,
    simplicial_maps,
)
from simpdist.oracle import oracle_contiguity_distance
from simpdist.product import ordered_product
from simpdist.values import INFINITE, DistanceValue

from corpus import random_complex, random_map

C3 = cycle(3)


def test_check_simplicial_examples():
    check_simplicial(C3, C3, {0: 0, 1: 1, 2: 2})
    check_simplicial(C3, C3, {0: 0, 1: 1, 2: 0})
    sq = ordered_product(simplex(0, 1), simplex(0, 1)).complex
    with pytest.raises(NotSimplicial) as exc:
        check_simplicial(sq, path(2), [0, 1, 1, 2])
    assert exc.value.simplex in sq.maximal


def test_unmapped_vertex():
    with pytest.raises(UnmappedVertex):
        check_simplicial(C3, C3, {0: 0, 1: 1})
    with pytest.raises(UnmappedVertex):
        check_simplicial(C3, C3, {0: 0, 1: 1, 2: 7})


def test_contiguous_pair_examples():
    e = simplex(0, 1)
    assert contiguous_pair(identity(C3), identity(C3))
    assert contiguous_pair(identity(e), constant(e, e, 0))
    assert not contiguous_pair(identity(C3), constant(C3, C3, 0))
    with pytest.raises(DomainMismatch):
        contiguous_pair(identity(C3), identity(e))


def test_contiguity_distance_examples():
    e = simplex(0, 1)
    d, chain = contiguity_distance(identity(C3), identity(C3), 3)
    assert d == DistanceValue.finite(0) and chain.length == 0
    d, chain = contiguity_distance(identity(e), constant(e, e, 0), 3)
    assert d == DistanceValue.finite(1)
    p = path(2)
    inc = inclusion(p, C3)
    d, chain = contiguity_distance(inc, constant(p, C3, 0), 5)
    assert d == DistanceValue.finite(2)
    assert chain.is_valid() and chain.start == inc and chain.end == constant(p, C3, 0)
    # the same chain as written out by hand is valid too
    middle = SimplicialMap(p, C3, {0: 0, 1: 1, 2: 1})
    assert ContiguityChain((inc, middle, constant(p, C3, 0))).is_valid()
    d, chain = contiguity_distance(identity(C3), constant(C3, C3, 0), 10)
    assert d == INFINITE and chain is None


def test_contiguity_distance_unknown_at_depth_cap():
    p = path(2)
    d, _ = contiguity_distance(inclusion(p, C3), constant(p, C3, 0), 1)
    assert not d.is_decided


def test_contiguity_distance_frontier_budget():
    k = path(5)
    with pytest.raises(SearchBudgetExceeded):
        contiguity_distance(constant(k, k, 0), constant(k, k, 5), 10, max_frontier=5)


def test_restrict_examples():
    e02 = simplex(0, 2)
    assert restrict(identity(C3), e02) == inclusion(e02, C3)
    assert restrict(identity(C3), C3) == identity(C3)
    with pytest.raises(NotASubcomplex):
        restrict(identity(C3), simplex(0, 1, 2))


def test_compose_examples():
    f = SimplicialMap(C3, C3, [0, 1, 0])
    assert compose(identity(C3), f) == f
    assert compose(constant(C3, C3, 2), f) == constant(C3, C3, 2)
    with pytest.raises(CompositionMismatch):
        compose(identity(simplex(0, 1)), f)


def test_chain_operations():
    p = path(2)
    _, chain = contiguity_distance(inclusion(p, C3), constant(p, C3, 0), 5)
    assert chain.reversed().is_valid()
    assert chain.padded(4).length == 4 and chain.padded(4).compressed() == chain
    back = chain.reversed()
    loop = chain.then(back)
    assert loop.is_valid() and loop.start == loop.end
    sub = full_subcomplex(p, [(0, 1)])
    assert chain.restrict(sub).is_valid()


def _random_pair(seed):
    rng = random.Random(seed)
    k = random_complex(rng, rng.randint(1, 4))
    l = random_complex(rng, rng.randint(1, 4), max_dim=1)
    return rng, k, l, random_map(rng, k, l), random_map(rng, k, l)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_contiguity_pair_symmetric_reflexive(seed):
    _, _, _, f, g = _random_pair(seed)
    assert contiguous_pair(f, f)
    assert contiguous_pair(f, g) == contiguous_pair(g, f)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_contiguity_distance_metric(seed):
    rng, k, l, f, g = _random_pair(seed)
    h = random_map(rng, k, l)
    d = lambda a, b: contiguity_distance(a, b, 64)[0]
    assert d(f, f) == DistanceValue.finite(0)
    assert d(f, g) == d(g, f)
    assert d(f, g) == oracle_contiguity_distance(f, g)
    if d(f, g).is_finite and d(g, h).is_finite:
        assert d(f, h).k <= d(f, g).k + d(g, h).k


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_composites_of_contiguous_pairs_are_contiguous(seed):
    rng, k, l, f, f2 = _random_pair(seed)
    m = random_complex(rng, rng.randint(1, 4), max_dim=1)
    g, g2 = random_map(rng, l, m), random_map(rng, l, m)
    if contiguous_pair(f, f2) and contiguous_pair(g, g2):
        assert contiguous_pair(compose(g, f), compose(g2, f2))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_chains_survive_pre_and_post_composition(seed):
    rng, k, l, f, g = _random_pair(seed)
    d, chain = contiguity_distance(f, g, 64)
    if not d.is_finite:
        return
    j = random_complex(rng, rng.randint(1, 3))
    alpha = random_map(rng, j, k)
    m = random_complex(rng, rng.randint(1, 3))
    beta = random_map(rng, l, m)
    moved = chain.precompose(alpha).postcompose(beta)
    assert moved.is_valid() and moved.length == chain.length
    assert moved.start == compose(beta, compose(f, alpha))
    assert moved.end == compose(beta, compose(g, alpha))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_restriction_monotonicity(seed):
    rng, k, l, f, g = _random_pair(seed)
    d, chain = contiguity_distance(f, g, 64)
    if not d.is_finite:
        return
    sub = full_subcomplex(k, rng.sample(list(k.maximal), rng.randint(1, len(k.maximal))))
    restricted = chain.restrict(sub)
    assert restricted.is_valid()
    d2, _ = contiguity_distance(restrict(f, sub), restrict(g, sub), 64)
    assert d2.k <= d.k


def test_simplicial_maps_matches_brute_force():
    from itertools import product

    k, l = path(2), C3
    listed = set(m.images for m in simplicial_maps(k, l))
    brute = set()
    for images in product(l.vertices, repeat=len(k.vertices)):
        try:
            SimplicialMap(k, l, images)
        except NotSimplicial:
            continue
        brute.add(images)
    assert listed == brute
