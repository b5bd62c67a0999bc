import pytest

from simpdist.complexes import cycle, path, simplex
from simpdist.errors import OracleCapExceeded
from simpdist.maps import SimplicialMap, constant, identity, inclusion, simplicial_maps
from simpdist.oracle import (
    _set_partitions,
    all_simplicial_maps,
    oracle_contiguity_distance,
    oracle_simpdist,
)
from simpdist.values import INFINITE, DistanceValue

C3 = cycle(3)


def test_contiguity_oracle_examples():
    e = simplex(0, 1)
    assert oracle_contiguity_distance(identity(e), constant(e, e, 0)) == DistanceValue.finite(1)
    assert oracle_contiguity_distance(identity(C3), constant(C3, C3, 0)) == INFINITE
    p = path(2)
    assert oracle_contiguity_distance(inclusion(p, C3), constant(p, C3, 0)) == DistanceValue.finite(2)


def test_simpdist_oracle_examples():
    e = simplex(0, 1)
    assert oracle_simpdist(identity(e), constant(e, e, 0), 0, 1) == DistanceValue.finite(0)
    assert oracle_simpdist(identity(C3), constant(C3, C3, 0), 0, 2) == DistanceValue.finite(1)
    f = SimplicialMap(C3, C3, [2, 2, 1])
    for c in range(3):
        assert oracle_simpdist(f, f, 1, c) == DistanceValue.finite(0)


def test_map_enumeration_agrees_with_backtracking():
    for k, l in ((path(2), C3), (C3, cycle(4)), (simplex(0, 1, 2), path(2))):
        rows, _ = all_simplicial_maps(k, l)
        idx = l.vertex_index
        listed = {tuple(idx[w] for w in m.images) for m in simplicial_maps(k, l)}
        assert {tuple(r) for r in rows.tolist()} == listed


def test_set_partitions_are_bell_numbers():
    bell = [1, 1, 2, 5, 15, 52]
    for n in range(1, 6):
        total = sum(1 for b in range(1, n + 1) for _ in _set_partitions(list(range(n)), b))
        assert total == bell[n]


def test_caps():
    big = cycle(7)
    with pytest.raises(OracleCapExceeded):
        oracle_contiguity_distance(identity(big), identity(big))
    with pytest.raises(OracleCapExceeded):
        oracle_simpdist(identity(C3), identity(C3), 2, 1)
