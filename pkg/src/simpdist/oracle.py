"""Brute-force reference computations for tiny instances.

Nothing here shares search code with :mod:`simpdist.maps` or
:mod:`simpdist.distance`.  The contiguity oracle enumerates every vertex
assignment, keeps the simplicial ones, builds the whole contiguity graph
as a sparse matrix and reads distances off a graph shortest-path routine.
The distance oracle enumerates set partitions of the maximal simplices.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .complexes import OrderedComplex
from .errors import DomainMismatch, OracleCapExceeded
from .maps import SimplicialMap, compose, restrict
from .subdivision import iterate_approximation, subdivide_iter
from .values import INFINITE, DistanceValue

CODOMAIN_CAP = 6
DOMAIN_CAP = 9
MAP_CAP = 6000
SIMPLEX_CAP = 8
_CHUNK = 1 << 18


def _mask_table(codomain: OrderedComplex) -> np.ndarray:
    ok = np.zeros(1 << len(codomain.vertices), dtype=bool)
    ok[list(codomain.simplex_masks)] = True
    return ok


def all_simplicial_maps(domain: OrderedComplex, codomain: OrderedComplex, *, map_cap: int = MAP_CAP):
    """Assignments (rows of codomain positions) of every simplicial map, plus simplex masks."""
    n, q = len(domain.vertices), len(codomain.vertices)
    idx = domain.vertex_index
    simplices = [[idx[v] for v in s] for s in domain.maximal]
    ok = _mask_table(codomain)
    powers = q ** np.arange(n, dtype=np.int64)
    kept_rows, kept_masks = [], []
    total = q**n
    found = 0
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        rows = (codes[:, None] // powers[None, :]) % q
        bits = np.left_shift(1, rows).astype(np.int64)
        masks = np.stack([np.bitwise_or.reduce(bits[:, s], axis=1) for s in simplices], axis=1)
        good = ok[masks].all(axis=1)
        found += int(good.sum())
        if found > map_cap:
            raise OracleCapExceeded(f"more than {map_cap} simplicial maps")
        kept_rows.append(rows[good])
        kept_masks.append(masks[good])
    return np.concatenate(kept_rows), np.concatenate(kept_masks)


def contiguity_graph(masks: np.ndarray, ok: np.ndarray) -> csr_matrix:
    """Adjacency of the contiguity relation on the given maps (self-loops dropped)."""
    n = len(masks)
    rows, cols = [], []
    step = max(1, 2_000_000 // max(1, n * masks.shape[1]))
    for i0 in range(0, n, step):
        block = masks[i0 : i0 + step]
        adj = ok[block[:, None, :] | masks[None, :, :]].all(axis=2)
        r, c = np.nonzero(adj)
        rows.append(r + i0)
        cols.append(c)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    keep = r != c
    data = np.ones(int(keep.sum()), dtype=np.int8)
    return csr_matrix((data, (r[keep], c[keep])), shape=(n, n))


def oracle_contiguity_distance(
    f: SimplicialMap,
    g: SimplicialMap,
    *,
    codomain_cap: int = CODOMAIN_CAP,
    domain_cap: int = DOMAIN_CAP,
    map_cap: int = MAP_CAP,
) -> DistanceValue:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch("maps must be parallel")
    dom, cod = f.domain, f.codomain
    if len(cod.vertices) > codomain_cap or len(dom.vertices) > domain_cap:
        raise OracleCapExceeded(
            f"oracle caps are {domain_cap} domain / {codomain_cap} codomain vertices"
        )
    rows, masks = all_simplicial_maps(dom, cod, map_cap=map_cap)
    lookup = {tuple(r): i for i, r in enumerate(rows.tolist())}
    src, dst = lookup[tuple(f.positions)], lookup[tuple(g.positions)]
    graph = contiguity_graph(masks, _mask_table(cod))
    d = shortest_path(graph, unweighted=True, directed=False, indices=src)[dst]
    return INFINITE if np.isinf(d) else DistanceValue.finite(int(d))


def _set_partitions(items, blocks):
    """All partitions of ``items`` into exactly ``blocks`` non-empty blocks."""
    if not items:
        if blocks == 0:
            yield []
        return
    if blocks == 0 or len(items) < blocks:
        return
    first, rest = items[0], items[1:]
    # first item alone
    for p in _set_partitions(rest, blocks - 1):
        yield [[first]] + p
    # first item joins one block of a partition of the rest
    for p in _set_partitions(rest, blocks):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1 :]


def oracle_simpdist(
    phi: SimplicialMap,
    psi: SimplicialMap,
    b: int,
    c: int,
    *,
    rule: str = "last",
    simplex_cap: int = SIMPLEX_CAP,
    **caps,
) -> DistanceValue:
    k = phi.domain
    sd = subdivide_iter(k, b).complex
    if len(sd.maximal) > simplex_cap:
        raise OracleCapExceeded(f"Sd^{b}(K) has more than {simplex_cap} maximal simplices")
    iota = iterate_approximation(k, b, 0, rule=rule)
    gphi, gpsi = compose(phi, iota), compose(psi, iota)
    tops = list(sd.maximal)

    @lru_cache(maxsize=None)
    def good(block: frozenset[int]) -> bool:
        j = OrderedComplex._trusted([tops[i] for i in block])
        d = oracle_contiguity_distance(restrict(gphi, j), restrict(gpsi, j), **caps)
        return d.is_finite and d.k <= c

    m = len(tops)
    for blocks in range(1, m + 1):
        for part in _set_partitions(list(range(m)), blocks):
            if all(good(frozenset(p)) for p in part):
                return DistanceValue.finite(blocks - 1)
    return INFINITE
