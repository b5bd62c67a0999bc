"""Seeded random instances small enough for the brute-force oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, islice

from simpdist.complexes import OrderedComplex
from simpdist.maps import SimplicialMap, simplicial_maps
from simpdist.oracle import DOMAIN_CAP, MAP_CAP, SIMPLEX_CAP
from simpdist.subdivision import subdivide_iter

MAX_LISTED_MAPS = 4000


def random_complex(rng: random.Random, n_vertices: int, max_dim: int = 2) -> OrderedComplex:
    """Random simplices on ``0..n-1``, topped up with isolated vertices."""
    verts = list(range(n_vertices))
    picked = []
    for _ in range(rng.randint(1, n_vertices + 1)):
        size = rng.randint(2, min(max_dim + 1, n_vertices)) if n_vertices > 1 else 1
        picked.append(tuple(sorted(rng.sample(verts, size))))
    used = {v for s in picked for v in s}
    picked += [(v,) for v in verts if v not in used]
    return OrderedComplex.from_simplices(picked)


def random_map(rng: random.Random, k: OrderedComplex, l: OrderedComplex) -> SimplicialMap:
    maps = list(islice(simplicial_maps(k, l), MAX_LISTED_MAPS))
    return rng.choice(maps)


def contiguous_perturbation(rng: random.Random, f: SimplicialMap, steps: int) -> SimplicialMap:
    """Walk ``steps`` random contiguity moves away from ``f``."""
    from simpdist.maps import contiguous_pair

    h = f
    for _ in range(steps):
        cands = []
        for v in h.domain.vertices:
            for w in h.codomain.vertices:
                a = dict(h.assignment)
                a[v] = w
                g = SimplicialMap(h.domain, h.codomain, a, check=False)
                try:
                    g._check()
                except Exception:
                    continue
                if contiguous_pair(h, g):
                    cands.append(g)
        h = rng.choice(cands)
    return h


@dataclass
class Instance:
    phi: SimplicialMap
    psi: SimplicialMap
    b: int
    c: int

    def __repr__(self):
        k, l = self.phi.domain, self.phi.codomain
        return (
            f"Instance(K={[list(s) for s in k.maximal]}, L={[list(s) for s in l.maximal]}, "
            f"phi={self.phi.images}, psi={self.psi.images}, b={self.b}, c={self.c})"
        )


def _hollow() -> list[OrderedComplex]:
    from simpdist.complexes import boundary_of_simplex, cycle

    return [cycle(3), cycle(4), cycle(5), boundary_of_simplex(3)]


HOLLOW = _hollow()


def _fits_oracle(k: OrderedComplex, b: int) -> bool:
    sd = subdivide_iter(k, b).complex
    return len(sd.maximal) <= SIMPLEX_CAP and len(sd.vertices) <= DOMAIN_CAP


def corpus(n: int, seed: int = 0) -> list[Instance]:
    """``n`` instances: domains of at most 6 vertices, codomains of at most 5, b <= 1, c <= 4."""
    rng = random.Random(seed)
    out: list[Instance] = []
    while len(out) < n:
        b = rng.choice((0, 0, 1))
        if rng.random() < 0.3:
            # a rotation of a cycle against an arbitrary self-map: nontrivial covers
            size = rng.choice((3, 4, 5) if b == 0 else (3, 4))
            k = HOLLOW[size - 3]
            shift = rng.randrange(size)
            phi = SimplicialMap(k, k, [(v + shift) % size for v in range(size)])
            psi = random_map(rng, k, k)
            out.append(Instance(phi, psi, b, rng.randint(0, 4)))
            continue
        if rng.random() < 0.3:
            k = rng.choice(HOLLOW[:3] if b == 0 else HOLLOW[:1])
        else:
            k = random_complex(rng, rng.randint(1, 6 if b == 0 else 4), max_dim=2)
        if not _fits_oracle(k, b):
            continue
        if rng.random() < 0.5:
            l = rng.choice(HOLLOW)
        else:
            l = random_complex(rng, rng.randint(1, 5), max_dim=rng.choice((1, 1, 2)))
        if sum(1 for _ in islice(simplicial_maps(k, l), MAP_CAP + 1)) > MAP_CAP:
            continue
        phi = random_map(rng, k, l)
        if rng.random() < 0.4:
            psi = contiguous_perturbation(rng, phi, rng.randint(1, 3))
        else:
            psi = random_map(rng, k, l)
        out.append(Instance(phi, psi, b, rng.randint(0, 4)))
    return out


def small_complexes() -> dict[str, OrderedComplex]:
    from simpdist.complexes import cycle, path, simplex

    return {
        "point": simplex(0),
        "edge": simplex(0, 1),
        "triangle": simplex(0, 1, 2),
        "C3": cycle(3),
        "C4": cycle(4),
        "path3": path(3),
    }


def all_subcomplex_generators(k: OrderedComplex):
    """Every non-empty set of maximal simplices of ``k``."""
    tops = list(k.maximal)
    for r in range(1, len(tops) + 1):
        yield from combinations(tops, r)


@lru_cache(maxsize=None)
def oracle_corpus(n: int, seed: int = 0) -> tuple[tuple[Instance, object], ...]:
    """``n`` instances inside every oracle cap, each with its oracle distance."""
    from simpdist.errors import OracleCapExceeded
    from simpdist.oracle import oracle_simpdist

    out = []
    batch = 0
    while len(out) < n:
        for inst in corpus(n, seed=seed * 1000 + batch):
            try:
                expected = oracle_simpdist(inst.phi, inst.psi, inst.b, inst.c)
            except OracleCapExceeded:
                continue
            out.append((inst, expected))
            if len(out) == n:
                break
        batch += 1
    return tuple(out)
