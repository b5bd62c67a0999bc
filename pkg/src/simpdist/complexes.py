"""Finite ordered simplicial complexes.

Vertices are non-negative integers and the integer order is the vertex
order, so every simplex is stored as a strictly increasing tuple.  A
complex keeps only its maximal simplices; faces are implied.
"""

from __future__ import annotations

import logging
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    DuplicateVertexInSimplex,
    EmptyGenerators,
    EmptySimplex,
    NotASimplexOfAmbient,
    OrphanVertex,
    RedundantMaximalSimplex,
)

logger = logging.getLogger(__name__)

Simplex = tuple[int, ...]


def canonical_simplex(vertices: Iterable[int]) -> Simplex:
    """Sort and deduplicate a vertex collection."""
    s = tuple(sorted(set(int(v) for v in vertices)))
    if not s:
        raise EmptySimplex("a simplex needs at least one vertex")
    return s


def maximal_only(simplices: Iterable[Simplex]) -> list[Simplex]:
    """Drop every simplex that is a face of another one in the collection."""
    uniq = sorted(set(simplices), key=lambda s: (-len(s), s))
    kept: list[Simplex] = []
    kept_sets: list[frozenset[int]] = []
    for s in uniq:
        fs = frozenset(s)
        if any(fs <= k for k in kept_sets):
            continue
        kept.append(s)
        kept_sets.append(fs)
    return sorted(kept)


class OrderedComplex:
    """An abstract simplicial complex given by its maximal simplices.

    The constructor validates its input strictly; use
    :meth:`from_simplices` to canonicalize arbitrary simplex lists.
    Instances are immutable and hashable.
    """

    def __init__(self, maximal: Iterable[Sequence[int]], vertices: Iterable[int] | None = None):
        maximal = tuple(tuple(sorted(int(v) for v in s)) for s in maximal)
        if vertices is None:
            vertices = {v for s in maximal for v in s}
        object.__setattr__(self, "maximal", tuple(sorted(maximal)))
        object.__setattr__(self, "vertices", tuple(sorted(set(int(v) for v in vertices))))
        validate(self)

    def __setattr__(self, name, value):
        if name in ("maximal", "vertices"):
            raise AttributeError("OrderedComplex is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[int]]) -> "OrderedComplex":
        """Canonicalize, deduplicate and drop redundant faces."""
        canon = [canonical_simplex(s) for s in simplices]
        kept = maximal_only(canon)
        dropped = len(set(canon)) - len(kept)
        if dropped:
            logger.warning("dropped %d redundant face(s)", dropped)
        return cls(kept)

    @classmethod
    def _trusted(cls, maximal: Iterable[Simplex]) -> "OrderedComplex":
        # caller guarantees canonical, irredundant input
        obj = cls.__new__(cls)
        maximal = tuple(sorted(maximal))
        object.__setattr__(obj, "maximal", maximal)
        object.__setattr__(obj, "vertices", tuple(sorted({v for s in maximal for v in s})))
        return obj

    def __eq__(self, other):
        if not isinstance(other, OrderedComplex):
            return NotImplemented
        return self.maximal == other.maximal and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.maximal, self.vertices))

    def __repr__(self):
        body = ", ".join(str(list(s)) for s in self.maximal[:6])
        more = ", ..." if len(self.maximal) > 6 else ""
        return f"OrderedComplex([{body}{more}])"

    def __len__(self):
        return len(self.maximal)

    @property
    def dimension(self) -> int:
        return max(len(s) for s in self.maximal) - 1

    @cached_property
    def vertex_index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _maximal_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(s) for s in self.maximal)

    @cached_property
    def _star_index(self) -> dict[int, tuple[int, ...]]:
        star: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, s in enumerate(self.maximal):
            for v in s:
                star[v].append(i)
        return {v: tuple(ix) for v, ix in star.items()}

    def star(self, v: int) -> tuple[Simplex, ...]:
        """Maximal simplices containing ``v``."""
        return tuple(self.maximal[i] for i in self._star_index[v])

    def has_simplex(self, s: Iterable[int]) -> bool:
        return has_simplex(self, s)

    @cached_property
    def simplices(self) -> tuple[Simplex, ...]:
        """Every simplex, sorted by (dimension, vertex list)."""
        out: set[Simplex] = set()
        for s in self.maximal:
            for r in range(1, len(s) + 1):
                out.update(combinations(s, r))
        return tuple(sorted(out, key=lambda t: (len(t), t)))

    @cached_property
    def simplex_masks(self) -> frozenset[int]:
        """Bitmasks (over vertex positions) of all simplices."""
        idx = self.vertex_index
        masks: set[int] = set()
        for s in self.maximal:
            bits = [1 << idx[v] for v in s]
            n = len(bits)
            for sub in range(1, 1 << n):
                m = 0
                for j in range(n):
                    if sub >> j & 1:
                        m |= bits[j]
                masks.add(m)
        return frozenset(masks)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(s for s in self.simplices if len(s) == 2)

    def is_subcomplex_of(self, other: "OrderedComplex") -> bool:
        return all(has_simplex(other, s) for s in self.maximal)


def validate(complex: OrderedComplex) -> None:
    """Check the invariants of an ordered complex, raising on the first violation."""
    seen_sets: list[tuple[frozenset[int], Simplex]] = []
    for s in complex.maximal:
        if not s:
            raise EmptySimplex("empty simplex")
        if len(set(s)) != len(s):
            raise DuplicateVertexInSimplex(s)
        if any(v < 0 for v in s):
            raise ValueError(f"negative vertex id in {list(s)}")
    if len(set(complex.maximal)) != len(complex.maximal):
        dup = next(s for s in complex.maximal if complex.maximal.count(s) > 1)
        raise RedundantMaximalSimplex(dup, dup)
    by_size = sorted(complex.maximal, key=len, reverse=True)
    for s in by_size:
        fs = frozenset(s)
        for big, t in seen_sets:
            if fs <= big:
                raise RedundantMaximalSimplex(tuple(sorted(s)), t)
        seen_sets.append((fs, tuple(sorted(s))))
    covered = {v for s in complex.maximal for v in s}
    for v in complex.vertices:
        if v not in covered:
            raise OrphanVertex(v)
    if not complex.maximal:
        raise EmptySimplex("a complex needs at least one simplex")


def has_simplex(complex: OrderedComplex, s: Iterable[int]) -> bool:
    s = frozenset(s)
    if not s:
        return False
    first = next(iter(s))
    star = complex._star_index.get(first)
    if star is None:
        return False
    sets = complex._maximal_sets
    return any(s <= sets[i] for i in star)


def full_subcomplex(complex: OrderedComplex, generators: Iterable[Iterable[int]]) -> OrderedComplex:
    """The subcomplex of ``complex`` generated by the given simplices."""
    gens = [canonical_simplex(g) for g in generators]
    if not gens:
        raise EmptyGenerators("a subcomplex needs at least one generator")
    for g in gens:
        if not has_simplex(complex, g):
            raise NotASimplexOfAmbient(g)
    return OrderedComplex._trusted(maximal_only(gens))


def simplex(*vertices: int) -> OrderedComplex:
    """The full simplex on the given vertices; no arguments gives the point ``[0]``."""
    return OrderedComplex([canonical_simplex(vertices or (0,))])


def boundary_of_simplex(n: int) -> OrderedComplex:
    """Boundary of the full simplex on vertices ``0..n``."""
    return OrderedComplex(combinations(range(n + 1), n))


def cycle(n: int) -> OrderedComplex:
    """The n-cycle ``C_n`` on vertices ``0..n-1``."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return OrderedComplex.from_simplices((i, (i + 1) % n) for i in range(n))


def path(n: int) -> OrderedComplex:
    """Path with ``n`` edges on vertices ``0..n``."""
    if n == 0:
        return simplex(0)
    return OrderedComplex([(i, i + 1) for i in range(n)])
