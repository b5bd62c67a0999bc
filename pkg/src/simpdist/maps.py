"""Simplicial maps, contiguity of pairs and exact contiguity distance."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .complexes import OrderedComplex, Simplex, has_simplex
from .errors import (
    CodomainMismatch,
    CompositionMismatch,
    DomainMismatch,
    MapError,
    NotASubcomplex,
    NotSimplicial,
    SearchBudgetExceeded,
    UnmappedVertex,
)
from .values import INFINITE, DistanceValue

DEFAULT_MAX_FRONTIER = 10**6


class SimplicialMap:
    """A vertex assignment carrying every simplex of ``domain`` to a simplex of ``codomain``.

    ``assignment`` may be a mapping from domain vertices to codomain
    vertices or a sequence aligned with ``domain.vertices``.  Equality
    is extensional.
    """

    def __init__(
        self,
        domain: OrderedComplex,
        codomain: OrderedComplex,
        assignment: Mapping[int, int] | Sequence[int],
        *,
        check: bool = True,
    ):
        self.domain = domain
        self.codomain = codomain
        if isinstance(assignment, Mapping):
            for v in domain.vertices:
                if v not in assignment:
                    raise UnmappedVertex(v)
            images = tuple(int(assignment[v]) for v in domain.vertices)
        else:
            images = tuple(int(w) for w in assignment)
            if len(images) != len(domain.vertices):
                raise MapError(
                    f"expected {len(domain.vertices)} images, got {len(images)}"
                )
        self.images = images
        if check:
            self._check()

    def _check(self):
        cod = self.codomain.vertex_index
        for v, w in zip(self.domain.vertices, self.images):
            if w not in cod:
                raise UnmappedVertex(v)
        for s in self.domain.maximal:
            img = self.image(s)
            if not has_simplex(self.codomain, img):
                raise NotSimplicial(s, img)

    @cached_property
    def assignment(self) -> dict[int, int]:
        return dict(zip(self.domain.vertices, self.images))

    def __call__(self, v: int) -> int:
        return self.assignment[v]

    def image(self, s: Iterable[int]) -> Simplex:
        a = self.assignment
        return tuple(sorted({a[v] for v in s}))

    @cached_property
    def positions(self) -> tuple[int, ...]:
        """Images as codomain vertex positions, aligned with domain positions."""
        idx = self.codomain.vertex_index
        return tuple(idx[w] for w in self.images)

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.images == other.images
            and self.domain == other.domain
            and self.codomain == other.codomain
        )

    def __hash__(self):
        return hash((self.images, self.domain, self.codomain))

    def __repr__(self):
        pairs = " ".join(f"{v}->{w}" for v, w in zip(self.domain.vertices, self.images))
        return f"SimplicialMap({pairs})"


def check_simplicial(
    domain: OrderedComplex, codomain: OrderedComplex, assignment
) -> SimplicialMap:
    return SimplicialMap(domain, codomain, assignment)


def identity(k: OrderedComplex) -> SimplicialMap:
    return SimplicialMap(k, k, k.vertices, check=False)


def constant(domain: OrderedComplex, codomain: OrderedComplex, value: int) -> SimplicialMap:
    if value not in codomain.vertex_index:
        raise UnmappedVertex(value)
    return SimplicialMap(domain, codomain, [value] * len(domain.vertices), check=False)


def inclusion(j: OrderedComplex, k: OrderedComplex) -> SimplicialMap:
    if not j.is_subcomplex_of(k):
        raise NotASubcomplex(f"{j!r} is not a subcomplex of {k!r}")
    return SimplicialMap(j, k, j.vertices, check=False)


def _require_parallel(f: SimplicialMap, g: SimplicialMap) -> None:
    if f.domain != g.domain:
        raise DomainMismatch("maps have different domains")
    if f.codomain != g.codomain:
        raise CodomainMismatch("maps have different codomains")


def contiguous_pair(f: SimplicialMap, g: SimplicialMap) -> bool:
    """Whether ``f(s) | g(s)`` is a simplex of the codomain for every maximal ``s``."""
    _require_parallel(f, g)
    fa, ga = f.assignment, g.assignment
    cod = f.codomain
    for s in f.domain.maximal:
        if not has_simplex(cod, {fa[v] for v in s} | {ga[v] for v in s}):
            return False
    return True


def restrict(f: SimplicialMap, j: OrderedComplex) -> SimplicialMap:
    if not j.is_subcomplex_of(f.domain):
        raise NotASubcomplex(f"{j!r} is not a subcomplex of the map's domain")
    a = f.assignment
    return SimplicialMap(j, f.codomain, [a[v] for v in j.vertices], check=False)


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """``g`` after ``f``."""
    if f.codomain != g.domain:
        raise CompositionMismatch("codomain of f differs from domain of g")
    ga = g.assignment
    return SimplicialMap(f.domain, g.codomain, [ga[w] for w in f.images], check=False)


@dataclass(frozen=True)
class ContiguityChain:
    """Maps ``H_0, ..., H_c`` with every consecutive pair contiguous."""

    steps: tuple[SimplicialMap, ...]

    def __post_init__(self):
        if not self.steps:
            raise MapError("a chain needs at least one map")
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    @property
    def start(self) -> SimplicialMap:
        return self.steps[0]

    @property
    def end(self) -> SimplicialMap:
        return self.steps[-1]

    def is_valid(self) -> bool:
        try:
            for h in self.steps:
                h._check()
            for h0, h1 in zip(self.steps, self.steps[1:]):
                if not contiguous_pair(h0, h1):
                    return False
        except MapError:
            return False
        return True

    def reversed(self) -> "ContiguityChain":
        return ContiguityChain(self.steps[::-1])

    def then(self, other: "ContiguityChain") -> "ContiguityChain":
        if self.end != other.start:
            raise MapError("chains do not meet")
        return ContiguityChain(self.steps + other.steps[1:])

    def padded(self, length: int) -> "ContiguityChain":
        if length < self.length:
            raise ValueError("cannot pad to a shorter length")
        return ContiguityChain(self.steps + (self.end,) * (length - self.length))

    def compressed(self) -> "ContiguityChain":
        out = [self.steps[0]]
        for h in self.steps[1:]:
            if h != out[-1]:
                out.append(h)
        return ContiguityChain(tuple(out))

    def shortcut(self) -> "ContiguityChain":
        """Skip ahead to the last step contiguous with the current one."""
        out = [self.steps[0]]
        i = 0
        while i < len(self.steps) - 1:
            j = i + 1
            for t in range(len(self.steps) - 1, i + 1, -1):
                if contiguous_pair(self.steps[i], self.steps[t]):
                    j = t
                    break
            out.append(self.steps[j])
            i = j
        return ContiguityChain(tuple(out))

    def restrict(self, j: OrderedComplex) -> "ContiguityChain":
        return ContiguityChain(tuple(restrict(h, j) for h in self.steps))

    def precompose(self, alpha: SimplicialMap) -> "ContiguityChain":
        return ContiguityChain(tuple(compose(h, alpha) for h in self.steps))

    def postcompose(self, beta: SimplicialMap) -> "ContiguityChain":
        return ContiguityChain(tuple(compose(beta, h) for h in self.steps))


def _contiguous_neighbors(
    state: tuple[int, ...],
    simplices: Sequence[tuple[int, ...]],
    star: Sequence[Sequence[int]],
    masks: frozenset[int],
    n_cod: int,
) -> Iterator[tuple[int, ...]]:
    """Images (as codomain positions) of all maps contiguous to ``state``.

    Enumerated lexicographically by (vertex, candidate image).
    """
    base = []
    for s in simplices:
        m = 0
        for v in s:
            m |= 1 << state[v]
        base.append(m)
    n = len(state)
    cands: list[list[int]] = []
    for v in range(n):
        cv = [
            w
            for w in range(n_cod)
            if all((base[si] | (1 << w)) in masks for si in star[v])
        ]
        if not cv:
            return
        cands.append(cv)
    acc = list(base)
    out = [0] * n

    def rec(v):
        if v == n:
            yield tuple(out)
            return
        sv = star[v]
        for w in cands[v]:
            bit = 1 << w
            saved = [acc[si] for si in sv]
            ok = True
            for si in sv:
                m = acc[si] | bit
                if m not in masks:
                    ok = False
                    break
                acc[si] = m
            if ok:
                out[v] = w
                yield from rec(v + 1)
            for si, m in zip(sv, saved):
                acc[si] = m

    yield from rec(0)


def contiguity_distance(
    f: SimplicialMap,
    g: SimplicialMap,
    max_c: int,
    *,
    max_frontier: int = DEFAULT_MAX_FRONTIER,
) -> tuple[DistanceValue, ContiguityChain | None]:
    """Least ``c <= max_c`` with ``f ~_c g`` by breadth-first search from ``f``.

    Returns ``(Finite(c), chain)`` on success, ``(inf, None)`` when the
    contiguity class of ``f`` was exhausted without meeting ``g``, and
    ``(unknown, None)`` when the depth bound cut the search short.
    """
    _require_parallel(f, g)
    if max_c < 0:
        raise ValueError("max_c must be non-negative")
    dom, cod = f.domain, f.codomain
    start, target = f.positions, g.positions
    if start == target:
        return DistanceValue.finite(0), ContiguityChain((f,))
    idx = dom.vertex_index
    simplices = [tuple(idx[v] for v in s) for s in dom.maximal]
    star: list[list[int]] = [[] for _ in dom.vertices]
    for si, s in enumerate(simplices):
        for v in s:
            star[v].append(si)
    masks = cod.simplex_masks
    n_cod = len(cod.vertices)

    parent: dict[tuple[int, ...], tuple[int, ...] | None] = {start: None}
    frontier = [start]
    depth = 0
    while frontier:
        if depth == max_c:
            # one more expansion tells exhausted from truncated
            for state in frontier:
                for nb in _contiguous_neighbors(state, simplices, star, masks, n_cod):
                    if nb not in parent:
                        return DistanceValue.unknown(f"max_c={max_c}"), None
            return INFINITE, None
        nxt = []
        for state in frontier:
            for nb in _contiguous_neighbors(state, simplices, star, masks, n_cod):
                if nb in parent:
                    continue
                parent[nb] = state
                if nb == target:
                    return DistanceValue.finite(depth + 1), _unwind(parent, nb, f)
                nxt.append(nb)
                if len(parent) > max_frontier:
                    raise SearchBudgetExceeded(len(nxt), max_frontier, "contiguity search")
        frontier = nxt
        depth += 1
    return INFINITE, None


def _unwind(parent, state, f: SimplicialMap) -> ContiguityChain:
    cod_vertices = f.codomain.vertices
    seq = []
    while state is not None:
        seq.append(state)
        state = parent[state]
    seq.reverse()
    steps = tuple(
        SimplicialMap(f.domain, f.codomain, [cod_vertices[p] for p in s], check=False)
        for s in seq
    )
    return ContiguityChain(steps)


def simplicial_maps(domain: OrderedComplex, codomain: OrderedComplex) -> Iterator[SimplicialMap]:
    """Every simplicial map ``domain -> codomain``, by backtracking over vertices."""
    idx = domain.vertex_index
    simplices = [tuple(idx[v] for v in s) for s in domain.maximal]
    star: list[list[int]] = [[] for _ in domain.vertices]
    for si, s in enumerate(simplices):
        for v in s:
            star[v].append(si)
    masks = codomain.simplex_masks
    n, n_cod = len(domain.vertices), len(codomain.vertices)
    acc = [0] * len(simplices)
    out = [0] * n

    def rec(v):
        if v == n:
            yield SimplicialMap(
                domain, codomain, [codomain.vertices[p] for p in out], check=False
            )
            return
        for w in range(n_cod):
            bit = 1 << w
            saved = [acc[si] for si in star[v]]
            if all((acc[si] | bit) in masks for si in star[v]):
                for si in star[v]:
                    acc[si] |= bit
                out[v] = w
                yield from rec(v + 1)
            for si, m in zip(star[v], saved):
                acc[si] = m

    yield from rec(0)
