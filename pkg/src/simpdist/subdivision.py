"""Barycentric subdivision and simplicial approximations of the identity."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterator

from .complexes import OrderedComplex, Simplex
from .errors import DomainMismatch, InvalidRange, LevelZero, SubdivisionBudgetExceeded
from .maps import SimplicialMap, compose, identity

DEFAULT_MAX_SIMPLICES = 10**6

RULES = ("last", "first")


@dataclass(frozen=True, eq=False)
class SubdividedComplex:
    """``Sd^level`` of a base complex.

    ``barycenters[w]`` is the simplex of the previous level whose
    barycenter is the new vertex ``w``.  Level 0 is the base itself.
    """

    complex: OrderedComplex
    level: int
    barycenters: tuple[Simplex, ...]
    previous: "SubdividedComplex | None"

    @property
    def base(self) -> OrderedComplex:
        sd = self
        while sd.previous is not None:
            sd = sd.previous
        return sd.complex

    def __repr__(self):
        return (
            f"SubdividedComplex(level={self.level}, vertices={len(self.complex.vertices)}, "
            f"maximal={len(self.complex.maximal)})"
        )


def level_zero(k: OrderedComplex) -> SubdividedComplex:
    return SubdividedComplex(k, 0, (), None)


def projected_size(k: OrderedComplex) -> int:
    """Number of maximal simplices of ``Sd(k)``."""
    return sum(factorial(len(s)) for s in k.maximal)


def subdivide(
    k: OrderedComplex | SubdividedComplex, *, max_simplices: int = DEFAULT_MAX_SIMPLICES
) -> SubdividedComplex:
    prev = k if isinstance(k, SubdividedComplex) else level_zero(k)
    base = prev.complex
    projected = projected_size(base)
    if projected > max_simplices:
        raise SubdivisionBudgetExceeded(projected, max_simplices)
    # simplices sorted by (dimension, vertex list), numbered consecutively
    barycenters = base.simplices
    code = {s: i for i, s in enumerate(barycenters)}
    maximal = set()
    for top in base.maximal:
        for order in permutations(top):
            chain = [code[tuple(sorted(order[: r + 1]))] for r in range(len(order))]
            maximal.add(tuple(chain))
    return SubdividedComplex(OrderedComplex._trusted(maximal), prev.level + 1, barycenters, prev)


@lru_cache(maxsize=64)
def _tower(k: OrderedComplex, b: int, max_simplices: int) -> tuple[SubdividedComplex, ...]:
    levels = [level_zero(k)]
    for _ in range(b):
        levels.append(subdivide(levels[-1], max_simplices=max_simplices))
    return tuple(levels)


def subdivision_tower(
    k: OrderedComplex, b: int, *, max_simplices: int = DEFAULT_MAX_SIMPLICES
) -> tuple[SubdividedComplex, ...]:
    """Levels ``Sd^0(k), ..., Sd^b(k)``."""
    if b < 0:
        raise ValueError("subdivision level must be non-negative")
    return _tower(k, b, max_simplices)


def subdivide_iter(
    k: OrderedComplex, b: int, *, max_simplices: int = DEFAULT_MAX_SIMPLICES
) -> SubdividedComplex:
    return subdivision_tower(k, b, max_simplices=max_simplices)[-1]


def vertex_approximation(sd: SubdividedComplex, rule: str = "last") -> SimplicialMap:
    """Send each barycenter to the largest (``last``) or smallest (``first``) vertex of its simplex."""
    if sd.level == 0 or sd.previous is None:
        raise LevelZero("level 0 has no previous level")
    if rule == "last":
        images = [s[-1] for s in sd.barycenters]
    elif rule == "first":
        images = [s[0] for s in sd.barycenters]
    else:
        raise ValueError(f"unknown approximation rule {rule!r}")
    return SimplicialMap(sd.complex, sd.previous.complex, images, check=False)


def last_vertex_approximation(sd: SubdividedComplex) -> SimplicialMap:
    return vertex_approximation(sd, "last")


def first_vertex_approximation(sd: SubdividedComplex) -> SimplicialMap:
    return vertex_approximation(sd, "first")


def iterate_approximation(
    k: OrderedComplex,
    from_b: int,
    to_b: int,
    *,
    rule: str = "last",
    max_simplices: int = DEFAULT_MAX_SIMPLICES,
) -> SimplicialMap:
    """Composite ``Sd^from_b(k) -> Sd^to_b(k)`` of one-level approximations."""
    if to_b < 0 or from_b < to_b:
        raise InvalidRange(f"cannot approximate from level {from_b} to level {to_b}")
    levels = subdivision_tower(k, from_b, max_simplices=max_simplices)
    result = identity(levels[from_b].complex)
    for b in range(from_b, to_b, -1):
        result = compose(vertex_approximation(levels[b], rule), result)
    return result


def is_approximation_of_identity(candidate: SimplicialMap, sd: SubdividedComplex) -> bool:
    """Star condition: every barycenter goes to a vertex of the simplex it subdivides."""
    if sd.previous is None:
        raise LevelZero("level 0 has no previous level")
    if candidate.domain != sd.complex or candidate.codomain != sd.previous.complex:
        raise DomainMismatch("candidate does not map Sd(K) to K")
    return all(w in s for w, s in zip(candidate.images, sd.barycenters))


def approximations_of_identity(sd: SubdividedComplex) -> Iterator[SimplicialMap]:
    """Every vertex map satisfying the star condition (each is simplicial)."""
    if sd.previous is None:
        raise LevelZero("level 0 has no previous level")
    for images in product(*sd.barycenters):
        yield SimplicialMap(sd.complex, sd.previous.complex, images, check=False)
