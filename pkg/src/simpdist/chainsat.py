"""SAT encodings of chain problems, solved with an incremental CDCL solver.

The chain problem on a set of maximal simplices asks for maps
``H_1, ..., H_{c-1}`` between fixed ends ``H_0 = f`` and ``H_c = g`` such
that every consecutive pair is contiguous on every simplex of the set.
Each simplex has a guard literal; its constraints only bind when the
guard is true.  Variables, for steps ``i = 1..c-1``:

* ``x[v, i, p]``: ``H_i(v) = p``; at most one per ``(v, i)``, and at least
  one whenever some guarded simplex containing ``v`` is on;
* ``y[s, i, p]``: ``p`` occurs in ``H_{i-1}(s) | H_i(s)``, forced by the
  ``x`` literals feeding that step;
* for each minimal non-face ``N`` of the codomain, not every element of
  ``N`` occurs.

:class:`SatChainSolver` keeps one encoding and answers group queries
under assumptions.  :func:`sat_cover` copies the encoding once per piece
and adds assignment literals, deciding a whole cover in one call.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Sequence

from pysat.solvers import Solver

SOLVER = "cadical153"


def minimal_nonfaces(masks: frozenset[int], n_cod: int) -> list[tuple[int, ...]]:
    """Vertex sets that are not simplices although all their proper subsets are."""
    max_dim = max(bin(m).count("1") for m in masks) - 1
    out = []
    for r in range(2, min(n_cod, max_dim + 2) + 1):
        for combo in combinations(range(n_cod), r):
            m = sum(1 << p for p in combo)
            if m in masks:
                continue
            if all((m & ~(1 << p)) in masks for p in combo):
                out.append(combo)
    return out


def _encode(
    add: Callable[[list[int]], None],
    new_var: Callable[[], int],
    simplices: Sequence[Sequence[int]],
    f: Sequence[int],
    g: Sequence[int],
    nonfaces: Sequence[Sequence[int]],
    n_cod: int,
    c: int,
    guards: Sequence[int],
) -> list[list[list[int]]]:
    """Add one copy of the chain problem; returns ``x[v][i][p]`` (``i`` in ``1..c-1``)."""
    n = len(f)
    x = [[[]] + [[new_var() for _ in range(n_cod)] for _ in range(1, c)] for _ in range(n)]
    active = [new_var() for _ in range(n)]
    for v in range(n):
        for i in range(1, c):
            lits = x[v][i]
            add([-active[v]] + lits)
            for a, b in combinations(lits, 2):
                add([-a, -b])
    for s, guard in zip(simplices, guards):
        for v in s:
            add([-guard, active[v]])
        for i in range(1, c + 1):
            fixed = set()
            for v in s:
                if i - 1 == 0:
                    fixed.add(f[v])
                if i == c:
                    fixed.add(g[v])
            y = {}
            for p in range(n_cod):
                if p in fixed:
                    continue
                feeders = [x[v][t][p] for v in s for t in (i - 1, i) if 0 < t < c]
                if not feeders:
                    continue
                y[p] = new_var()
                for lit in feeders:
                    add([-lit, y[p]])
            for nf in nonfaces:
                rest = [p for p in nf if p not in fixed]
                if any(p not in y for p in rest):
                    continue  # part of this non-face can never occur
                add([-guard] + [-y[p] for p in rest])
    return x


def _decode(model_true: set[int], x, verts, f, g, n_cod, c) -> dict[int, tuple[int, ...]]:
    out = {}
    for v in verts:
        seq = [f[v]]
        for i in range(1, c):
            seq.append(next(p for p in range(n_cod) if x[v][i][p] in model_true))
        seq.append(g[v])
        out[v] = tuple(seq)
    return out


class _Counter:
    def __init__(self):
        self.top = 0

    def __call__(self) -> int:
        self.top += 1
        return self.top


class SatChainSolver:
    """Decides groups of simplices; constraints of unselected simplices stay dormant."""

    def __init__(self, simplices, f, g, masks: frozenset[int], n_cod: int, c: int):
        if c < 2:
            raise ValueError("the SAT encoding is only needed for c >= 2")
        self.simplices = [tuple(s) for s in simplices]
        self.f, self.g = list(f), list(g)
        self.n_cod, self.c = n_cod, c
        self.calls = 0
        counter = _Counter()
        self.selector = [counter() for _ in self.simplices]
        self.solver = Solver(name=SOLVER)
        self.x = _encode(
            self.solver.add_clause, counter, self.simplices, self.f, self.g,
            minimal_nonfaces(masks, n_cod), n_cod, c, self.selector,
        )

    def decide(self, members: Iterable[int]) -> dict[int, tuple[int, ...]] | None:
        """Walks ``H_0(v), ..., H_c(v)`` for every vertex of the group, or ``None``."""
        members = sorted(members)
        self.calls += 1
        if not self.solver.solve(assumptions=[self.selector[i] for i in members]):
            return None
        true = {lit for lit in self.solver.get_model() if lit > 0}
        verts = sorted({v for i in members for v in self.simplices[i]})
        return _decode(true, self.x, verts, self.f, self.g, self.n_cod, self.c)

    def close(self):
        self.solver.delete()


def sat_cover(
    simplices: Sequence[Sequence[int]],
    f: Sequence[int],
    g: Sequence[int],
    masks: frozenset[int],
    n_cod: int,
    c: int,
    n_groups: int,
) -> list[tuple[list[int], dict[int, tuple[int, ...]]]] | None:
    """A partition of the simplices into ``n_groups`` good groups, or ``None`` if none exists.

    Each simplex joins the lowest-numbered group it is assigned to.  Group
    ``j`` may only hold simplices with index ``>= j``, which removes part of
    the relabelling symmetry without losing solutions.
    """
    if c < 2:
        raise ValueError("the SAT encoding is only needed for c >= 2")
    m = len(simplices)
    counter = _Counter()
    z = [[counter() for _ in range(n_groups)] for _ in range(m)]
    nonfaces = minimal_nonfaces(masks, n_cod)
    with Solver(name=SOLVER) as solver:
        add = solver.add_clause
        for si in range(m):
            add([z[si][j] for j in range(min(n_groups, si + 1))])
            for j in range(si + 1, n_groups):
                add([-z[si][j]])
        xs = [
            _encode(add, counter, simplices, f, g, nonfaces, n_cod, c, [z[si][j] for si in range(m)])
            for j in range(n_groups)
        ]
        if not solver.solve():
            return None
        true = {lit for lit in solver.get_model() if lit > 0}
    groups: list[list[int]] = [[] for _ in range(n_groups)]
    for si in range(m):
        j = next(j for j in range(n_groups) if z[si][j] in true)
        groups[j].append(si)
    out = []
    for j, members in enumerate(groups):
        if not members:
            continue
        verts = sorted({v for si in members for v in simplices[si]})
        out.append((members, _decode(true, xs[j], verts, f, g, n_cod, c)))
    return out
