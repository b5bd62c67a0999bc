"""Exact (b, c)-simplicial distance by minimal covers of ``Sd^b(K)``.

A piece ``J`` of ``Sd^b(K)`` is *good* when the two composites
``phi . iota`` and ``psi . iota`` restricted to ``J`` are ``c``-contiguous.
Goodness is inherited by subcomplexes, so an optimal cover can always be
taken to be a partition of the maximal simplices of ``Sd^b(K)`` into
groups, each generating a good piece.  The search iterates the number of
groups upward.  For each count it either hands the whole partition
problem to a SAT solver (strategy ``"sat"``, the default for ``c >= 2``)
or runs a branch-and-bound over assignments of maximal simplices to
groups (strategy ``"bnb"``).

Goodness of a piece is the conjunction over its connected components, so
decisions are memoized per component (keyed by its sorted simplex set).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complexes import OrderedComplex, Simplex
from .errors import BudgetExceeded, DomainMismatch, NotASubcomplex, SearchBudgetExceeded
from .maps import ContiguityChain, SimplicialMap, compose, constant, identity
from .product import ordered_product, projection
from .subdivision import DEFAULT_MAX_SIMPLICES, iterate_approximation, subdivide_iter
from .values import INFINITE, DistanceValue
from .chainsat import SatChainSolver, sat_cover
from .walks import ChainProblem

logger = logging.getLogger(__name__)

DEFAULT_MAX_NODES = 10**6
ORDERS = ("lex", "first-fail")
BACKENDS = ("sat", "walks")
STRATEGIES = ("sat", "bnb")


@dataclass(frozen=True)
class SimpDistQuery:
    phi: SimplicialMap
    psi: SimplicialMap
    b: int
    c: int
    rule: str = "last"

    def __post_init__(self):
        if self.phi.domain != self.psi.domain or self.phi.codomain != self.psi.codomain:
            raise DomainMismatch("phi and psi must share domain and codomain")
        if self.b < 0 or self.c < 0:
            raise ValueError("b and c must be non-negative")

    def swapped(self) -> "SimpDistQuery":
        return SimpDistQuery(self.psi, self.phi, self.b, self.c, self.rule)


@dataclass(frozen=True)
class CoverCertificate:
    """Witness for a decided distance value.

    A finite value ``k`` comes with ``k + 1`` pieces and one chain per
    piece.  An infinite value comes with ``infeasible``: a maximal simplex
    of ``Sd^b(K)`` whose own subcomplex is not good.
    """

    query: SimpDistQuery
    value: DistanceValue
    pieces: tuple[OrderedComplex, ...] = ()
    chains: tuple[ContiguityChain, ...] = ()
    infeasible: Simplex | None = None

    @property
    def k(self) -> int | None:
        return self.value.k


@dataclass
class SearchStats:
    predicate_calls: int = 0
    memo_hits: int = 0
    extension_hits: int = 0
    cover_nodes: int = 0
    chain_nodes: int = 0
    lower_bound: int = 0


class CoverSearch:
    """Shared state for one query: the subdivision, the composites and the memo."""

    def __init__(
        self,
        query: SimpDistQuery,
        *,
        max_simplices: int = DEFAULT_MAX_SIMPLICES,
        max_nodes: int = DEFAULT_MAX_NODES,
        order: str = "first-fail",
        backend: str = "sat",
        strategy: str = "sat",
    ):
        if order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}")
        if backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}")
        if strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")
        self.strategy = strategy if query.c >= 2 else "bnb"
        self.query = query
        self.order = order
        self.max_nodes = max_nodes
        k = query.phi.domain
        self.codomain = query.phi.codomain
        self.sd = subdivide_iter(k, query.b, max_simplices=max_simplices)
        iota = iterate_approximation(k, query.b, 0, rule=query.rule, max_simplices=max_simplices)
        self.gamma_phi = compose(query.phi, iota)
        self.gamma_psi = compose(query.psi, iota)
        self.D = self.sd.complex
        vidx = self.D.vertex_index
        self.simplices: list[Simplex] = list(self.D.maximal)
        self.local = [tuple(vidx[v] for v in s) for s in self.simplices]
        self.F = self.gamma_phi.positions
        self.G = self.gamma_psi.positions
        self.problem = ChainProblem(
            self.codomain.simplex_masks, len(self.codomain.vertices), query.c, max_nodes=max_nodes
        )
        self.backend = backend if query.c >= 2 else "walks"
        self._sat = (
            SatChainSolver(
                self.local, self.F, self.G, self.codomain.simplex_masks,
                len(self.codomain.vertices), query.c,
            )
            if self.backend == "sat"
            else None
        )
        self.memo: dict[frozenset[int], dict[int, tuple[int, ...]] | None] = {}
        self.stats = SearchStats()
        self._vertex_sets = [frozenset(s) for s in self.local]
        self._adjacent = [
            frozenset(
                j for j in range(len(self.local)) if j != i and self._vertex_sets[i] & self._vertex_sets[j]
            )
            for i in range(len(self.local))
        ]

    # -- piece decisions -------------------------------------------------

    def _solve(self, simplices: Sequence[Sequence[int]], fixed=None, hint=None):
        verts = sorted({v for s in simplices for v in s})
        loc = {v: i for i, v in enumerate(verts)}
        local = [tuple(loc[v] for v in s) for s in simplices]
        f = [self.F[v] for v in verts]
        g = [self.G[v] for v in verts]
        pack = self.problem.pack
        lf = {loc[v]: pack(w) for v, w in fixed.items()} if fixed else None
        lh = {loc[v]: pack(w) for v, w in hint.items() if v in loc} if hint else None
        before = self.problem.nodes
        sol = self.problem.solve(len(verts), local, f, g, fixed=lf, hint=lh)
        self.stats.chain_nodes += self.problem.nodes - before
        if sol is None:
            return None
        return {v: sol[i][0] for i, v in enumerate(verts)}

    def component(
        self, members: frozenset[int], parts: Sequence[dict[int, tuple[int, ...]]] = ()
    ) -> dict[int, tuple[int, ...]] | None:
        """Decide a connected set of maximal simplices; ``parts`` are known solutions to reuse."""
        self.stats.predicate_calls += 1
        if members in self.memo:
            self.stats.memo_hits += 1
            return self.memo[members]
        if self._sat is not None:
            sol = self._sat.decide(members)
            self.memo[members] = sol
            return sol
        simplices = [self.local[i] for i in sorted(members)]
        sol = None
        if parts:
            fixed: dict[int, tuple[int, ...]] = {}
            for p in parts:
                fixed.update(p)
            sol = self._solve(simplices, fixed=fixed)
            if sol is not None:
                self.stats.extension_hits += 1
            else:
                sol = self._solve(simplices, hint=fixed)
        else:
            sol = self._solve(simplices)
        self.memo[members] = sol
        return sol

    def decide_simplices(self, members: Iterable[int]) -> dict[int, tuple[int, ...]] | None:
        """Decide the piece generated by a set of maximal simplices of ``Sd^b(K)``."""
        members = frozenset(members)
        solution: dict[int, tuple[int, ...]] = {}
        for comp in self._split(members):
            sol = self.component(comp)
            if sol is None:
                return None
            solution.update(sol)
        return solution

    def _split(self, members: frozenset[int]) -> list[frozenset[int]]:
        todo = set(members)
        comps = []
        while todo:
            s = min(todo)
            todo.discard(s)
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self._adjacent[x]:
                    if y in todo:
                        todo.discard(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(frozenset(comp))
        return comps

    def decide_piece(self, j: OrderedComplex) -> dict[int, tuple[int, ...]] | None:
        """Decide an arbitrary subcomplex of ``Sd^b(K)``.

        Pieces generated by maximal simplices of ``Sd^b(K)`` go through the
        memo; any other subcomplex is decided directly.
        """
        if not j.is_subcomplex_of(self.D):
            raise NotASubcomplex("piece is not a subcomplex of Sd^b(K)")
        index = {s: i for i, s in enumerate(self.simplices)}
        if all(s in index for s in j.maximal):
            return self.decide_simplices(index[s] for s in j.maximal)
        vidx = self.D.vertex_index
        simplices = [tuple(vidx[v] for v in s) for s in j.maximal]
        return self._solve(simplices)

    # -- cover search ----------------------------------------------------

    def _lower_bound(self) -> int:
        """Greedy clique in the graph of pairwise-incompatible adjacent simplices."""
        m = len(self.local)
        conflict = [set() for _ in range(m)]
        for i in range(m):
            for j in self._adjacent[i]:
                if j > i and self.component(frozenset((i, j))) is None:
                    conflict[i].add(j)
                    conflict[j].add(i)
        best = 1
        for start in sorted(range(m), key=lambda i: (-len(conflict[i]), i)):
            clique = [start]
            cands = set(conflict[start])
            while cands:
                nxt = min(cands, key=lambda x: (-len(conflict[x] & cands), x))
                clique.append(nxt)
                cands &= conflict[nxt]
            best = max(best, len(clique))
        return best

    def infeasible_simplex(self) -> int | None:
        for i in range(len(self.local)):
            if self.component(frozenset((i,))) is None:
                return i
        return None

    def solve(self) -> CoverCertificate:
        q = self.query
        bad = self.infeasible_simplex()
        if bad is not None:
            return CoverCertificate(q, INFINITE, infeasible=self.simplices[bad])
        whole = self.decide_simplices(range(len(self.local)))
        if whole is not None:
            return self._certificate([list(range(len(self.local)))])
        lb = max(2, self._lower_bound())
        self.stats.lower_bound = lb
        m = len(self.local)
        for groups in range(lb, m + 1):
            if self.strategy == "sat":
                found = sat_cover(
                    self.local, self.F, self.G, self.codomain.simplex_masks,
                    len(self.codomain.vertices), q.c, groups,
                )
                if found is not None:
                    return self._certificate([mem for mem, _ in found], [sol for _, sol in found])
            else:
                found = self._partition(groups)
                if found is not None:
                    return self._certificate(found)
            logger.debug("no cover with %d pieces", groups)
        raise AssertionError("singletons are good, so m pieces always suffice")

    def _partition(self, n_groups: int) -> list[list[int]] | None:
        """Branch-and-bound search for a partition into ``n_groups`` good groups."""
        m = len(self.local)
        adjacent = self._adjacent
        # per group: list of (members, solution) connected components
        groups: list[list[tuple[frozenset[int], dict[int, tuple[int, ...]]]]] = [[] for _ in range(n_groups)]
        members: list[set[int]] = [set() for _ in range(n_groups)]
        unassigned = set(range(m))
        failed: set[frozenset[frozenset[int]]] = set()

        def place(s: int, g: int):
            comps = groups[g]
            touching = [c for c in comps if adjacent[s] & c[0]]
            if not touching:
                return comps + [(frozenset((s,)), self.component(frozenset((s,))))]
            merged = frozenset().union(*(c[0] for c in touching)) | {s}
            sol = self.component(merged, [c[1] for c in touching])
            if sol is None:
                return None
            return [c for c in comps if c not in touching] + [(merged, sol)]

        def options(s: int, used: int) -> list[int]:
            opts = [g for g in range(used) if place(s, g) is not None]
            opts.sort(key=lambda g: (-len(adjacent[s] & members[g]), g))
            if used < n_groups:
                opts.append(used)
            return opts

        def pick(used: int):
            if self.order == "lex":
                s = min(unassigned)
                return s, options(s, used)
            best = None
            for s in sorted(unassigned):
                opts = options(s, used)
                placed = sum(1 for g in range(used) for _ in adjacent[s] & members[g])
                rank = (len(opts), -placed)
                if best is None or rank < best[0]:
                    best = (rank, s, opts)
                    if not opts:
                        break
            return best[1], best[2]

        def state():
            return frozenset(frozenset(x) for x in members if x)

        def rec(used: int) -> bool:
            if not unassigned:
                return True
            self.stats.cover_nodes += 1
            if self.stats.cover_nodes > self.max_nodes:
                raise SearchBudgetExceeded(len(unassigned), self.max_nodes, "cover search")
            key = state()
            if key in failed:
                return False
            s, opts = pick(used)
            unassigned.discard(s)
            for g in opts:
                new = place(s, g)
                if new is None:
                    continue
                old = groups[g]
                groups[g] = new
                members[g].add(s)
                if rec(max(used, g + 1)):
                    return True
                members[g].discard(s)
                groups[g] = old
            unassigned.add(s)
            failed.add(key)
            return False

        if not rec(0):
            return None
        return [sorted(x) for x in members if x]

    def _certificate(self, groups: list[list[int]], solutions=None) -> CoverCertificate:
        q = self.query
        pieces, chains = [], []
        cod_vertices = self.codomain.vertices
        for gi, members in enumerate(groups):
            sol = solutions[gi] if solutions is not None else self.decide_simplices(members)
            assert sol is not None
            piece = OrderedComplex._trusted([self.simplices[i] for i in members])
            verts = piece.vertices
            vpos = self.D.vertex_index
            seqs = [sol[vpos[v]] for v in verts]
            maps = tuple(
                SimplicialMap(piece, self.codomain, [cod_vertices[w[i]] for w in seqs], check=False)
                for i in range(q.c + 1)
            )
            pieces.append(piece)
            chains.append(ContiguityChain(maps).compressed().shortcut())
        return CoverCertificate(
            q, DistanceValue.finite(len(groups) - 1), tuple(pieces), tuple(chains)
        )


def _search(q: SimpDistQuery, **kw) -> CoverSearch:
    return CoverSearch(q, **kw)


def piece_predicate(q: SimpDistQuery, j: OrderedComplex, **kw) -> bool:
    """Whether the two composites restricted to ``j`` are ``c``-contiguous."""
    return _search(q, **kw).decide_piece(j) is not None


def simpdist_bc(q: SimpDistQuery, **kw) -> tuple[DistanceValue, CoverCertificate]:
    """Exact ``SimpD^b_c(phi, psi)`` with its certificate.

    Keyword arguments go to :class:`CoverSearch` (``max_simplices``,
    ``max_nodes``, ``order``).  Budget overruns raise
    :class:`~simpdist.errors.BudgetExceeded`.
    """
    cert = _search(q, **kw).solve()
    return cert.value, cert


def sc_bc(k: OrderedComplex, b: int, c: int, **kw) -> tuple[DistanceValue, CoverCertificate]:
    """``SC^b_c(k)``: the distance between the two projections of ``k x k``."""
    prod = ordered_product(k, k)
    q = SimpDistQuery(projection(prod, 1), projection(prod, 2), b, c, kw.pop("rule", "last"))
    return simpdist_bc(q, **kw)


def scat_bc(k: OrderedComplex, base: int, b: int, c: int, **kw) -> tuple[DistanceValue, CoverCertificate]:
    """Distance between the identity of ``k`` and the constant map at ``base``."""
    q = SimpDistQuery(identity(k), constant(k, k, base), b, c, kw.pop("rule", "last"))
    return simpdist_bc(q, **kw)


@dataclass
class ProbeTable:
    """``SimpD^b_c`` over a grid; rows are ``b``, columns are ``c``."""

    b_values: list[int]
    c_values: list[int]
    values: dict[tuple[int, int], DistanceValue] = field(default_factory=dict)

    def row(self, b: int) -> list[DistanceValue]:
        return [self.values[(b, c)] for c in self.c_values]

    def stable_at_horizon(self, b: int) -> DistanceValue | None:
        """Row value if its last two entries agree and are decided, else ``None``."""
        row = self.row(b)
        if len(row) >= 2 and row[-1].is_decided and row[-1] == row[-2]:
            return row[-1]
        return None

    def monotone_violations(self) -> list[tuple[int, int]]:
        out = []
        for b in self.b_values:
            row = self.row(b)
            for i in range(1, len(row)):
                x, y = row[i - 1], row[i]
                if x.is_decided and y.is_decided and y > x:
                    out.append((b, self.c_values[i]))
        return out

    def descent_checks(self) -> list[tuple[int, int, bool | None]]:
        """``SimpD^b_c >= SimpD^{b+1}_{c+2}`` on every cell where both sides were computed."""
        out = []
        for (b, c), v in sorted(self.values.items()):
            w = self.values.get((b + 1, c + 2))
            if w is None:
                continue
            out.append((b, c, (w <= v) if v.is_decided and w.is_decided else None))
        return out

    def render(self) -> str:
        width = max(7, *(len(str(v)) for v in self.values.values()))
        head = "b\\c".ljust(5) + "".join(str(c).rjust(width + 1) for c in self.c_values)
        lines = [head]
        for b in self.b_values:
            lines.append(str(b).ljust(5) + "".join(str(v).rjust(width + 1) for v in self.row(b)))
        for b in self.b_values:
            st = self.stable_at_horizon(b)
            note = f"stable at horizon c={self.c_values[-1]}: {st}" if st else "not stable at horizon"
            lines.append(f"row b={b}: {note}")
        bad = [x for x in self.descent_checks() if x[2] is False]
        lines.append("descent b->b+1, c->c+2: " + ("ok" if not bad else f"violated at {bad}"))
        lines.append(
            "note: the limits over c and b are not certified; "
            "the table only bounds them from above up to the horizon"
        )
        return "\n".join(lines)


def stabilization_probe(
    phi: SimplicialMap,
    psi: SimplicialMap,
    b_max: int,
    c_max: int,
    *,
    rule: str = "last",
    **kw,
) -> ProbeTable:
    table = ProbeTable(list(range(b_max + 1)), list(range(c_max + 1)))
    for b in table.b_values:
        for c in table.c_values:
            try:
                value, _ = simpdist_bc(SimpDistQuery(phi, psi, b, c, rule), **kw)
            except BudgetExceeded as exc:
                value = DistanceValue.unknown(f"budget={exc}")
            table.values[(b, c)] = value
    return table
