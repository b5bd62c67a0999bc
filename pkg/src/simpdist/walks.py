"""Deciding ``f ~_c g`` as a constraint problem over vertex walks.

A chain ``H_0 = f, ..., H_c = g`` of pairwise contiguous maps is the same
thing as one walk per domain vertex ``v``: the sequence
``H_0(v), ..., H_c(v)``, in which consecutive entries are equal or span
an edge of the codomain.  The remaining constraints live on maximal
simplices ``s`` of the domain: for every step ``i`` the union over
``v in s`` of ``{H_{i-1}(v), H_i(v)}`` must be a codomain simplex.

Walks are encoded as packed integers, one block of codomain-vertex bits
per step, so the union over a simplex is a single bitwise OR.  Search is
backtracking with minimum-remaining-values ordering and forward checking.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .errors import SearchBudgetExceeded

Walk = tuple[tuple[int, ...], int]  # (vertex sequence, packed step masks)


class ChainProblem:
    """Solver for chains of a fixed length ``c`` into a fixed codomain.

    ``masks`` is the set of codomain simplex bitmasks over vertex positions
    ``0..n_cod-1``.  One instance may be reused across many domains; walk
    tables and validity checks are cached.
    """

    def __init__(self, masks: frozenset[int], n_cod: int, c: int, *, max_nodes: int = 10**6):
        if c < 0:
            raise ValueError("chain length must be non-negative")
        self.masks = masks
        self.n_cod = n_cod
        self.c = c
        self.max_nodes = max_nodes
        self.nodes = 0
        self._full = (1 << n_cod) - 1
        self._valid_cache: dict[int, bool] = {}
        self._walk_cache: dict[tuple[int, int], list[Walk]] = {}
        self.adj = [
            [q for q in range(n_cod) if q != p and ((1 << p) | (1 << q)) in masks]
            for p in range(n_cod)
        ]
        self.dist = [self._bfs(p) for p in range(n_cod)]

    def _bfs(self, src):
        d = [None] * self.n_cod
        d[src] = 0
        q = deque([src])
        while q:
            p = q.popleft()
            for r in self.adj[p]:
                if d[r] is None:
                    d[r] = d[p] + 1
                    q.append(r)
        return d

    def valid(self, packed: int) -> bool:
        """Every per-step block of ``packed`` is a codomain simplex."""
        r = self._valid_cache.get(packed)
        if r is None:
            r = True
            n, full, masks = self.n_cod, self._full, self.masks
            x = packed
            for _ in range(self.c):
                if (x & full) not in masks:
                    r = False
                    break
                x >>= n
            self._valid_cache[packed] = r
        return r

    def pack(self, seq: Sequence[int]) -> Walk:
        packed = 0
        for i in range(self.c):
            packed |= ((1 << seq[i]) | (1 << seq[i + 1])) << (i * self.n_cod)
        return tuple(seq), packed

    def walks(self, a: int, b: int) -> list[Walk]:
        key = (a, b)
        got = self._walk_cache.get(key)
        if got is not None:
            return got
        c, n, dist_b = self.c, self.n_cod, self.dist[b]
        out: list[Walk] = []
        seq = [a]

        def rec(i, p, packed):
            if i == c:
                if p == b:
                    out.append((tuple(seq), packed))
                return
            for r in [p] + self.adj[p]:
                d = dist_b[r]
                if d is None or d > c - i - 1:
                    continue
                seq.append(r)
                rec(i + 1, r, packed | (((1 << p) | (1 << r)) << (i * n)))
                seq.pop()

        if self.dist[a][b] is not None and self.dist[a][b] <= c:
            rec(0, a, 0)
        self._walk_cache[key] = out
        return out

    def solve(
        self,
        n: int,
        simplices: Sequence[Sequence[int]],
        f: Sequence[int],
        g: Sequence[int],
        *,
        fixed: dict[int, Walk] | None = None,
        hint: dict[int, Walk] | None = None,
    ) -> list[Walk] | None:
        """One walk per vertex ``0..n-1`` satisfying every simplex constraint, or ``None``.

        ``fixed`` pins vertices to a given walk; ``hint`` only moves a
        walk to the front of that vertex's value order.
        """
        star: list[list[int]] = [[] for _ in range(n)]
        for si, s in enumerate(simplices):
            for v in s:
                star[v].append(si)
        domains: list[list[Walk]] = []
        for v in range(n):
            ws = self.walks(f[v], g[v])
            if fixed is not None and v in fixed:
                ws = [w for w in ws if w == fixed[v]]
            elif hint is not None and v in hint and hint[v] in ws:
                h = hint[v]
                ws = [h] + [w for w in ws if w != h]
            # unary pruning: a vertex alone on a simplex must be valid by itself
            ws = [w for w in ws if self.valid(w[1])]
            if not ws:
                return None
            domains.append(ws)

        nbrs: list[set[int]] = [set() for _ in range(n)]
        for s in simplices:
            for v in s:
                nbrs[v].update(s)
        for v in range(n):
            nbrs[v].discard(v)

        solution: list[Walk | None] = [None] * n
        self.nodes_this_call = 0
        for comp in _components(n, nbrs):
            if not self._solve_component(comp, simplices, star, nbrs, domains, solution):
                return None
        return solution  # type: ignore[return-value]

    def _solve_component(self, comp, simplices, star, nbrs, domains, solution) -> bool:
        acc = {si: 0 for v in comp for si in star[v]}
        unassigned = set(comp)
        dom = {v: list(domains[v]) for v in comp}
        valid = self.valid

        def choose():
            best, best_len = None, None
            for v in unassigned:
                ln = len(dom[v])
                if best is None or ln < best_len or (ln == best_len and v < best):
                    best, best_len = v, ln
            return best

        def rec() -> bool:
            if not unassigned:
                return True
            v = choose()
            unassigned.discard(v)
            sv = star[v]
            for w in dom[v]:
                self.nodes += 1
                self.nodes_this_call += 1
                if self.nodes_this_call > self.max_nodes:
                    raise SearchBudgetExceeded(len(unassigned), self.max_nodes, "chain search")
                packed = w[1]
                new_acc = []
                ok = True
                for si in sv:
                    m = acc[si] | packed
                    if not valid(m):
                        ok = False
                        break
                    new_acc.append(m)
                if not ok:
                    continue
                saved_acc = [acc[si] for si in sv]
                for si, m in zip(sv, new_acc):
                    acc[si] = m
                # forward check the unassigned neighbours
                saved_dom = []
                wiped = False
                for u in nbrs[v]:
                    if u not in unassigned:
                        continue
                    shared = [si for si in star[u] if si in acc and v in simplices[si]]
                    old = dom[u]
                    new = [x for x in old if all(valid(acc[si] | x[1]) for si in shared)]
                    if len(new) != len(old):
                        saved_dom.append((u, old))
                        dom[u] = new
                        if not new:
                            wiped = True
                            break
                if not wiped:
                    solution[v] = w
                    if rec():
                        return True
                    solution[v] = None
                for u, old in saved_dom:
                    dom[u] = old
                for si, m in zip(sv, saved_acc):
                    acc[si] = m
            unassigned.add(v)
            return False

        return rec()


def _components(n, nbrs):
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for u in nbrs[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps

