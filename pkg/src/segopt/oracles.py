"""Exact oracles: independence number, matchings, clique cover, LP relaxation."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse.csgraph import maximum_bipartite_matching

from .exceptions import BudgetExceeded, NotTriangleFreeError
from .graph import IndependentSet, IntersectionGraph, Matching, is_triangle_free

DEFAULT_BUDGET = 5_000_000
BUDGET_ENV = "SEGOPT_ORACLE_BUDGET"


def oracle_budget(budget: int | None = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# maximum independent set


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _clique_cover_bound(P: int, masks: list[int]) -> int:
    """Number of cliques in a greedy cover of the vertex set P."""
    count = 0
    while P:
        low = P & -P
        v = low.bit_length() - 1
        cand = P & masks[v]
        P ^= low
        while cand:
            w = (cand & -cand).bit_length() - 1
            P &= ~(1 << w)
            cand &= masks[w]
        count += 1
    return count


def _greedy_mis(P: int, masks: list[int]) -> int:
    chosen = 0
    while P:
        best, best_deg = -1, None
        for v in _bits(P):
            d = _popcount(masks[v] & P)
            if best_deg is None or d < best_deg:
                best, best_deg = v, d
        chosen |= 1 << best
        P &= ~((1 << best) | masks[best])
    return chosen


def exact_mis(g: IntersectionGraph, budget: int | None = None) -> IndependentSet:
    """Maximum independent set by branch and bound.

    Branches on a vertex of maximum degree (ties: lowest index), takes
    degree-0/1 vertices without branching, and prunes with a greedy clique
    cover.  Raises BudgetExceeded after *budget* search nodes.
    """
    budget = oracle_budget(budget)
    masks = g.bitmasks()
    full = (1 << g.n) - 1
    best = [_greedy_mis(full, masks)]
    best_size = [_popcount(best[0])]
    nodes = [0]

    def search(P: int, chosen: int, size: int):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"exact_mis exceeded {budget} nodes")
        # forced picks: vertices with at most one neighbour left
        changed = True
        while changed and P:
            changed = False
            for v in _bits(P):
                if (P >> v) & 1 and _popcount(masks[v] & P) <= 1:
                    chosen |= 1 << v
                    size += 1
                    P &= ~((1 << v) | masks[v])
                    changed = True
        if not P:
            if size > best_size[0]:
                best[0], best_size[0] = chosen, size
            return
        if size + _clique_cover_bound(P, masks) <= best_size[0]:
            return
        v, vdeg = -1, -1
        for u in _bits(P):
            d = _popcount(masks[u] & P)
            if d > vdeg:
                v, vdeg = u, d
        search(P & ~((1 << v) | masks[v]), chosen | (1 << v), size + 1)
        search(P & ~(1 << v), chosen, size)

    search(full, 0, 0)
    return IndependentSet(g.ids[i] for i in _bits(best[0]))


# ---------------------------------------------------------------------------
# maximum matching in general graphs


def _greedy_matching(g: IntersectionGraph) -> np.ndarray:
    """Min-degree greedy matching; returns the mate array (-1 = free)."""
    n = g.n
    mate = np.full(n, -1, dtype=np.int64)
    deg = g.degrees().astype(np.int64)
    alive = np.ones(n, dtype=bool)
    big = np.iinfo(np.int64).max
    indptr, indices = g.indptr, g.indices

    def drop(v):
        alive[v] = False
        nb = indices[indptr[v]:indptr[v + 1]]
        deg[nb] -= 1

    alive[deg == 0] = False
    while alive.any():
        live_deg = np.where(alive, deg, big)
        v = int(np.argmin(live_deg))
        if live_deg[v] == big:
            break
        if deg[v] <= 0:
            alive[v] = False
            continue
        nb = indices[indptr[v]:indptr[v + 1]]
        nb = nb[alive[nb]]
        u = int(nb[np.argmin(deg[nb])])
        mate[v], mate[u] = u, v
        drop(v)
        drop(u)
    return mate


class _Blossom:
    """Edmonds' augmenting-path search with blossom contraction."""

    def __init__(self, adj: list[list[int]], mate: list[int]):
        self.adj = adj
        self.mate = mate
        self.n = len(adj)

    def _lca(self, a, b, base, parent):
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if self.mate[a] == -1:
                break
            a = parent[self.mate[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[self.mate[b]]

    def _mark(self, v, b, child, base, parent, blossom):
        while base[v] != b:
            blossom.add(base[v])
            blossom.add(base[self.mate[v]])
            parent[v] = child
            child = self.mate[v]
            v = parent[self.mate[v]]

    def find_path(self, root: int) -> int:
        """Search an augmenting path from free vertex *root*; augment and return its end, or -1."""
        mate, adj, n = self.mate, self.adj, self.n
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        q = deque([root])
        members = {root}
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = self._lca(v, to, base, parent)
                    blossom: set[int] = set()
                    self._mark(v, cur, to, base, parent, blossom)
                    self._mark(to, cur, v, base, parent, blossom)
                    for i in list(members):
                        if base[i] in blossom:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    members.add(to)
                    if mate[to] == -1:
                        self._augment(to, parent)
                        return to
                    nxt = mate[to]
                    used[nxt] = True
                    members.add(nxt)
                    q.append(nxt)
        return -1

    def _augment(self, v, parent):
        mate = self.mate
        while v != -1:
            pv = parent[v]
            ppv = mate[pv]
            mate[v] = pv
            mate[pv] = v
            v = ppv


def max_matching(g: IntersectionGraph) -> Matching:
    """Maximum-cardinality matching of a general graph.

    Starts from a min-degree greedy matching and grows it along augmenting
    paths found by blossom search until no free vertex has one.
    """
    mate = _greedy_matching(g).tolist()
    free = [v for v in range(g.n) if mate[v] == -1 and g.indptr[v + 1] > g.indptr[v]]
    if len(free) > 1:
        search = _Blossom(g.adjacency_lists(), mate)
        for v in free:
            if mate[v] == -1:
                search.find_path(v)
    return Matching((g.ids[v], g.ids[u]) for v, u in enumerate(mate) if u > v)


def has_augmenting_path(g: IntersectionGraph, matching: Matching) -> bool:
    """True iff some free vertex starts an augmenting path (matching not maximum)."""
    mate = [-1] * g.n
    for u, v in matching.edges:
        a, b = g.index[u], g.index[v]
        mate[a], mate[b] = b, a
    search = _Blossom(g.adjacency_lists(), list(mate))
    for v in range(g.n):
        if mate[v] == -1:
            search.mate = list(mate)
            if search.find_path(v) != -1:
                return True
    return False


@dataclass(frozen=True)
class CliqueCover:
    size: int
    cliques: tuple

    def __int__(self) -> int:
        return self.size

    def covers_exactly_once(self, g: IntersectionGraph) -> bool:
        seen = [v for c in self.cliques for v in c]
        return len(seen) == len(set(seen)) == g.n and set(seen) == set(g.ids)


def clique_cover_number_trianglefree(g: IntersectionGraph, check: bool = True) -> CliqueCover:
    """theta(g) = n - (maximum matching) for triangle-free graphs, with a cover."""
    if check and not is_triangle_free(g):
        raise NotTriangleFreeError("clique cover via matching needs a triangle-free graph")
    m = max_matching(g)
    matched = m.matched()
    cliques = tuple(sorted(m.edges)) + tuple((v,) for v in g.ids if v not in matched)
    return CliqueCover(g.n - m.size, cliques)


# ---------------------------------------------------------------------------
# fractional independence number


@dataclass(frozen=True)
class FractionalSolution:
    value: Fraction
    weights: dict

    def satisfies(self, g: IntersectionGraph) -> bool:
        if any(w < 0 or w > 1 for w in self.weights.values()):
            return False
        if sum(self.weights.values(), Fraction(0)) != self.value:
            return False
        return all(self.weights[u] + self.weights[v] <= 1 for u, v in g.edge_ids())


def fractional_independence(g: IntersectionGraph) -> FractionalSolution:
    """LP optimum of the independent-set relaxation, with a half-integral optimum.

    The bipartite double cover (left copy i adjacent to right copy j iff ij
    is an edge) has biadjacency equal to the adjacency matrix.  A minimum
    vertex cover C of it (Konig) gives the vertex-cover LP optimum
    y_v = ([v_L in C] + [v_R in C]) / 2, hence x_v = 1 - y_v and
    alpha* = n - |C| / 2.
    """
    n = g.n
    if n == 0:
        return FractionalSolution(Fraction(0), {})
    A = g.to_sparse()
    match_of_row = maximum_bipartite_matching(A, perm_type="column")
    match_of_col = np.full(n, -1, dtype=np.int64)
    rows = np.flatnonzero(match_of_row >= 0)
    match_of_col[match_of_row[rows]] = rows
    # alternating search from unmatched left vertices
    z_left = match_of_row < 0
    z_right = np.zeros(n, dtype=bool)
    frontier = np.flatnonzero(z_left)
    while len(frontier):
        cols = np.unique(A[frontier].indices)
        cols = cols[~z_right[cols]]
        z_right[cols] = True
        nxt = match_of_col[cols]
        nxt = nxt[nxt >= 0]
        nxt = nxt[~z_left[nxt]]
        z_left[nxt] = True
        frontier = nxt
    cover_left = ~z_left
    cover_right = z_right
    y = cover_left.astype(np.int64) + cover_right.astype(np.int64)  # twice the cover weight
    weights = {g.ids[i]: Fraction(2 - int(y[i]), 2) for i in range(n)}
    value = Fraction(2 * n - int(y.sum()), 2)
    return FractionalSolution(value, weights)
