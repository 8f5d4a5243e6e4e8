"""Intersection graphs, solution objects and their text serialization."""

from __future__ import annotations

import bisect
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .exceptions import ParseError, UnknownIdError
from .geometry import HORIZONTAL, Representation, collinear_contacts, grid_lines

_INT64_SAFE = 2**62


class IntersectionGraph:
    """Undirected simple graph stored in CSR form.

    Vertex ``i`` corresponds to ``ids[i]``; for graphs built from a
    representation the order is the representation's iteration order.
    ``colouring`` optionally holds a 0/1 label per vertex (orientation for
    graphs built from segments) used as a hint by :func:`is_triangle_free`.
    """

    def __init__(self, ids: Iterable, indptr, indices):
        self.ids = tuple(str(i) for i in ids)
        self.index = {v: i for i, v in enumerate(self.ids)}
        if len(self.index) != len(self.ids):
            raise ValueError("vertex ids must be unique")
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int32)
        self._lists = None
        self._masks = None
        self.colouring = None

    @classmethod
    def from_edges(cls, ids, edges) -> IntersectionGraph:
        """Build from ``(u, v)`` pairs given as vertex ids (or indices when *ids* is an int)."""
        if isinstance(ids, int):
            ids = [str(i) for i in range(ids)]
        ids = [str(i) for i in ids]
        index = {v: i for i, v in enumerate(ids)}
        pairs = []
        for u, v in edges:
            a, b = index[str(u)], index[str(v)]
            if a == b:
                raise ValueError("self-loops are not allowed")
            pairs.append((a, b))
        return cls._from_pairs(ids, np.asarray(pairs, dtype=np.int64).reshape(-1, 2))

    @classmethod
    def _from_pairs(cls, ids, pairs: np.ndarray) -> IntersectionGraph:
        n = len(ids)
        if len(pairs):
            both = np.concatenate([pairs, pairs[:, ::-1]])
            mat = sparse.coo_matrix((np.ones(len(both), dtype=np.int8), (both[:, 0], both[:, 1])), shape=(n, n))
            mat = mat.tocsr()
            mat.sum_duplicates()
            mat.sort_indices()
            return cls(ids, mat.indptr, mat.indices)
        return cls(ids, np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int32))

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def __repr__(self) -> str:
        return f"IntersectionGraph(n={self.n}, m={self.m})"

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        k = np.searchsorted(row, v)
        return bool(k < len(row) and row[k] == v)

    def adjacency_lists(self) -> list[list[int]]:
        if self._lists is None:
            flat = self.indices.tolist()
            ptr = self.indptr.tolist()
            self._lists = [flat[ptr[i]:ptr[i + 1]] for i in range(self.n)]
        return self._lists

    def bitmasks(self) -> list[int]:
        """Neighborhoods as Python-int bitsets (bit ``j`` set iff ``j`` adjacent)."""
        if self._masks is None:
            masks = []
            for row in self.adjacency_lists():
                m = 0
                for j in row:
                    m |= 1 << j
                masks.append(m)
            self._masks = masks
        return self._masks

    def edges(self):
        """Edges ``(u, v)`` with ``u < v`` as an ``(m, 2)`` index array."""
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        keep = rows < self.indices
        return np.stack([rows[keep], self.indices[keep]], axis=1)

    def edge_ids(self) -> list[tuple[str, str]]:
        return [(self.ids[u], self.ids[v]) for u, v in self.edges().tolist()]

    def to_sparse(self) -> sparse.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int8)
        # scipy expects matching index dtypes; mixed int32/int64 arrays can crash fancy indexing
        indptr = self.indptr.astype(self.indices.dtype) if self.indptr[-1] < 2**31 else self.indptr
        indices = self.indices.astype(indptr.dtype)
        return sparse.csr_matrix((data, indices, indptr), shape=(self.n, self.n))

    def same_adjacency(self, other: IntersectionGraph) -> bool:
        """Equal edge sets under the identity map on vertex ids."""
        if set(self.ids) != set(other.ids):
            return False
        mine = {frozenset(e) for e in self.edge_ids()}
        theirs = {frozenset(e) for e in other.edge_ids()}
        return mine == theirs


def _scaled_columns(rep: Representation):
    """Coordinates scaled to a common integer grid, as int64 arrays when safe."""
    den = 1
    for s in rep:
        for c in (s.line, s.lo, s.hi):
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
    rows = [(int(s.line * den), int(s.lo * den), int(s.hi * den)) for s in rep]
    big = max((max(abs(v) for v in r) for r in rows), default=0)
    dtype = np.int64 if big < _INT64_SAFE else object
    return np.array(rows, dtype=dtype).reshape(-1, 3)


def build_graph(rep: Representation, chunk_cells: int = 4_000_000) -> IntersectionGraph:
    """Intersection graph of *rep*; vertex order follows the representation."""
    segs = list(rep)
    ids = [s.id for s in segs]
    pos = {s.id: i for i, s in enumerate(segs)}
    pairs = []
    for gl in grid_lines(segs):
        _, contacts = collinear_contacts(gl, stop_at_triple=False)
        pairs.extend((pos[a.id], pos[b.id]) for a, b, _, _ in contacts)

    coords = _scaled_columns(rep)
    is_h = np.array([s.orientation == HORIZONTAL for s in segs], dtype=bool)
    h_idx, v_idx = np.flatnonzero(is_h), np.flatnonzero(~is_h)
    chunks = [np.asarray(pairs, dtype=np.int64).reshape(-1, 2)]
    if len(h_idx) and len(v_idx):
        hy, hx1, hx2 = (coords[h_idx, k] for k in range(3))
        vx, vy1, vy2 = (coords[v_idx, k] for k in range(3))
        step = max(1, chunk_cells // len(v_idx))
        for start in range(0, len(h_idx), step):
            sl = slice(start, start + step)
            hit = ((hx1[sl, None] <= vx[None, :]) & (vx[None, :] <= hx2[sl, None])
                   & (vy1[None, :] <= hy[sl, None]) & (hy[sl, None] <= vy2[None, :]))
            a, b = np.nonzero(hit)
            if len(a):
                chunks.append(np.stack([h_idx[sl][a], v_idx[b]], axis=1))
    g = IntersectionGraph._from_pairs(ids, np.concatenate(chunks))
    g.colouring = is_h.astype(np.int64)
    return g


def _bfs_parity(g: IntersectionGraph, edges: np.ndarray) -> np.ndarray:
    """BFS depth parity of every vertex; a virtual root joined to one vertex
    per component lets a single traversal cover the whole graph."""
    n = g.n
    _, labels = csgraph.connected_components(g.to_sparse(), directed=False)
    roots = np.unique(labels, return_index=True)[1]
    u = np.concatenate([edges[:, 0], np.full(len(roots), n)])
    v = np.concatenate([edges[:, 1], roots])
    adj = sparse.csr_matrix((np.ones(len(u), dtype=np.int8), (u, v)), shape=(n + 1, n + 1))
    order, pred = csgraph.breadth_first_order(adj, n, directed=False)
    depth = np.zeros(n + 1, dtype=np.int64)
    for x in order[1:].tolist():
        depth[x] = depth[pred[x]] + 1
    return depth[:n] % 2


def is_triangle_free(g: IntersectionGraph) -> bool:
    """A triangle cannot be properly 2-coloured, so under any 0/1 labelling it
    contains a monochromatic edge.  Only those edges need their endpoint
    neighbourhoods intersected.  The labelling is the graph's ``colouring``
    hint when present (few collinear edges are monochromatic) and BFS depth
    parity otherwise."""
    edges = g.edges()
    if len(edges) == 0:
        return True
    parity = g.colouring if g.colouring is not None else _bfs_parity(g, edges)
    bad = edges[parity[edges[:, 0]] == parity[edges[:, 1]]]
    if len(bad) == 0:
        return True
    a = g.to_sparse().tocsr()
    return a[bad[:, 0]].multiply(a[bad[:, 1]]).nnz == 0


# ---------------------------------------------------------------------------
# solutions


@dataclass(frozen=True)
class IndependentSet:
    ids: frozenset

    def __init__(self, ids: Iterable = ()):
        object.__setattr__(self, "ids", frozenset(str(i) for i in ids))

    @property
    def size(self) -> int:
        return len(self.ids)

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self):
        return iter(sorted(self.ids))

    def __contains__(self, item) -> bool:
        return str(item) in self.ids


@dataclass(frozen=True)
class Matching:
    edges: frozenset

    def __init__(self, edges: Iterable = ()):
        norm = frozenset(tuple(sorted((str(u), str(v)))) for u, v in edges)
        object.__setattr__(self, "edges", norm)

    @property
    def size(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def matched(self) -> set:
        return {v for e in self.edges for v in e}

    def is_valid(self, g: IntersectionGraph) -> bool:
        seen = set()
        for u, v in self.edges:
            if u in seen or v in seen or not g.has_edge(g.index[u], g.index[v]):
                return False
            seen.update((u, v))
        return True


def is_independent(rep: Representation, ids: Iterable) -> bool:
    """Geometric check that the segments named by *ids* are pairwise disjoint.

    Works on coordinates only and never consults :func:`build_graph`.
    """
    chosen = [rep.get(i) for i in set(map(str, ids))]
    by_line: dict[tuple, list] = {}
    for s in chosen:
        by_line.setdefault((s.orientation, s.line), []).append(s)
    vlines = []
    for (o, c), segs in by_line.items():
        segs.sort(key=lambda s: s.lo)
        for a, b in zip(segs, segs[1:]):
            if b.lo <= a.hi:
                return False
        if o != HORIZONTAL:
            vlines.append((c, [s.lo for s in segs], segs))
    vlines.sort(key=lambda t: t[0])
    xs = [c for c, _, _ in vlines]
    for (o, y), segs in by_line.items():
        if o != HORIZONTAL:
            continue
        for h in segs:
            i = bisect.bisect_left(xs, h.lo)
            j = bisect.bisect_right(xs, h.hi)
            for _, los, vsegs in vlines[i:j]:
                k = bisect.bisect_right(los, y) - 1
                if k >= 0 and vsegs[k].hi >= y:
                    return False
    return True


def check_ids(rep: Representation, ids: Iterable) -> None:
    for i in ids:
        if str(i) not in rep:
            raise UnknownIdError(i)


# ---------------------------------------------------------------------------
# text formats


def format_independent_set(ids: Iterable, header: str | None = None) -> str:
    ids = sorted(map(str, ids))
    lines = [header] if header else []
    lines.append(f"IS {len(ids)}")
    lines.extend(ids)
    return "\n".join(lines) + "\n"


def format_matching(matching: Matching) -> str:
    edges = sorted(matching.edges)
    return "\n".join([f"MATCHING {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def format_cover(cliques: Iterable[Iterable]) -> str:
    rows = sorted(tuple(sorted(map(str, c))) for c in cliques)
    return "\n".join([f"COVER {len(rows)}"] + [" ".join(r) for r in rows]) + "\n"


@dataclass(frozen=True)
class SolutionFile:
    kind: str
    items: tuple
    meta: dict


def parse_solution(text: str) -> SolutionFile:
    """Read an ``IS``, ``MATCHING`` or ``COVER`` document.

    A leading ``TECHNIQUE <name> key=value ...`` line is kept in ``meta``.
    """
    kind, size, items, meta = None, None, [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if kind is None:
            if parts[0] == "TECHNIQUE":
                meta["technique"] = parts[1] if len(parts) > 1 else ""
                for kv in parts[2:]:
                    key, _, value = kv.partition("=")
                    meta[key] = value
                continue
            if parts[0] not in ("IS", "MATCHING", "COVER") or len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'IS|MATCHING|COVER <size>' header")
            kind = parts[0]
            try:
                size = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad size {parts[1]!r}") from None
            continue
        if kind == "IS":
            if len(parts) != 1:
                raise ParseError(f"line {lineno}: one id per line expected")
            items.append(parts[0])
        elif kind == "MATCHING":
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: matching rows hold two ids")
            items.append(tuple(parts))
        else:
            items.append(tuple(parts))
    if kind is None:
        raise ParseError("missing header")
    if size != len(items):
        raise ParseError(f"header announces {size} entries, found {len(items)}")
    return SolutionFile(kind, tuple(items), meta)


def read_independent_set(path) -> IndependentSet:
    with open(path, encoding="utf-8") as fh:
        doc = parse_solution(fh.read())
    if doc.kind != "IS":
        raise ParseError(f"{path}: expected an IS document, found {doc.kind}")
    return IndependentSet(doc.items)
