"""Undirected sparse graphs and their structural decompositions.

Vertices are dense integers 0..n-1.  Edges carry stable integer identifiers
assigned in insertion order; every decomposition here is deterministic so
that downstream edge-deletion choices replay exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc_labels


class SparseGraph:
    """Simple undirected graph in adjacency-list (CSR) form.

    Edge i joins ``eu[i] < ev[i]``.  Self-loops and duplicate edges are
    rejected at construction.  Instances are treated as immutable.
    """

    __slots__ = ("n", "eu", "ev", "_indptr", "_nbr", "_nbr_edge")

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be pairs")
        u = np.minimum(arr[:, 0], arr[:, 1])
        v = np.maximum(arr[:, 0], arr[:, 1])
        if arr.size:
            if u.min() < 0 or v.max() >= n:
                raise ValueError("edge endpoint out of range")
            if (u == v).any():
                raise ValueError("self-loops are not allowed")
            code = u * np.int64(n) + v
            if np.unique(code).size != code.size:
                raise ValueError("duplicate edges are not allowed")
        self.n = int(n)
        self.eu = u
        self.ev = v
        self._indptr = None
        self._nbr = None
        self._nbr_edge = None

    @property
    def m(self) -> int:
        return len(self.eu)

    def _adjacency(self):
        if self._indptr is None:
            heads = np.concatenate([self.eu, self.ev])
            tails = np.concatenate([self.ev, self.eu])
            eids = np.concatenate([np.arange(self.m), np.arange(self.m)])
            # per-vertex neighbor lists ordered by edge id
            order = np.lexsort((eids, heads))
            self._nbr = tails[order]
            self._nbr_edge = eids[order]
            counts = np.bincount(heads, minlength=self.n)
            self._indptr = np.concatenate([[0], np.cumsum(counts)])
        return self._indptr, self._nbr, self._nbr_edge

    def degrees(self) -> np.ndarray:
        both = np.concatenate([self.eu, self.ev])
        return np.bincount(both, minlength=self.n)

    def neighbors(self, v: int):
        """Return (neighbor array, edge-id array) for vertex v."""
        indptr, nbr, nbr_edge = self._adjacency()
        lo, hi = indptr[v], indptr[v + 1]
        return nbr[lo:hi], nbr_edge[lo:hi]

    def edge_pairs(self):
        return zip(self.eu.tolist(), self.ev.tolist())

    def edge_set(self):
        return set(self.edge_pairs())

    def has_edge(self, a: int, b: int) -> bool:
        if a > b:
            a, b = b, a
        return ((self.eu == a) & (self.ev == b)).any()

    def delete_edges(self, edge_ids) -> "SparseGraph":
        """New graph with the given edge ids removed (vertex set unchanged)."""
        keep = np.ones(self.m, dtype=bool)
        keep[np.asarray(list(edge_ids), dtype=np.int64)] = False
        return SparseGraph(self.n, np.column_stack([self.eu[keep], self.ev[keep]]))

    def __repr__(self):
        return f"SparseGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class KernelPath:
    """A maximal path whose internal vertices all have degree 2 in the host.

    ``edge_ids`` are ordered along the traversal starting at the lower
    endpoint (for cycles, starting and ending at the break vertex), so the
    deterministic representative edge of the path is ``edge_ids[-1]``.
    """

    a: int
    b: int
    edge_ids: tuple

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    @property
    def is_cycle(self) -> bool:
        return self.a == self.b


@dataclass(frozen=True)
class CoreDecomposition:
    """2-core as a reindexed graph plus maps back to the host graph."""

    graph: SparseGraph
    vertices: np.ndarray  # new index -> original vertex
    edge_ids: np.ndarray  # new edge id -> original edge id


def component_labels(g: SparseGraph):
    """(labels, sizes) with labels renumbered by (-size, smallest vertex)."""
    if g.n == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    mat = coo_matrix(
        (np.ones(g.m, dtype=np.int8), (g.eu, g.ev)), shape=(g.n, g.n)
    )
    _, raw = _cc_labels(mat, directed=False)
    sizes = np.bincount(raw)
    first = np.full(sizes.size, g.n, dtype=np.int64)
    np.minimum.at(first, raw, np.arange(g.n))
    order = np.lexsort((first, -sizes))
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    labels = rank[raw]
    return labels, sizes[order]


def connected_components(g: SparseGraph) -> list[set]:
    """Vertex sets, largest first; ties broken by smallest contained vertex."""
    labels, sizes = component_labels(g)
    comps = [set() for _ in range(len(sizes))]
    for v, lab in enumerate(labels.tolist()):
        comps[lab].add(v)
    return comps


def _gather_neighbors(indptr, nbr, nbr_edge, frontier):
    counts = indptr[frontier + 1] - indptr[frontier]
    total = int(counts.sum())
    if total == 0:
        return (np.empty(0, np.int64),) * 3
    rep_start = np.repeat(indptr[frontier], counts)
    block = np.repeat(np.cumsum(counts) - counts, counts)
    idx = rep_start + (np.arange(total) - block)
    src = np.repeat(frontier, counts)
    return nbr[idx], nbr_edge[idx], src


def _bfs_two_color(g: SparseGraph) -> np.ndarray:
    """Parity layering from one root per component (root = smallest vertex)."""
    color = np.full(g.n, -1, dtype=np.int8)
    if g.n == 0:
        return color
    labels, _ = component_labels(g)
    _, first = np.unique(labels, return_index=True)
    roots = first.astype(np.int64)
    color[roots] = 0
    indptr, nbr, nbr_edge = g._adjacency()
    frontier = roots
    level = 0
    while frontier.size:
        nxt, _, _ = _gather_neighbors(indptr, nbr, nbr_edge, frontier)
        fresh = nxt[color[nxt] == -1]
        if fresh.size:
            fresh = np.unique(fresh)
            color[fresh] = (level + 1) % 2
        frontier = fresh
        level += 1
    return color


def is_bipartite(g: SparseGraph) -> Optional[np.ndarray]:
    """A proper 2-coloring (0/1 per vertex) if one exists, else None."""
    color = _bfs_two_color(g)
    if g.m and not (color[g.eu] != color[g.ev]).all():
        return None
    return color.astype(np.int64)


def odd_girth(g: SparseGraph) -> Optional[int]:
    """Length of a shortest odd cycle, or None when bipartite.

    BFS from every vertex with parity-annotated distances; an edge whose
    endpoints sit at equal-parity distances from the source closes an odd
    walk, and the minimum such closure over all sources is the odd girth.
    Cost O(n(n+m)); intended for small and medium graphs.
    """
    if g.m == 0:
        return None
    indptr, nbr, nbr_edge = g._adjacency()
    best = None
    for s in range(g.n):
        dist = np.full(g.n, -1, dtype=np.int64)
        dist[s] = 0
        frontier = np.array([s], dtype=np.int64)
        d = 0
        while frontier.size:
            nxt, _, _ = _gather_neighbors(indptr, nbr, nbr_edge, frontier)
            fresh = np.unique(nxt[dist[nxt] == -1])
            if fresh.size:
                dist[fresh] = d + 1
            frontier = fresh
            d += 1
        du, dv = dist[g.eu], dist[g.ev]
        ok = (du >= 0) & (dv >= 0) & ((du + dv) % 2 == 0)
        if ok.any():
            cand = int((du[ok] + dv[ok]).min()) + 1
            if best is None or cand < best:
                best = cand
    return best


def two_core(g: SparseGraph) -> CoreDecomposition:
    """Maximal induced subgraph of minimum degree >= 2 (may be empty).

    Iterative leaf stripping run in vectorized rounds until fixpoint; the
    result is the unique 2-core regardless of stripping order.
    """
    alive_v = np.ones(g.n, dtype=bool)
    live_e = np.arange(g.m)
    deg = g.degrees()
    while True:
        weak = alive_v & (deg < 2)
        if not weak.any():
            break
        alive_v[weak] = False
        if live_e.size:
            dead = weak[g.eu[live_e]] | weak[g.ev[live_e]]
            dying = live_e[dead]
            dec = np.bincount(
                np.concatenate([g.eu[dying], g.ev[dying]]), minlength=g.n
            )
            deg -= dec
            live_e = live_e[~dead]
        deg[weak] = 0
    vertices = np.flatnonzero(alive_v)
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[vertices] = np.arange(vertices.size)
    pairs = np.column_stack([remap[g.eu[live_e]], remap[g.ev[live_e]]])
    return CoreDecomposition(SparseGraph(vertices.size, pairs), vertices, live_e)


def induced_subgraph(g: SparseGraph, vertex_mask: np.ndarray):
    """Subgraph induced by a boolean vertex mask.

    Returns (graph, vertices, edge_ids) with the same reindexing convention
    as CoreDecomposition.
    """
    vertices = np.flatnonzero(vertex_mask)
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[vertices] = np.arange(vertices.size)
    keep = vertex_mask[g.eu] & vertex_mask[g.ev]
    edge_ids = np.flatnonzero(keep)
    pairs = np.column_stack([remap[g.eu[edge_ids]], remap[g.ev[edge_ids]]])
    return SparseGraph(vertices.size, pairs), vertices, edge_ids


def kernel_paths(core: SparseGraph) -> list[KernelPath]:
    """Decompose a min-degree-2 graph into maximal degree-2 chains.

    Every edge lies in exactly one returned path.  Path endpoints have
    degree >= 3, except that a component which is a bare cycle yields a
    single closed path broken at its lowest-index vertex.
    """
    deg = core.degrees()
    if core.n and deg.min() < 2:
        raise ValueError("kernel paths need minimum degree >= 2")
    indptr, nbr, nbr_edge = core._adjacency()
    used = np.zeros(core.m, dtype=bool)
    branch = deg >= 3
    paths = []

    def walk(start, first_nbr, first_eid):
        edge_ids = [int(first_eid)]
        prev_eid = int(first_eid)
        cur = int(first_nbr)
        while not branch[cur]:
            if cur == start and deg[cur] == 2:
                break  # closed bare cycle back at the break vertex
            lo, hi = indptr[cur], indptr[cur + 1]
            for w, eid in zip(nbr[lo:hi].tolist(), nbr_edge[lo:hi].tolist()):
                if eid != prev_eid:
                    edge_ids.append(eid)
                    prev_eid = eid
                    cur = w
                    break
        return cur, edge_ids

    for b in np.flatnonzero(branch).tolist():
        lo, hi = indptr[b], indptr[b + 1]
        for w, eid in zip(nbr[lo:hi].tolist(), nbr_edge[lo:hi].tolist()):
            if used[eid]:
                continue
            end, edge_ids = walk(b, w, eid)
            used[edge_ids] = True
            if end < b:
                a2, b2 = end, b
                edge_ids.reverse()
            else:
                a2, b2 = b, end
            paths.append(KernelPath(a2, b2, tuple(edge_ids)))

    # bare cycles: everything still unused, broken at the lowest vertex
    for v in range(core.n):
        if deg[v] != 2:
            continue
        lo, hi = indptr[v], indptr[v + 1]
        eid = int(nbr_edge[lo])
        if used[eid]:
            continue
        end, edge_ids = walk(v, int(nbr[lo]), eid)
        assert end == v
        used[edge_ids] = True
        paths.append(KernelPath(v, v, tuple(edge_ids)))
    return paths


# --- edge-list text format: "n m" then one "u v" line per edge (u < v) ---

def dump_edge_list(g: SparseGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_pairs())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> SparseGraph:
    rows = [ln for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise ValueError("empty edge-list input")
    try:
        n, m = map(int, rows[0].split())
    except Exception as exc:
        raise ValueError(f"bad header line: {rows[0]!r}") from exc
    if len(rows) - 1 != m:
        raise ValueError(f"expected {m} edge lines, got {len(rows) - 1}")
    edges = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not u < v:
            raise ValueError(f"edge must satisfy u < v: {ln!r}")
        edges.append((u, v))
    return SparseGraph(n, edges)  # range/loop/duplicate checks happen here


def write_edge_list(g: SparseGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(dump_edge_list(g))


def read_edge_list(path) -> SparseGraph:
    with open(path) as fh:
        return parse_edge_list(fh.read())
