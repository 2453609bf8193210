"""Immutable regular-graph container with BFS structure queries.

Vertices are dense integers 0..n-1.  Adjacency is an (n, d) int32 array with
each row sorted ascending; edge lists are serialized sorted lexicographically
with u < v, so identical graphs produce byte-identical files.  Graphs are
immutable after construction and safe to query concurrently.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import bfs_distances as _bfs
from ._kernels import girth_scan as _girth_scan
from ._kernels import thread_count

UNREACHABLE = -1


@dataclass(frozen=True)
class Graph:
    """Simple d-regular undirected graph in canonical form.

    Use :meth:`from_edges` (or the ``load_graph`` helper) rather than the raw
    constructor; they enforce regularity, symmetry, and simplicity.
    """

    n: int
    d: int
    nbrs: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        nbrs = np.ascontiguousarray(self.nbrs, dtype=np.int32)
        nbrs.setflags(write=False)
        object.__setattr__(self, "nbrs", nbrs)

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        """Build a graph from an undirected edge list, validating hard.

        Multi-edges and self-loops are rejected with an explicit error: every
        walk-counting identity in this package assumes a simple graph.
        """
        if n <= 0:
            raise ValueError("vertex count must be positive")
        seen = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u} (graph must be simple)")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"repeated edge {key} (graph must be simple)")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        degrees = {len(a) for a in adj}
        if len(degrees) != 1:
            raise ValueError(f"graph is not regular: degrees {sorted(degrees)}")
        d = degrees.pop()
        if d < 3:
            raise ValueError(f"degree must be >= 3, got {d}")
        nbrs = np.array([sorted(a) for a in adj], dtype=np.int32)
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise ValueError("labels length must equal vertex count")
        return cls(n=n, d=d, nbrs=nbrs, labels=labels)

    @property
    def p(self) -> int:
        """Walk branching factor d - 1."""
        return self.d - 1

    def neighbors(self, v: int) -> np.ndarray:
        return self.nbrs[v]

    def edges(self) -> list[tuple[int, int]]:
        """Edge list sorted lexicographically with u < v."""
        out = []
        for u in range(self.n):
            for w in self.nbrs[u]:
                if u < w:
                    out.append((u, int(w)))
        return out

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        rows = np.repeat(np.arange(self.n), self.d)
        a[rows, self.nbrs.ravel()] = 1.0
        return a

    def to_dict(self) -> dict:
        out = {"n": self.n, "d": self.d, "edges": [list(e) for e in self.edges()]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out


def graph_from_dict(data: dict) -> Graph:
    g = Graph.from_edges(int(data["n"]), data["edges"], labels=data.get("labels"))
    if g.d != int(data["d"]):
        raise ValueError(f"file claims d={data['d']} but edges give d={g.d}")
    return g


def save_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        json.dump(g.to_dict(), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_graph(path) -> Graph:
    with open(path) as fh:
        return graph_from_dict(json.load(fh))


@dataclass(frozen=True)
class DistanceProfile:
    """BFS hop distances from one source; UNREACHABLE (-1) marks other components."""

    source: int
    dist: np.ndarray

    @property
    def eccentricity(self) -> int:
        return int(self.dist.max())

    @property
    def reachable(self) -> int:
        return int(np.count_nonzero(self.dist >= 0))


def bfs_distances(g: Graph, x: int) -> DistanceProfile:
    """Exact hop distances from vertex x."""
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range")
    return DistanceProfile(source=x, dist=_bfs(g.nbrs, x))


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Dense (n, n) distance matrix; row i is BFS from i."""
    out = np.empty((g.n, g.n), dtype=np.int32)
    workers = min(thread_count(), g.n)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            for src, dist in enumerate(ex.map(lambda s: _bfs(g.nbrs, s), range(g.n))):
                out[src] = dist
    else:
        for src in range(g.n):
            out[src] = _bfs(g.nbrs, src)
    return out


def is_connected(g: Graph) -> bool:
    return bfs_distances(g, 0).reachable == g.n


def girth(g: Graph) -> int:
    """Length of the shortest cycle.

    A finite simple d-regular graph with d >= 3 always contains a cycle, so a
    cycle-free scan indicates a corrupted adjacency structure.
    """
    best = _girth_scan(g.nbrs)
    if best == 0:
        raise RuntimeError("no cycle found in a d>=3 regular graph (internal error)")
    return int(best)


def is_bipartite(g: Graph) -> tuple[bool, np.ndarray | None]:
    """Two-color test; returns (flag, coloring) with coloring None when odd cycles exist."""
    color = np.full(g.n, -1, dtype=np.int8)
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            cu = color[u]
            for w in g.nbrs[u]:
                if color[w] < 0:
                    color[w] = 1 - cu
                    stack.append(int(w))
                elif color[w] == cu:
                    return False, None
    return True, color


def tail_count_from_dist(dist: np.ndarray, ell: float) -> int:
    """#{y : dist(y) > ell}, counting unreachable vertices as infinitely far."""
    return int(np.count_nonzero((dist > ell) | (dist == UNREACHABLE)))


def distance_tail_count(g: Graph, x: int, ell: float) -> int:
    """Number of vertices strictly farther than ell from x."""
    if ell < 0:
        raise ValueError("threshold must be >= 0")
    return tail_count_from_dist(bfs_distances(g, x).dist, ell)
