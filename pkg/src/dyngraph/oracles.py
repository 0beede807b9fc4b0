"""Brute-force ground truth for tests and the CLI verifier.

Everything here recomputes from scratch on plain edge lists and is kept
independent of the maintained structures.  ``exact_ncc`` has two routes
(union-find and BFS) so the oracles can cross-check each other, and the
``fast_*`` helpers are vectorized equivalents used inside long per-step
verification loops; they are asserted against the pure routes in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components, minimum_spanning_tree

Edge = tuple[int, int]
WeightedEdge = tuple[int, int, float]


@dataclass
class OracleReport:
    ncc: int
    nis: int
    nscc_k: int
    msf_weight: float
    coloring_ok: bool


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]  # path halving
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def exact_ncc(edges: list[Edge], n: int) -> int:
    """Number of connected components, via union-find."""
    uf = _UnionFind(n)
    comps = n
    for u, v in edges:
        if uf.union(u, v):
            comps -= 1
    return comps


def exact_ncc_bfs(edges: list[Edge], n: int) -> int:
    """Second, independent route for exact_ncc (adjacency-list BFS)."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = bytearray(n)
    comps = 0
    for s in range(n):
        if seen[s]:
            continue
        comps += 1
        seen[s] = 1
        stack = [s]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if not seen[w]:
                    seen[w] = 1
                    stack.append(w)
    return comps


def exact_nis(edges: list[Edge], n: int) -> int:
    """Number of non-isolated vertices."""
    touched = set()
    for u, v in edges:
        touched.add(u)
        touched.add(v)
    return len(touched)


def exact_nscc(edges: list[Edge], n: int, k: int) -> int:
    """Number of connected components of size at most k."""
    uf = _UnionFind(n)
    for u, v in edges:
        uf.union(u, v)
    return sum(1 for v in range(n) if uf.find(v) == v and uf.size[v] <= k)


def exact_msf_weight(weighted_edges: list[WeightedEdge], n: int) -> float:
    """Minimum spanning forest weight, via Kruskal."""
    uf = _UnionFind(n)
    total = 0.0
    for u, v, w in sorted(weighted_edges, key=lambda e: e[2]):
        if uf.union(u, v):
            total += w
    return total


def exact_integer_msf_identity(weighted_edges: list[WeightedEdge], n: int, W: int) -> float:
    """MSF weight from threshold-subgraph component counts, integer weights only.

    Computes n - W * c^(W) + sum_{i=1}^{W-1} c^(i) where c^(i) is the number
    of components of the subgraph of edges with weight <= i.  The summation
    deliberately starts at i=1: a hypothetical i=0 term would add the n
    components of the empty subgraph and break the identity (checked against
    Kruskal in the tests).
    """
    for _, _, w in weighted_edges:
        if w != int(w) or not (1 <= w <= W):
            raise ValueError(f"integer identity requires weights in 1..{W}, got {w}")
    total = float(n)
    for i in range(1, W + 1):
        sub = [(u, v) for u, v, w in weighted_edges if w <= i]
        c_i = exact_ncc(sub, n)
        total += -W * c_i if i == W else c_i
    return total


def is_proper_coloring(edges: list[Edge], colors, delta: int) -> bool:
    """True iff no edge is monochromatic and all colors lie in [1, delta+1]."""
    for c in colors:
        if not 1 <= c <= delta + 1:
            return False
    return all(colors[u] != colors[v] for u, v in edges)


# ---------------------------------------------------------------------------
# Vectorized fast paths (per-step verification loops).  Same mathematical
# functions as above, computed by scipy.sparse.csgraph; cross-validated
# against the pure routes in tests/test_oracles.py.


def fast_component_labels(eu: np.ndarray, ev: np.ndarray, n: int) -> np.ndarray:
    if len(eu) == 0:
        return np.arange(n)
    g = coo_matrix((np.ones(len(eu), dtype=np.int8), (eu, ev)), shape=(n, n))
    _, labels = connected_components(g, directed=False)
    return labels


def fast_component_sizes(eu: np.ndarray, ev: np.ndarray, n: int) -> np.ndarray:
    """Per-vertex size of the containing component."""
    labels = fast_component_labels(eu, ev, n)
    counts = np.bincount(labels)
    return counts[labels]


def fast_ncc(eu: np.ndarray, ev: np.ndarray, n: int) -> int:
    if len(eu) == 0:
        return n
    g = coo_matrix((np.ones(len(eu), dtype=np.int8), (eu, ev)), shape=(n, n))
    ncomp, _ = connected_components(g, directed=False)
    return int(ncomp)


def fast_nscc(eu: np.ndarray, ev: np.ndarray, n: int, k: int) -> int:
    labels = fast_component_labels(eu, ev, n)
    counts = np.bincount(labels)
    return int((counts <= k).sum())


def fast_msf_weight(eu: np.ndarray, ev: np.ndarray, w: np.ndarray, n: int) -> float:
    if len(eu) == 0:
        return 0.0
    g = coo_matrix((w, (eu, ev)), shape=(n, n))
    return float(minimum_spanning_tree(g).sum())
