"""Fully dynamic proper (delta+1)-vertex coloring in expected amortized constant time.

Every vertex gets a static random rank; neighbor lists are split into
lower-ranked (L) and higher-ranked (H) halves.  Only the colors used on the
H side are tracked persistently (a multiplicity book per vertex); everything
about the L side is recomputed on demand in time O(|L_v|).  When an inserted
edge joins two same-colored endpoints, the more recently colored one is
recolored with a color sampled from a restricted set of blank and
singly-used-below colors, which may cascade along a path of strictly
decreasing ranks until a blank color is drawn.

Rank ties are broken by vertex id: the stored rank is a 64-bit uniform
integer shifted left 32 bits with the id packed into the low bits, so ranks
are distinct and totally ordered.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DeltaBoundError(ValueError):
    """An insertion would push an endpoint's degree above the promised bound."""


class InvariantError(RuntimeError):
    """A runtime-checked internal invariant failed."""


@dataclass
class RecolorStats:
    """Work accounting for one update's recoloring cascade (zeros if none)."""

    path_length: int = 0
    total_work: int = 0  # sum over the path of (1 + |L_v|)
    good_steps: int = 0
    bad_steps: int = 0
    low_degree_terminations: int = 0


class Coloring:
    """Proper (delta+1)-coloring of a delta-bounded dynamic graph.

    The structure owns its adjacency (as the L/H lists), so it is driven
    directly with ``insert``/``delete`` and not attached to a DynamicGraph.
    With ``lazy_init`` (the default) the per-vertex list of colors unused on
    the H side is only materialized once a vertex's degree first reaches
    ceil(delta/2), keeping initialization O(n); the eager mode exists for
    differential testing.  ``strict`` enables the sample-set size check on
    every color draw.
    """

    def __init__(
        self,
        n: int,
        delta: int,
        seed: int | None = None,
        lazy_init: bool = True,
        strict: bool = True,
        compact_every: int = 0,
        rng: np.random.Generator | None = None,
    ):
        if n < 1 or n >= 2**32:
            raise ValueError("need 1 <= n < 2**32")
        if delta < 1:
            raise ValueError("delta must be >= 1")
        self.n = n
        self.delta = delta
        self.palette = delta + 1
        self.lazy_init = lazy_init
        self.strict = strict
        self.compact_every = compact_every
        self.rng = rng if rng is not None else np.random.default_rng(seed)

        r64 = self.rng.integers(0, 2**64, size=n, dtype=np.uint64)
        self.rank: list[int] = [(int(r64[v]) << 32) | v for v in range(n)]
        self.colors = self.rng.integers(1, self.palette + 1, size=n, dtype=np.int64)
        self._chi: list[int] = self.colors.tolist()
        self.tau: list[int] = [0] * n
        self._clock = 0

        self.L: list[list[int]] = [[] for _ in range(n)]
        self.H: list[list[int]] = [[] for _ in range(n)]
        self._posL: list[dict[int, int]] = [{} for _ in range(n)]
        self._posH: list[dict[int, int]] = [{} for _ in range(n)]
        # mu[v]: color -> number of H_v neighbors using it (the C_H book);
        # cl[v]: ordered set of the remaining palette colors (C_L), or None
        # while not yet materialized.
        self.mu: list[dict[int, int]] = [{} for _ in range(n)]
        if lazy_init:
            self.cl: list[dict[int, None] | None] = [None] * n
        else:
            self.cl = [dict.fromkeys(range(1, self.palette + 1)) for _ in range(n)]

        self._vis = bytearray(n)
        self._cnt = [0] * (self.palette + 1)  # scratch: color -> count in L_v

        self.updates = 0
        self.recolor_events = 0
        self.total_recolor_work = 0
        self.setcolor_calls = 0

    # -- basic queries ------------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.L[v]) + len(self.H[v])

    def color_of(self, v: int) -> int:
        return self._chi[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._posL[v] or u in self._posH[v]

    def edges(self) -> list[tuple[int, int]]:
        """Current edge set, each edge once as (min id, max id)."""
        return [(u, w) if u < w else (w, u) for u in range(self.n) for w in self.H[u]]

    def max_degree(self) -> int:
        return max(map(self.degree, range(self.n)), default=0)

    # -- updates ------------------------------------------------------------

    def insert(self, u: int, v: int) -> RecolorStats:
        """Insert edge (u, v), recoloring an endpoint if colors collide.

        Both endpoints must have degree < delta beforehand; a duplicate edge
        is a no-op returning empty stats.
        """
        self._check_pair(u, v)
        if self.has_edge(u, v):
            return RecolorStats()
        if len(self.L[u]) + len(self.H[u]) >= self.delta:
            raise DeltaBoundError(f"degree of {u} would exceed delta={self.delta}")
        if len(self.L[v]) + len(self.H[v]) >= self.delta:
            raise DeltaBoundError(f"degree of {v} would exceed delta={self.delta}")
        self._clock += 1
        self.updates += 1
        lo, hi = (u, v) if self.rank[u] < self.rank[v] else (v, u)
        lst = self.L[hi]
        self._posL[hi][lo] = len(lst)
        lst.append(lo)
        lst = self.H[lo]
        self._posH[lo][hi] = len(lst)
        lst.append(hi)
        self._book_add(lo, self._chi[hi])
        self._maybe_materialize(u)
        self._maybe_materialize(v)
        if self._chi[u] == self._chi[v]:
            if (self.tau[u], u) > (self.tau[v], v):
                stats = self._recolor(u)
            else:
                stats = self._recolor(v)
        else:
            stats = RecolorStats()
        self._maybe_compact()
        return stats

    def delete(self, u: int, v: int) -> None:
        """Delete edge (u, v); never recolors. Absent edge is a no-op."""
        self._check_pair(u, v)
        if not self.has_edge(u, v):
            return
        self._clock += 1
        self.updates += 1
        lo, hi = (u, v) if self.rank[u] < self.rank[v] else (v, u)
        self._list_remove(self.L[hi], self._posL[hi], lo)
        self._list_remove(self.H[lo], self._posH[lo], hi)
        self._book_remove(lo, self._chi[hi])
        self._maybe_compact()

    def rebuild(self, new_delta: int) -> "Coloring":
        """Fresh structure over the current edge set with palette [1, new_delta+1]."""
        edges = self.edges()
        if self.max_degree() > new_delta:
            raise DeltaBoundError("current max degree exceeds new_delta")
        child_seed = int(self.rng.integers(0, 2**63))
        fresh = Coloring(
            self.n,
            new_delta,
            seed=child_seed,
            lazy_init=self.lazy_init,
            strict=self.strict,
            compact_every=self.compact_every,
        )
        for a, b in edges:
            fresh.insert(a, b)
        return fresh

    def compact_timestamps(self) -> None:
        """Renumber timestamps to dense ranks, preserving their relative order."""
        order = {t: i + 1 for i, t in enumerate(sorted(set(self.tau)))}
        self.tau = [order[t] for t in self.tau]
        self._clock = self.n + 1

    # -- internals ----------------------------------------------------------

    def _check_pair(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop ({u}, {u}) rejected")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"vertex out of range: ({u}, {v})")

    def _maybe_compact(self) -> None:
        if self.compact_every and self.updates % self.compact_every == 0:
            self.compact_timestamps()

    @staticmethod
    def _list_remove(lst: list[int], pos: dict[int, int], x: int) -> None:
        i = pos.pop(x)
        last = lst.pop()
        if i < len(lst):
            lst[i] = last
            pos[last] = i

    def _book_add(self, w: int, c: int) -> None:
        mu = self.mu[w]
        count = mu.get(c)
        if count is None:
            mu[c] = 1
            clw = self.cl[w]
            if clw is not None:
                del clw[c]
        else:
            mu[c] = count + 1

    def _book_remove(self, w: int, c: int) -> None:
        mu = self.mu[w]
        count = mu[c]
        if count == 1:
            del mu[c]
            clw = self.cl[w]
            if clw is not None:
                clw[c] = None
        else:
            mu[c] = count - 1

    def _maybe_materialize(self, x: int) -> None:
        if self.cl[x] is None and 2 * (len(self.L[x]) + len(self.H[x])) >= self.delta:
            mu = self.mu[x]
            self.cl[x] = dict.fromkeys(c for c in range(1, self.palette + 1) if c not in mu)

    def _recolor(self, v0: int) -> RecolorStats:
        """Recoloring cascade starting at v0; ranks strictly decrease along it."""
        marked: list[int] = []
        stats = RecolorStats()
        chi = self._chi
        v = v0
        while True:
            new_color, next_v, branch = self._set_color(v, marked)
            stats.path_length += 1
            stats.total_work += 1 + len(self.L[v])
            if branch == 0:
                stats.low_degree_terminations += 1
            elif branch == 1:
                stats.good_steps += 1
            else:
                stats.bad_steps += 1
            old = chi[v]
            chi[v] = new_color
            self.colors[v] = new_color
            self.tau[v] = self._clock
            if new_color != old:
                for w in self.L[v]:
                    self._book_remove(w, old)
                    self._book_add(w, new_color)
            if next_v is None:
                break
            if self.rank[next_v] >= self.rank[v]:
                raise InvariantError("recoloring path must descend in rank")
            v = next_v
        vis = self._vis
        for x in marked:
            vis[x] = 0
        self.recolor_events += 1
        self.total_recolor_work += stats.total_work
        return stats

    def _set_color(self, v: int, marked: list[int]) -> tuple[int, int | None, int]:
        """Pick a new color for v; returns (color, next path vertex or None, branch).

        branch: 0 = low-degree blank sampling, 1 = fresh-neighbor branch,
        2 = seen-neighbor branch.  The caller still holds v's old color.
        """
        self.setcolor_calls += 1
        vis = self._vis
        if not vis[v]:
            vis[v] = 1
            marked.append(v)
        Lv = self.L[v]
        len_l = len(Lv)
        l_old: list[int] = []
        l_new: list[int] = []
        for u in Lv:
            if vis[u]:
                l_old.append(u)
            else:
                vis[u] = 1
                marked.append(u)
                l_new.append(u)
        chi = self._chi
        cnt = self._cnt
        touched: list[int] = []
        for u in Lv:
            c = chi[u]
            if cnt[c] == 0:
                touched.append(c)
            cnt[c] += 1
        mu_v = self.mu[v]
        degree = len_l + len(self.H[v])
        try:
            if 2 * degree < self.delta:
                rng = self.rng
                palette = self.palette
                while True:
                    c = int(rng.integers(1, palette + 1))
                    if cnt[c] == 0 and c not in mu_v:
                        break
                blanks = palette - len(mu_v) - sum(1 for t in touched if t not in mu_v)
                self._check_sample_size(blanks, len_l, True)
                return c, None, 0
            if 10 * len(l_new) >= len_l:
                chosen = l_new
                branch = 1
            else:
                chosen = l_old
                branch = 2
            if chosen:
                rank = self.rank
                ranks = sorted(rank[u] for u in chosen)
                median = ranks[(len(ranks) - 1) // 2]
                sub = [u for u in chosen if rank[u] <= median]
            else:
                sub = []
            # unique colors: used by exactly one vertex of L_v, by no vertex
            # of H_v, with that vertex inside sub
            uniq = [u for u in sub if cnt[chi[u]] == 1 and chi[u] not in mu_v]
            blanks = self.palette - len(mu_v) - sum(1 for t in touched if t not in mu_v)
            s = min(blanks + len(uniq), len(sub) + 1)
            self._check_sample_size(s, len_l, False)
            j = int(self.rng.integers(0, s))
            if j >= blanks:
                w = uniq[j - blanks]
                return chi[w], w, branch
            # j-th color of C_L(v) not used by any L_v neighbor
            clv = self.cl[v]
            if clv is None:
                raise InvariantError(f"C_L not materialized for vertex {v} at degree {degree}")
            i = 0
            for c in clv:
                if cnt[c]:
                    continue
                if i == j:
                    return c, None, branch
                i += 1
            raise InvariantError("blank color index out of range")
        finally:
            for c in touched:
                cnt[c] = 0

    def _check_sample_size(self, s: int, len_l: int, low_degree: bool) -> None:
        if not self.strict:
            return
        if low_degree:
            if 2 * s < self.delta + 2:
                raise InvariantError(
                    f"sample set of size {s} below delta/2+1 (delta={self.delta})"
                )
        elif 100 * (s - 1) < len_l:
            raise InvariantError(f"sample set of size {s} below |L_v|/100+1 (|L_v|={len_l})")
