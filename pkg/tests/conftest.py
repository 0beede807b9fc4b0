"""Shared helpers for driving structures with random update sequences."""

from __future__ import annotations

import numpy as np


def random_pair(rng: np.random.Generator, n: int) -> tuple[int, int]:
    u = int(rng.integers(0, n))
    v = int(rng.integers(0, n))
    return u, v


def churn_step(rng, n, edges, p_delete=0.5):
    """Pick one update against the edge set: returns ('i'|'d', u, v) or None.

    ``edges`` is a dict key->anything with (min,max) keys; the caller applies
    the op and maintains it.
    """
    if edges and rng.random() < p_delete:
        keys = list(edges)
        return ("d", *keys[int(rng.integers(0, len(keys)))])
    for _ in range(64):
        u, v = random_pair(rng, n)
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key not in edges:
            return ("i", *key)
    return None
