"""Independent combinatorial checks applied to finished game outcomes.

These deliberately share no code with the strategies or the incremental
goal trackers: they rebuild the claimed structure from the raw label sets by
brute force, so a bug in the in-game bookkeeping cannot hide itself.
"""

from __future__ import annotations

from typing import Iterable

__all__ = ["contains_clique", "has_path", "covers_all_boxes"]


def contains_clique(edges: Iterable[tuple], k: int) -> bool:
    """True iff the edge set contains a clique on k vertices (brute force)."""
    adj: dict = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)

    def extend(clique: list, cands: set) -> bool:
        if len(clique) == k:
            return True
        for w in sorted(cands):
            if extend(clique + [w], {x for x in cands if x > w and x in adj[w]}):
                return True
        return False

    return extend([], set(adj))


def has_path(edges: Iterable[tuple], u, v) -> bool:
    """True iff u and v are connected in the given edge set (breadth-first)."""
    adj: dict = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if u == v:
        return True
    seen = {u}
    frontier = [u]
    while frontier:
        nxt = []
        for x in frontier:
            for y in adj.get(x, ()):
                if y == v:
                    return True
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return False


def covers_all_boxes(balls: Iterable[tuple], n_boxes: int) -> bool:
    """True iff the (box, ball) labels hit every box id 0..n_boxes-1."""
    return {box for box, _ in balls} >= set(range(n_boxes))
