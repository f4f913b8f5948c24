"""Exact powers, exact-distance graphs, odd-girth and chromatic number."""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .errors import SizeLimitError
from .graphs import Graph, bfs_layers, bits

EXACT_POWER_LIMIT = 7
CHROMATIC_LIMIT = 20

INFINITY = math.inf  # sentinel for "no odd cycle"


def exact_power(G: Graph, p: int, limit: int = EXACT_POWER_LIMIT) -> Graph:
    """Edge {x,y} iff some simple path of length exactly p joins x and y."""
    if p < 1:
        raise ValueError("power must be >= 1")
    if p > limit:
        raise SizeLimitError(f"exact power capped at length {limit}")
    if p == 1:
        return Graph(G.n, G.rows)
    rows = [0] * G.n

    def has_path(x: int, y: int) -> bool:
        # DFS over simple paths of length exactly p from x to y
        def rec(v: int, visited: int, left: int) -> bool:
            if left == 0:
                return v == y
            for u in bits(G.rows[v] & ~visited):
                if rec(u, visited | (1 << u), left - 1):
                    return True
            return False

        return rec(x, 1 << x, p)

    for x in range(G.n):
        for y in range(x + 1, G.n):
            if has_path(x, y):
                rows[x] |= 1 << y
                rows[y] |= 1 << x
    return Graph(G.n, rows)


def exact_distance_graph(G: Graph, p: int) -> Graph:
    """Edge {x,y} iff the distance between x and y in G is exactly p."""
    if p < 1:
        raise ValueError("distance must be >= 1")
    rows = [0] * G.n
    for x in range(G.n):
        dist = bfs_layers(G, x, G.full_mask)
        for y in range(G.n):
            if y != x and dist[y] == p:
                rows[x] |= 1 << y
    return Graph(G.n, rows)


def odd_girth(G: Graph):
    """Length of the shortest odd cycle; math.inf if bipartite."""
    best = INFINITY
    for root in range(G.n):
        dist = bfs_layers(G, root, G.full_mask)
        for u, v in G.edges():
            if dist[u] >= 0 and dist[u] == dist[v]:
                best = min(best, dist[u] + dist[v] + 1)
    return best


def is_bipartite(G: Graph) -> bool:
    return odd_girth(G) == INFINITY


def greedy_clique_bound(G: Graph) -> int:
    """Greedy clique size, over each vertex as seed (lower bound for chi)."""
    best = 1 if G.n else 0
    for seed in range(G.n):
        cand = G.rows[seed]
        clique = 1
        cur = 1 << seed
        while cand:
            v = max(bits(cand), key=lambda x: (G.rows[x] & cand).bit_count())
            cur |= 1 << v
            clique += 1
            cand &= G.rows[v]
        best = max(best, clique)
    return best


def _dsatur_upper(G: Graph) -> tuple[int, list[int]]:
    """Greedy DSATUR coloring; returns (colors used, coloring)."""
    n = G.n
    colors = [-1] * n
    neighbor_colors: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (len(neighbor_colors[u]), G.degree(u), -u),
        )
        q = 0
        while q in neighbor_colors[v]:
            q += 1
        colors[v] = q
        for u in bits(G.rows[v]):
            neighbor_colors[u].add(q)
    return max(colors, default=-1) + 1, colors


def _k_colorable(G: Graph, k: int) -> bool:
    """Backtracking k-colorability with saturation ordering."""
    n = G.n
    colors = [-1] * n

    def rec(done: int) -> bool:
        if done == n:
            return True
        # most saturated uncolored vertex, then max degree
        best_v, best_key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[u] for u in bits(G.rows[v]) if colors[u] >= 0})
            key = (sat, G.degree(v), -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        v = best_v
        used = {colors[u] for u in bits(G.rows[v]) if colors[u] >= 0}
        limit = min(k, max(colors, default=-1) + 2)  # symmetry break
        for q in range(limit):
            if q in used:
                continue
            colors[v] = q
            if rec(done + 1):
                return True
            colors[v] = -1
        return False

    return rec(0)


def chromatic_number(G: Graph, limit: int = CHROMATIC_LIMIT) -> int:
    """Exact chromatic number by iterating k between clique and DSATUR bounds."""
    if G.n == 0:
        return 0
    if G.n > limit:
        lb = greedy_clique_bound(G)
        ub, _ = _dsatur_upper(G)
        raise SizeLimitError(
            f"exact chromatic number capped at {limit} vertices", payload=(lb, ub))
    lb = greedy_clique_bound(G)
    ub, _ = _dsatur_upper(G)
    for k in range(lb, ub):
        if _k_colorable(G, k):
            return k
    return ub


def chromatic_bounds(G: Graph) -> tuple[int, int]:
    lb = greedy_clique_bound(G)
    ub, _ = _dsatur_upper(G)
    return lb, ub


def odd_power_experiment(corpus: Sequence[Graph], p: int,
                         n_claim: Optional[int] = None) -> dict:
    """Chromatic maxima of exact p-powers over corpus members with
    odd-girth above p; the hypothesis filter skips the rest.
    """
    if p % 2 == 0:
        raise ValueError("the odd-power experiment needs odd p")
    items = []
    max_path = 0
    max_dist = 0
    for idx, G in enumerate(corpus):
        og = odd_girth(G)
        if not og > p:
            items.append({"index": idx, "odd_girth": og, "skipped": True})
            continue
        chi_path = chromatic_number(exact_power(G, p))
        chi_dist = chromatic_number(exact_distance_graph(G, p))
        delta_bound = G.max_degree() ** p + 1
        assert chi_path <= delta_bound
        max_path = max(max_path, chi_path)
        max_dist = max(max_dist, chi_dist)
        items.append({
            "index": idx,
            "odd_girth": og if og != INFINITY else "infinity",
            "skipped": False,
            "chi_exact_power": chi_path,
            "chi_exact_distance": chi_dist,
            "delta_bound": delta_bound,
        })
    report = {
        "p": p,
        "items": items,
        "max_chi_exact_power": max_path,
        "max_chi_exact_distance": max_dist,
    }
    if n_claim is not None:
        report["n_claim"] = n_claim
        report["claim_holds"] = max_path <= n_claim and max_dist <= n_claim
    return report
