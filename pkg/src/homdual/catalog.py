"""Exhaustive small-graph catalogs, up to isomorphism, with filters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import SizeLimitError
from .graphs import Graph, bits, connected_components, empty_graph
from .homs import is_isomorphic

GENERATE_LIMIT = 8


@dataclass(frozen=True)
class GraphFilters:
    max_degree: Optional[int] = None
    connected: bool = False
    triangle_free: bool = False
    min_vertices: int = 0


def _has_triangle(G: Graph) -> bool:
    for u, v in G.edges():
        if G.rows[u] & G.rows[v]:
            return True
    return False


def _invariant(G: Graph) -> tuple:
    """Cheap isomorphism-invariant bucket key."""
    degs = sorted(G.degree(v) for v in range(G.n))
    nbr_degs = sorted(
        tuple(sorted(G.degree(u) for u in bits(G.rows[v])))
        for v in range(G.n)
    )
    tri = sum(1 for u, v in G.edges() if G.rows[u] & G.rows[v])
    return (G.n, G.edge_count(), tuple(degs), tuple(nbr_degs), tri)


def generate_all_graphs(n_max: int, filters: Optional[GraphFilters] = None,
                        limit: int = GENERATE_LIMIT) -> list[Graph]:
    """All graphs with at most n_max vertices, one per isomorphism class.

    Incremental vertex extension with invariant bucketing plus exact
    isomorphism checks. Monotone filters (degree, triangle-free) prune
    during generation; the rest apply at the end.
    """
    if n_max > limit:
        raise SizeLimitError(f"graph generation capped at {limit} vertices")
    f = filters or GraphFilters()
    levels: list[list[Graph]] = [[empty_graph(0)]]
    for n in range(1, n_max + 1):
        buckets: dict[tuple, list[Graph]] = {}
        accepted: list[Graph] = []
        for base in levels[n - 1]:
            for nb in range(1 << (n - 1)):
                rows = [base.rows[v] | ((nb >> v & 1) << (n - 1)) for v in range(n - 1)]
                rows.append(nb)
                G = Graph(n, rows)
                if f.max_degree is not None and G.max_degree() > f.max_degree:
                    continue
                if f.triangle_free and _has_triangle(G):
                    continue
                key = _invariant(G)
                bucket = buckets.setdefault(key, [])
                if any(is_isomorphic(G, other) for other in bucket):
                    continue
                bucket.append(G)
                accepted.append(G)
        levels.append(accepted)
    out: list[Graph] = []
    for n in range(f.min_vertices, n_max + 1):
        for G in levels[n]:
            if f.connected and (G.n == 0 or len(connected_components(G)) != 1):
                continue
            out.append(G)
    return out
