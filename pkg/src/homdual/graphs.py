"""Simple undirected graphs over vertex sets 0..n-1, stored as row bitmasks.

Vertex sets are plain Python ints used as bitmasks, which keeps
neighborhood intersections at one machine op per word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import GraphError, SizeLimitError

BALL_FAMILY_LIMIT = 12


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph: ``rows[v]`` is the neighbor bitmask of v."""

    __slots__ = ("n", "rows", "labels", "_hash")

    def __init__(self, n: int, rows: Sequence[int], labels: Optional[Sequence[str]] = None):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        rows = tuple(rows)
        if len(rows) != n:
            raise GraphError("row count does not match vertex count")
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full:
                raise GraphError(f"row {v} has out-of-range neighbors")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
        for v in range(n):
            for u in bits(rows[v]):
                if not rows[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at {{{u},{v}}}")
        self.n = n
        self.rows = rows
        self.labels = tuple(labels) if labels is not None else None
        self._hash = hash((n, rows))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def max_degree(self) -> int:
        return max((r.bit_count() for r in self.rows), default=0)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            row = self.rows[v] >> (v + 1) << (v + 1)
            for u in bits(row):
                out.append((v, u))
        return out

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


def build_graph(n: int, edges: Iterable[tuple[int, int]], labels: Optional[Sequence[str]] = None) -> Graph:
    """Build a graph from an edge list, rejecting loops and bad endpoints."""
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop edge ({u},{v}) rejected")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows, labels)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def induced_subgraph(G: Graph, S: int) -> tuple[Graph, list[int]]:
    """Induced subgraph on bitmask ``S``; returns (graph, old-vertex list)."""
    if S & ~G.full_mask:
        raise GraphError("vertex set not within graph")
    verts = list(bits(S))
    index = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for i, v in enumerate(verts):
        for u in bits(G.rows[v] & S):
            rows[i] |= 1 << index[u]
    labels = None
    if G.labels is not None:
        labels = [G.labels[v] for v in verts]
    return Graph(len(verts), rows, labels), verts


def connected_components(G: Graph, within: Optional[int] = None) -> list[int]:
    """Vertex masks of the connected components (optionally inside a mask)."""
    remaining = G.full_mask if within is None else within
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.rows[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps


def is_connected(G: Graph, within: Optional[int] = None) -> bool:
    mask = G.full_mask if within is None else within
    if mask == 0:
        return False
    return connected_components(G, mask)[0] == mask


def bfs_layers(G: Graph, source: int, within: int) -> list[int]:
    """Distance from ``source`` to each vertex of ``within`` (-1 unreachable)."""
    dist = [-1] * G.n
    dist[source] = 0
    frontier = 1 << source
    seen = frontier
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in bits(frontier):
            nxt |= G.rows[v]
        nxt &= within & ~seen
        for v in bits(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


def radius_center(G: Graph, S: int) -> tuple[int, int]:
    """Radius of G[S] and its smallest-index center.

    Raises unless S is nonempty and induces a connected subgraph.
    """
    if S == 0 or not is_connected(G, S):
        raise GraphError("not a ball: empty or disconnected vertex set")
    best_r, best_c = None, None
    for v in bits(S):
        dist = bfs_layers(G, v, S)
        ecc = max(dist[u] for u in bits(S))
        if best_r is None or ecc < best_r:
            best_r, best_c = ecc, v
    return best_r, best_c


@dataclass(frozen=True)
class BallFamily:
    """Pairwise disjoint connected vertex sets of bounded radius."""

    graph: Graph
    balls: tuple[int, ...]
    radius_bound: int

    def __post_init__(self):
        validate_ball_family(self.graph, self.balls, self.radius_bound)

    def union_mask(self) -> int:
        m = 0
        for b in self.balls:
            m |= b
        return m


def validate_ball_family(G: Graph, balls: Sequence[int], r: int) -> None:
    seen = 0
    for b in balls:
        if b & seen:
            raise GraphError("balls overlap")
        seen |= b
        rad, _ = radius_center(G, b)  # raises if disconnected/empty
        if rad > r:
            raise GraphError(f"ball radius {rad} exceeds bound {r}")


def quotient(G: Graph, P: BallFamily) -> Graph:
    """Quotient by the family: one vertex per ball, edges via crossing edges.

    Vertices covered by no ball are dropped.
    """
    if P.graph is not G and P.graph != G:
        raise GraphError("ball family does not belong to this graph")
    balls = P.balls
    nbhd = []
    for b in balls:
        nb = 0
        for v in bits(b):
            nb |= G.rows[v]
        nbhd.append(nb & ~b)
    p = len(balls)
    rows = [0] * p
    for i in range(p):
        for j in range(i + 1, p):
            if nbhd[i] & balls[j]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(p, rows)


def disjoint_union(graphs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Disjoint union; returns (graph, vertex offsets of each part)."""
    offsets = []
    total = 0
    rows: list[int] = []
    labels: list[str] = []
    any_labels = any(g.labels is not None for g in graphs)
    for g in graphs:
        offsets.append(total)
        for v in range(g.n):
            rows.append(g.rows[v] << total)
            if any_labels:
                labels.append(g.labels[v] if g.labels is not None else str(v))
        total += g.n
    return Graph(total, rows, labels if any_labels else None), offsets


def enumerate_connected_sets(G: Graph, within: Optional[int] = None) -> Iterator[int]:
    """All nonempty vertex masks inducing connected subgraphs, each once."""
    allowed = G.full_mask if within is None else within

    def grow(S: int, banned: int) -> Iterator[int]:
        yield S
        boundary = 0
        for v in bits(S):
            boundary |= G.rows[v]
        boundary &= allowed & ~S & ~banned
        b = banned
        for u in bits(boundary):
            yield from grow(S | (1 << u), b)
            b |= 1 << u
    banned = 0
    for v in bits(allowed):
        yield from grow(1 << v, banned)
        banned |= 1 << v


def enumerate_balls(G: Graph, r: int) -> list[int]:
    """All vertex masks that are balls of radius at most ``r``."""
    if r < 0:
        return []
    if r == 0:
        return [1 << v for v in range(G.n)]
    out = []
    for S in enumerate_connected_sets(G):
        rad, _ = radius_center(G, S)
        if rad <= r:
            out.append(S)
    return out


def enumerate_ball_families(G: Graph, r: int, limit: int = BALL_FAMILY_LIMIT) -> Iterator[BallFamily]:
    """Every family of pairwise disjoint balls of radius <= r, once each.

    The empty family is included. Exhaustive only at desk scale; callers
    needing larger graphs should use the heuristic grad bounds instead.
    """
    if G.n > limit:
        raise SizeLimitError(
            f"ball-family enumeration capped at {limit} vertices "
            f"(got {G.n}); use heuristic mode")
    balls = enumerate_balls(G, r)

    def rec(start: int, used: int, chosen: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield chosen
        for i in range(start, len(balls)):
            if balls[i] & used:
                continue
            yield from rec(i + 1, used | balls[i], chosen + (balls[i],))

    for fam in rec(0, 0, ()):
        yield BallFamily(G, fam, r)
