"""Tree-depth with witnesses, grads, orientations and degeneracy."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import GraphError, SizeLimitError
from .graphs import (
    BALL_FAMILY_LIMIT,
    BallFamily,
    Graph,
    bfs_layers,
    bits,
    connected_components,
    enumerate_balls,
    quotient,
)

TD_LIMIT = 16


@dataclass(frozen=True)
class RootedForest:
    """Parent pointers (None = root) over vertices 0..n-1."""

    parent: tuple[Optional[int], ...]

    def __post_init__(self):
        n = len(self.parent)
        for v in range(n):
            seen = set()
            x = v
            while x is not None:
                if x in seen:
                    raise GraphError("parent relation has a cycle")
                seen.add(x)
                x = self.parent[x]

    @property
    def n(self) -> int:
        return len(self.parent)

    def height_of(self, v: int) -> int:
        """Number of vertices on the root-to-v path (roots have height 1)."""
        h = 0
        x: Optional[int] = v
        while x is not None:
            h += 1
            x = self.parent[x]
        return h

    def height(self) -> int:
        return max((self.height_of(v) for v in range(self.n)), default=0)

    def ancestors_mask(self, v: int) -> int:
        m = 0
        x = self.parent[v]
        while x is not None:
            m |= 1 << x
            x = self.parent[x]
        return m


def closure(F: RootedForest) -> Graph:
    """Edges between every strict ancestor-descendant pair."""
    rows = [0] * F.n
    for v in range(F.n):
        anc = F.ancestors_mask(v)
        rows[v] |= anc
        for a in bits(anc):
            rows[a] |= 1 << v
    return Graph(F.n, rows)


@dataclass(frozen=True)
class TdCertificate:
    value: int
    forest: RootedForest
    optimal: bool = True


def verify_td(G: Graph, cert: TdCertificate) -> bool:
    """Check G is a subgraph of the witness closure at the claimed height."""
    if cert.forest.n != G.n:
        return False
    if cert.forest.height() != cert.value:
        return False
    clos = closure(cert.forest)
    return all(G.rows[v] & ~clos.rows[v] == 0 for v in range(G.n))


def tree_depth(G: Graph, limit: int = TD_LIMIT) -> TdCertificate:
    """Exact tree-depth via the delete-a-vertex recursion, with witness.

    Memoized on connected vertex masks. Beyond ``limit`` vertices a greedy
    certificate is returned, flagged non-optimal.
    """
    if G.n > limit:
        return _greedy_td(G)
    best_delete: dict[int, int] = {}
    value = functools.lru_cache(maxsize=None)

    @value
    def td(mask: int) -> int:
        if mask.bit_count() == 1:
            return 1
        comps = connected_components(G, mask)
        if len(comps) > 1:
            return max(td(c) for c in comps)
        best, arg = None, None
        for v in bits(mask):
            t = 1 + td(mask ^ (1 << v))
            if best is None or t < best:
                best, arg = t, v
        best_delete[mask] = arg
        return best

    parent: list[Optional[int]] = [None] * G.n

    def build(mask: int, above: Optional[int]) -> None:
        comps = connected_components(G, mask)
        if len(comps) > 1:
            for c in comps:
                build(c, above)
            return
        if mask.bit_count() == 1:
            parent[mask.bit_length() - 1] = above
            return
        td(mask)  # ensure best_delete is populated
        v = best_delete[mask]
        parent[v] = above
        build(mask ^ (1 << v), v)

    if G.n == 0:
        return TdCertificate(0, RootedForest(()))
    val = max(td(c) for c in connected_components(G))
    build(G.full_mask, None)
    cert = TdCertificate(val, RootedForest(tuple(parent)))
    assert verify_td(G, cert)
    return cert


def _greedy_td(G: Graph) -> TdCertificate:
    """Upper-bound witness: recursively delete a max-degree vertex."""
    parent: list[Optional[int]] = [None] * G.n

    def rec(mask: int, above: Optional[int]) -> int:
        comps = connected_components(G, mask)
        if len(comps) > 1:
            return max(rec(c, above) for c in comps)
        if mask.bit_count() == 1:
            parent[mask.bit_length() - 1] = above
            return 1
        v = max(bits(mask), key=lambda x: ((G.rows[x] & mask).bit_count(), -x))
        parent[v] = above
        return 1 + rec(mask ^ (1 << v), v)

    if G.n == 0:
        return TdCertificate(0, RootedForest(()), optimal=False)
    val = rec(G.full_mask, None)
    cert = TdCertificate(val, RootedForest(tuple(parent)), optimal=False)
    assert verify_td(G, TdCertificate(cert.value, cert.forest))
    return cert


@functools.lru_cache(maxsize=1 << 16)
def tree_depth_value(G: Graph) -> int:
    """Cached tree-depth value (no witness); desk-scale graphs only."""
    return tree_depth(G).value


@dataclass(frozen=True)
class GradResult:
    value: Fraction
    witness: BallFamily
    exact: bool = True


def grad_r(G: Graph, r: int, limit: int = BALL_FAMILY_LIMIT) -> GradResult:
    """Greatest reduced average density at rank r.

    Exhaustive over all disjoint ball families for n <= limit; larger
    graphs get a greedy packing lower bound flagged inexact.
    """
    if G.n > limit:
        return _grad_greedy(G, r)
    if G.n == 0:
        return GradResult(Fraction(0), BallFamily(G, (), r))
    balls = enumerate_balls(G, r)
    nbhd = []
    for b in balls:
        nb = 0
        for v in bits(b):
            nb |= G.rows[v]
        nbhd.append(nb & ~b)
    nballs = len(balls)
    best_num, best_den = 0, 1
    best_fam: tuple[int, ...] = (balls[0],) if balls else ()

    def rec(start: int, used: int, chosen: list[int], edges: int) -> None:
        nonlocal best_num, best_den, best_fam
        parts = len(chosen)
        if parts and edges * best_den > best_num * parts:
            best_num, best_den = edges, parts
            best_fam = tuple(chosen)
        for i in range(start, nballs):
            b = balls[i]
            if b & used:
                continue
            inc = sum(1 for c in chosen if nbhd[i] & c)
            chosen.append(b)
            rec(i + 1, used | b, chosen, edges + inc)
            chosen.pop()

    rec(0, 0, [], 0)
    fam = BallFamily(G, best_fam, r)
    value = Fraction(best_num, best_den)
    assert value == Fraction(quotient(G, fam).edge_count(), max(len(best_fam), 1))
    return GradResult(value, fam)


def _grad_greedy(G: Graph, r: int) -> GradResult:
    """Lower bound: greedy BFS-ball packing around high-degree centers."""
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    covered = 0
    balls = []
    for c in order:
        if covered >> c & 1:
            continue
        avail = G.full_mask & ~covered
        dist = bfs_layers(G, c, avail)
        ball = 0
        for v in bits(avail):
            if 0 <= dist[v] <= r:
                ball |= 1 << v
        balls.append(ball)
        covered |= ball
    fam = BallFamily(G, tuple(balls), r)
    q = quotient(G, fam)
    value = Fraction(q.edge_count(), max(len(balls), 1))
    flow = grad_0_flow(G)
    if flow > value:
        # rank-0 density is always a valid rank-r lower bound
        best_sub = _densest_subgraph_mask(G)
        fam = BallFamily(G, tuple(1 << v for v in bits(best_sub)), r)
        value = flow
    return GradResult(value, fam, exact=False)


# --- integer max-flow (Dinic), used by the density and orientation routines ---

class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            q = [s]
            for u in q:
                for e in self.head[u]:
                    v = self.to[e]
                    if self.cap[e] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        q.append(v)
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(u: int, f: int) -> int:
                if u == t:
                    return f
                while it[u] < len(self.head[u]):
                    e = self.head[u][it[u]]
                    v = self.to[e]
                    if self.cap[e] > 0 and level[v] == level[u] + 1:
                        d = dfs(v, min(f, self.cap[e]))
                        if d > 0:
                            self.cap[e] -= d
                            self.cap[e ^ 1] += d
                            return d
                    it[u] += 1
                return 0

            while True:
                f = dfs(s, 1 << 62)
                if f == 0:
                    break
                flow += f

    def min_cut_side(self, s: int) -> int:
        """Mask of vertices reachable from s in the residual network."""
        seen = 1 << s
        q = [s]
        for u in q:
            for e in self.head[u]:
                v = self.to[e]
                if self.cap[e] > 0 and not seen >> v & 1:
                    seen |= 1 << v
                    q.append(v)
        return seen


def _improving_subgraph(G: Graph, num: int, den: int) -> Optional[int]:
    """A vertex mask S with |E(S)|/|S| > num/den, or None.

    Goldberg-style min-cut test with integer capacities.
    """
    n = G.n
    if n == 0:
        return None
    s, t = n, n + 1
    net = _Dinic(n + 2)
    total_pos = 0
    for v in range(n):
        w = den * G.degree(v) - 2 * num
        if w > 0:
            net.add_edge(s, v, w)
            total_pos += w
        elif w < 0:
            net.add_edge(v, t, -w)
    for u, v in G.edges():
        net.add_edge(u, v, den)
        net.add_edge(v, u, den)
    cut = net.max_flow(s, t)
    if total_pos - cut <= 0:
        return None
    side = net.min_cut_side(s) & ((1 << n) - 1)
    return side if side else None


def _densest_subgraph_mask(G: Graph) -> int:
    best_mask = 1 if G.n else 0
    num, den = 0, 1
    while True:
        S = _improving_subgraph(G, num, den)
        if S is None:
            return best_mask
        e = sum((G.rows[v] & S).bit_count() for v in bits(S)) // 2
        k = S.bit_count()
        assert e * den > num * k
        num, den, best_mask = e, k, S


def grad_0_flow(G: Graph) -> Fraction:
    """Exact maximum subgraph density max |E(H)|/|V(H)| via parametric cuts."""
    if G.n == 0:
        return Fraction(0)
    S = _densest_subgraph_mask(G)
    e = sum((G.rows[v] & S).bit_count() for v in bits(S)) // 2
    return Fraction(e, S.bit_count())


@dataclass(frozen=True)
class Orientation:
    """Each undirected edge directed exactly one way (tail, head) pairs."""

    graph: Graph
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        covered = {frozenset(a) for a in self.arcs}
        expected = {frozenset(e) for e in self.graph.edges()}
        if covered != expected:
            raise GraphError("orientation does not cover the edge set exactly")

    def max_indegree(self) -> int:
        indeg = [0] * self.graph.n
        for _, h in self.arcs:
            indeg[h] += 1
        return max(indeg, default=0)


def min_indegree_orientation(G: Graph) -> tuple[Orientation, int]:
    """Orientation with maximum indegree ceil(grad_0), by bipartite flow."""
    k = math.ceil(grad_0_flow(G))
    edges = G.edges()
    m = len(edges)
    if m == 0:
        return Orientation(G, ()), 0
    s = m + G.n
    t = s + 1
    net = _Dinic(m + G.n + 2)
    for i, (u, v) in enumerate(edges):
        net.add_edge(s, i, 1)
        net.add_edge(i, m + u, 1)
        net.add_edge(i, m + v, 1)
    for v in range(G.n):
        net.add_edge(m + v, t, k)
    flow = net.max_flow(s, t)
    assert flow == m, "orientation with indegree <= ceil(grad_0) must exist"
    arcs = []
    for i, (u, v) in enumerate(edges):
        # the saturated edge->vertex arc marks the head
        head = None
        for e in net.head[i]:
            w = net.to[e]
            if w != s and net.cap[e] == 0 and e % 2 == 0:
                head = w - m
                break
        assert head is not None
        tail = v if head == u else u
        arcs.append((tail, head))
    orient = Orientation(G, tuple(arcs))
    assert orient.max_indegree() == k or G.edge_count() == 0
    return orient, orient.max_indegree()


def degeneracy(G: Graph) -> tuple[int, list[int]]:
    """Classic min-degree peeling; also asserts the 2*grad_0 bound."""
    remaining = G.full_mask
    order = []
    d = 0
    while remaining:
        v = min(bits(remaining), key=lambda x: ((G.rows[x] & remaining).bit_count(), x))
        d = max(d, (G.rows[v] & remaining).bit_count())
        order.append(v)
        remaining &= ~(1 << v)
    assert d <= math.floor(2 * grad_0_flow(G))
    return d, order


def expansion_profile(G: Graph, r_max: int, limit: int = BALL_FAMILY_LIMIT) -> list[Fraction]:
    """Per-graph grad measurements for ranks 0..r_max (nondecreasing)."""
    profile = [grad_r(G, r, limit=limit).value for r in range(r_max + 1)]
    for a, b in zip(profile, profile[1:]):
        assert a <= b, "expansion profile must be nondecreasing"
    return profile
