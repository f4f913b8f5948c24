"""Centered and low tree-depth colorings, and the product construction."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import GraphError, SizeLimitError
from .graphs import (
    Graph,
    bits,
    connected_components,
    enumerate_connected_sets,
    induced_subgraph,
)
from .sparsity import TdCertificate, tree_depth, tree_depth_value, verify_td

CENTERED_LIMIT = 16
LOWTD_EXHAUSTIVE_LIMIT = 10


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color map with colors 0..k-1, every class nonempty."""

    graph: Graph
    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        assert len(self.colors) == self.graph.n
        used = set(self.colors)
        assert used == set(range(self.k)) or self.graph.n == 0

    def class_mask(self, c: int) -> int:
        m = 0
        for v, cv in enumerate(self.colors):
            if cv == c:
                m |= 1 << v
        return m


def make_coloring(G: Graph, colors: Sequence[int]) -> Coloring:
    """Normalize arbitrary color values to dense 0..k-1 by first appearance."""
    remap: dict[int, int] = {}
    dense = []
    for c in colors:
        if c not in remap:
            remap[c] = len(remap)
        dense.append(remap[c])
    return Coloring(G, tuple(dense), len(remap))


def verify_p_centered(G: Graph, c: Coloring, p: int,
                      limit: int = CENTERED_LIMIT) -> tuple[bool, Optional[int]]:
    """Check the centered condition over every connected vertex subset.

    Returns (True, None) or (False, violating vertex mask). The condition
    depends only on vertex sets, so connected induced subsets suffice.
    """
    if G.n > limit:
        raise SizeLimitError(f"centered verification capped at {limit} vertices")
    cols = c.colors
    for S in enumerate_connected_sets(G):
        counts: dict[int, int] = {}
        for v in bits(S):
            counts[cols[v]] = counts.get(cols[v], 0) + 1
        if len(counts) >= p:
            continue
        if any(cnt == 1 for cnt in counts.values()):
            continue
        return False, S
    return True, None


def centered_from_td(G: Graph, cert: TdCertificate) -> Coloring:
    """Level coloring of a tree-depth witness: color = forest height - 1.

    Passes the centered check for every p, because the unique minimum-level
    vertex of a connected subset inside one tree is uniquely colored.
    """
    if not verify_td(G, cert):
        raise GraphError("invalid tree-depth certificate")
    levels = [cert.forest.height_of(v) - 1 for v in range(G.n)]
    return make_coloring(G, levels)


@dataclass(frozen=True)
class LowTdViolation:
    classes: tuple[int, ...]
    component: int  # vertex mask in G
    td: int


@dataclass(frozen=True)
class LowTdReport:
    ok: bool
    worst: Optional[LowTdViolation]  # deepest (subset, component) seen
    violation: Optional[LowTdViolation]


def verify_low_td(G: Graph, c: Coloring, p: int) -> tuple[bool, LowTdReport]:
    """Every i <= p color classes must induce components of tree-depth <= i."""
    worst: Optional[LowTdViolation] = None
    for i in range(1, min(p, c.k) + 1):
        for classes in combinations(range(c.k), i):
            S = 0
            for q in classes:
                S |= c.class_mask(q)
            for comp in connected_components(G, S):
                sub, _ = induced_subgraph(G, comp)
                td = tree_depth_value(sub)
                if worst is None or td - len(classes) > worst.td - len(worst.classes):
                    worst = LowTdViolation(classes, comp, td)
                if td > i:
                    viol = LowTdViolation(classes, comp, td)
                    return False, LowTdReport(False, worst, viol)
    return True, LowTdReport(True, worst, None)


@dataclass(frozen=True)
class LowTdColoring:
    coloring: Coloring
    exhaustive: bool


def find_low_td_coloring(G: Graph, p: int, k_max: Optional[int] = None) -> Optional[LowTdColoring]:
    """Smallest coloring passing the low tree-depth check at threshold p.

    Exhaustive (provably minimal) for |V| <= 10; larger graphs get a greedy
    distance-p coloring on degeneracy order, minimality not guaranteed.
    """
    if k_max is None:
        k_max = max(G.n, 1)
    if G.n == 0:
        return LowTdColoring(Coloring(G, (), 0), True)
    if G.n <= LOWTD_EXHAUSTIVE_LIMIT:
        for k in range(1, k_max + 1):
            c = _exhaustive_low_td(G, p, k)
            if c is not None:
                return LowTdColoring(c, True)
        return None
    return _greedy_low_td(G, p, k_max)


def _exhaustive_low_td(G: Graph, p: int, k: int) -> Optional[Coloring]:
    """Backtracking over canonical proper colorings with exactly <= k colors."""
    n = G.n
    colors = [0] * n

    def rec(v: int, used: int) -> Optional[Coloring]:
        if v == n:
            cand = make_coloring(G, colors)
            ok, _ = verify_low_td(G, cand, p)
            return cand if ok else None
        for q in range(min(used + 1, k)):
            ok = True
            for u in bits(G.rows[v]):
                if u < v and colors[u] == q:
                    ok = False
                    break
            if ok:
                colors[v] = q
                r = rec(v + 1, max(used, q + 1))
                if r is not None:
                    return r
        return None

    return rec(0, 0)


def _greedy_low_td(G: Graph, p: int, k_max: int) -> Optional[LowTdColoring]:
    from .sparsity import degeneracy

    _, order = degeneracy(G)
    dist_bound = p
    for attempt in range(dist_bound, G.n + 1):
        colors = [-1] * G.n
        for v in reversed(order):
            banned = set()
            # vertices within distance `attempt` must take distinct colors
            frontier = 1 << v
            seen = frontier
            for _ in range(attempt):
                nxt = 0
                for u in bits(frontier):
                    nxt |= G.rows[u]
                nxt &= ~seen
                frontier = nxt
                seen |= nxt
            for u in bits(seen & ~(1 << v)):
                if colors[u] >= 0:
                    banned.add(colors[u])
            q = 0
            while q in banned:
                q += 1
            colors[v] = q
        cand = make_coloring(G, colors)
        if cand.k > k_max:
            return None
        ok, _ = verify_low_td(G, cand, p)
        if ok:
            return LowTdColoring(cand, False)
    return None


def product_centered(G: Graph, cbar: Coloring, p: int) -> Coloring:
    """Product of a low tree-depth coloring with level colorings of the
    subgraphs induced by each p-subset of its classes.

    The output passes the centered check at threshold p.
    """
    ok, _ = verify_low_td(G, cbar, p)
    if not ok:
        raise GraphError("base coloring fails the low tree-depth condition")
    subsets = list(combinations(range(cbar.k), min(p, cbar.k)))
    per_subset = []
    for P in subsets:
        S = 0
        for q in P:
            S |= cbar.class_mask(q)
        sub, old = induced_subgraph(G, S)
        cert = tree_depth(sub)
        cp = centered_from_td(sub, cert)
        col = [0] * G.n  # 0 is a safe sentinel: real levels are shifted by 1
        for i, v in enumerate(old):
            col[v] = cp.colors[i] + 1
        per_subset.append(col)
    tuples = [
        (cbar.colors[v],) + tuple(col[v] for col in per_subset)
        for v in range(G.n)
    ]
    return make_coloring(G, _dense(tuples))


def _dense(tuples: list[tuple]) -> list[int]:
    remap: dict[tuple, int] = {}
    out = []
    for t in tuples:
        if t not in remap:
            remap[t] = len(remap)
        out.append(remap[t])
    return out
