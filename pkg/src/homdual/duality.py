"""Local homomorphisms, truncated powers, and the restricted-duality pipeline."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceededError, GraphError, SizeLimitError
from .graphs import (
    Graph,
    bits,
    complete_graph,
    connected_components,
    disjoint_union,
    induced_subgraph,
    is_connected,
    mask_of,
)
from .homs import (
    ABSENT,
    BUDGET,
    PRESENT,
    HomResult,
    VertexMap,
    check_homomorphism,
    core,
    enumerate_homomorphisms,
    find_homomorphism,
    forb_member,
    hom_equivalent,
    is_isomorphic,
)
from .sparsity import tree_depth_value
from .coloring import Coloring, find_low_td_coloring

POWER_ORDER_CAP = 100_000
DEFAULT_REP_ORDER = 6


def local_hom_check(G: Graph, phi: Sequence[int], p: int, U: Graph,
                    budget: Optional[int] = None) -> tuple[bool, Optional[frozenset]]:
    """Is every vertex set with at most p distinct phi-values mappable to U?

    It suffices to check the preimage of each p-subset of the range, since
    any qualifying set sits inside one of those.
    Returns (True, None) or (False, failing value set).
    """
    if len(phi) != G.n:
        raise GraphError("phi must be total on the vertices")
    values = sorted(set(phi))
    if len(values) <= p:
        subsets = [tuple(values)] if values else []
    else:
        subsets = list(combinations(values, p))
    for I in subsets:
        pre = mask_of(v for v in range(G.n) if phi[v] in I)
        sub, _ = induced_subgraph(G, pre)
        r = find_homomorphism(sub, U, budget=budget)
        if r.status == BUDGET:
            raise BudgetExceededError(f"local check ran out of budget on {I}")
        if r.status == ABSENT:
            return False, frozenset(I)
    return True, None


@dataclass(frozen=True)
class TruncatedPower:
    """The p-truncated H-power of a base graph U.

    Vertices of the power encode pairs (v in V(H), assignment of base
    vertices to the p-subsets of V(H) through v), packed into integers via
    mixed radix with subsets in lexicographic order, most significant first.
    """

    base: Graph
    template: Graph
    p: int
    D: Graph
    alpha: VertexMap
    subsets: tuple[tuple[int, ...], ...]  # all p-subsets of V(H), lex order
    block: int  # assignments per template vertex: |V(U)| ** B
    coords: int  # B = binom(|V(H)|-1, p-1)

    def subsets_through(self, v: int) -> list[tuple[int, ...]]:
        return [I for I in self.subsets if v in I]

    def decode(self, z: int) -> tuple[int, tuple[int, ...]]:
        """(template vertex, assignment digits in lex subset order)."""
        v, rest = divmod(z, self.block)
        u = self.base.n
        digits = []
        for j in range(self.coords - 1, -1, -1):
            d, rest = divmod(rest, u ** j)
            digits.append(d)
        return v, tuple(digits)

    def encode(self, v: int, digits: Sequence[int]) -> int:
        u = self.base.n
        idx = 0
        for d in digits:
            idx = idx * u + d
        return v * self.block + idx

    def coordinate(self, z: int, I: tuple[int, ...]) -> int:
        """The base vertex assigned to subset I at the power vertex z."""
        v, digits = self.decode(z)
        pos = self.subsets_through(v).index(tuple(I))
        return digits[pos]


def power_order(u_count: int, h_count: int, p: int) -> int:
    b = math.comb(h_count - 1, p - 1)
    if u_count > 1 and b * u_count.bit_length() > 64:
        raise SizeLimitError(
            f"power order around {h_count} * {u_count}^{b} vastly exceeds any cap")
    return h_count * (u_count ** b)


def truncated_power(U: Graph, H: Graph, p: int, cap: int = POWER_ORDER_CAP) -> TruncatedPower:
    """Build the p-truncated H-power of U, with checked color projection.

    Edges join vertices over adjacent template vertices whose assignments
    agree (are adjacent in the base) on every shared subset.
    """
    h, u = H.n, U.n
    if not 1 <= p <= h:
        raise GraphError(f"need 1 <= p <= |V(H)| (got p={p}, |V(H)|={h})")
    if u == 0:
        raise GraphError("base graph must be nonempty")
    order = power_order(u, h, p)
    if order > cap:
        raise SizeLimitError(f"power order {order} exceeds cap {cap}")
    subsets = tuple(combinations(range(h), p))
    through = [tuple(I for I in subsets if v in I) for v in range(h)]
    B = math.comb(h - 1, p - 1)
    assert all(len(t) == B for t in through)
    block = u ** B

    # digits[i, j] = base vertex assigned by local index i to the j-th subset
    weights = np.array([u ** (B - 1 - j) for j in range(B)], dtype=np.int64)
    digits = (np.arange(block, dtype=np.int64)[:, None] // weights[None, :]) % u
    adj = np.zeros((u, u), dtype=bool)
    for a, b_ in U.edges():
        adj[a, b_] = adj[b_, a] = True

    rows = [0] * order
    for v, w in H.edges():
        shared = [I for I in through[v] if w in I]
        cond = np.ones((block, block), dtype=bool)
        for I in shared:
            pv = through[v].index(I)
            pw = through[w].index(I)
            cond &= adj[digits[:, pv][:, None], digits[:, pw][None, :]]
        packed = np.packbits(cond, axis=1, bitorder="little")
        packed_t = np.packbits(cond.T.copy(), axis=1, bitorder="little")
        for i in range(block):
            m = int.from_bytes(packed[i].tobytes(), "little")
            if m:
                rows[v * block + i] |= m << (w * block)
        for j in range(block):
            m = int.from_bytes(packed_t[j].tobytes(), "little")
            if m:
                rows[w * block + j] |= m << (v * block)

    D = Graph(order, rows)
    assert D.n == order
    alpha = VertexMap(D, H, tuple(z // block for z in range(order)))
    assert check_homomorphism(alpha)
    return TruncatedPower(U, H, p, D, alpha, subsets, block, B)


def power_local_property(TP: TruncatedPower) -> bool:
    """Validate that the power is locally homomorphic to its base along the
    color projection: for each p-subset of template vertices, the coordinate
    map at that subset is itself a homomorphism of the preimage into the base.

    Small powers are additionally cross-checked with the generic search.
    """
    D, U = TP.D, TP.base
    for I in TP.subsets:
        pre = mask_of(z for z in range(D.n) if TP.alpha.image[z] in I)
        sub, old = induced_subgraph(D, pre)
        witness = VertexMap(sub, U, tuple(TP.coordinate(z, I) for z in old))
        if not check_homomorphism(witness):
            return False
    if D.n <= 200:
        ok, _ = local_hom_check(D, list(TP.alpha.image), TP.p, U)
        assert ok
    return True


def local_hom_witnesses(G: Graph, gamma: VertexMap, p: int, U: Graph,
                        subsets: Sequence[tuple[int, ...]]) -> dict:
    """Per-subset homomorphisms of the gamma-preimages into the base.

    Keys are subsets (tuples); values map original G-vertices to U-vertices.
    """
    out = {}
    for I in subsets:
        pre = mask_of(v for v in range(G.n) if gamma.image[v] in I)
        if pre == 0:
            continue
        sub, old = induced_subgraph(G, pre)
        r = find_homomorphism(sub, U)
        if not r.present:
            raise GraphError(f"missing local witness for subset {I}")
        out[tuple(I)] = {old[i]: r.map.image[i] for i in range(sub.n)}
    return out


def lift_homomorphism(G: Graph, gamma: VertexMap, TP: TruncatedPower) -> VertexMap:
    """Lift gamma: G -> H to a homomorphism into the power, coordinatewise
    from the per-subset local witnesses; the projection composes back to gamma.
    """
    if gamma.source != G or gamma.target != TP.template:
        raise GraphError("gamma must map G into the power's template")
    if not check_homomorphism(gamma):
        raise GraphError("gamma is not a homomorphism")
    witnesses = local_hom_witnesses(G, gamma, TP.p, TP.base, TP.subsets)
    image = []
    for x in range(G.n):
        v = gamma.image[x]
        digits = []
        for I in TP.subsets_through(v):
            g = witnesses.get(tuple(I))
            if g is None or x not in g:
                raise GraphError(f"missing local witness for subset {I}")
            digits.append(g[x])
        image.append(TP.encode(v, digits))
    f = VertexMap(G, TP.D, tuple(image))
    assert check_homomorphism(f)
    assert all(TP.alpha.image[f.image[x]] == gamma.image[x] for x in range(G.n))
    return f


def locbound_equivalence(G: Graph, U: Graph, H: Graph, p: int,
                         cap: int = POWER_ORDER_CAP) -> tuple[bool, bool]:
    """Both sides of the power-vs-local-homomorphism equivalence:
    lhs = G maps into the power, rhs = some gamma: G -> H is locally
    homomorphic to U at threshold p. The two must agree.
    """
    TP = truncated_power(U, H, p, cap=cap)
    lhs = find_homomorphism(G, TP.D).present
    rhs = False
    for gamma in enumerate_homomorphisms(G, H):
        ok, _ = local_hom_check(G, list(gamma.image), p, U)
        if ok:
            rhs = True
            break
    return lhs, rhs


def representatives(p: int, n_max: int = DEFAULT_REP_ORDER) -> list[Graph]:
    """Cores of all graphs up to n_max vertices with tree-depth <= p,
    deduplicated by isomorphism. Desk-scale stand-in for the finite
    representative set of bounded tree-depth classes.
    """
    from .catalog import generate_all_graphs

    reps: list[Graph] = []
    for G in generate_all_graphs(n_max):
        if G.n == 0:
            continue
        if tree_depth_value(G) > p:
            continue
        C = core(G)
        C = Graph(C.n, C.rows)  # drop provenance labels for dedup
        if not any(is_isomorphic(C, R) for R in reps):
            reps.append(C)
    reps.sort(key=lambda g: (g.n, g.edge_count(), g.rows))
    return reps


@dataclass(frozen=True)
class DualBuild:
    D: Graph
    power: TruncatedPower
    base: Graph
    p: int
    n_colors: int
    colorings: tuple[Coloring, ...]
    provenance: dict


def build_dual(corpus: Sequence[Graph], f_set: Sequence[Graph],
               p_override: Optional[int] = None, n_rep: int = DEFAULT_REP_ORDER,
               cap: int = POWER_ORDER_CAP) -> DualBuild:
    """Construct a dual graph for the forbidden family over a finite corpus.

    Pipeline: threshold from the largest forbidden graph, low tree-depth
    colorings of the corpus fix the template size, the filtered
    representative union is the base, and the truncated power is the dual.
    """
    if not f_set:
        raise GraphError("forbidden family must be nonempty")
    for F in f_set:
        if not is_connected(F):
            raise GraphError("forbidden graphs must be connected")
    p = p_override if p_override is not None else max(F.n for F in f_set)
    colorings = []
    n_colors = 1
    for G in corpus:
        res = find_low_td_coloring(G, p)
        if res is None:
            raise GraphError(f"no low tree-depth coloring found for {G!r}")
        colorings.append(res.coloring)
        n_colors = max(n_colors, res.coloring.k)
    reps = [R for R in representatives(p, n_rep) if forb_member(R, f_set)]
    if not reps:
        raise GraphError("no representative avoids the forbidden family")
    U, _ = disjoint_union(reps)
    template_size = max(n_colors, p)  # the power needs p <= |V(H)|
    H = complete_graph(template_size)
    TP = truncated_power(U, H, p, cap=cap)
    assert power_local_property(TP)
    provenance = {
        "p": p,
        "n_colors": n_colors,
        "template_size": template_size,
        "n_rep": n_rep,
        "base_order": U.n,
        "base_parts": len(reps),
        "dual_order": TP.D.n,
        "dual_edges": TP.D.edge_count(),
    }
    return DualBuild(TP.D, TP, U, p, template_size, tuple(colorings), provenance)


@dataclass(frozen=True)
class DualityReport:
    verdict: bool
    forbidden_ok: tuple[bool, ...]
    items: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "verdict": "pass" if self.verdict else "fail",
            "forbidden_ok": list(self.forbidden_ok),
            "items": list(self.items),
        }


def verify_duality(corpus: Sequence[Graph], f_set: Sequence[Graph], D: Graph,
                   budget: Optional[int] = None) -> DualityReport:
    """Check the duality contract on a corpus: no forbidden graph maps to the
    dual, and membership in the forbidden-free class coincides with mapping
    into the dual. Witness maps are recorded where they exist.
    """
    forbidden_ok = []
    ok = True
    for F in f_set:
        r = find_homomorphism(F, D, budget=budget)
        good = r.status == ABSENT
        forbidden_ok.append(good)
        ok = ok and good
    items = []
    for idx, G in enumerate(corpus):
        member = forb_member(G, f_set, budget=budget)
        r = find_homomorphism(G, D, budget=budget)
        hom = None if r.status == BUDGET else r.present
        item = {
            "index": idx,
            "forb_member": member,
            "hom_to_dual": hom,
            "witness": list(r.map.image) if r.map is not None else None,
        }
        consistent = member is not None and hom is not None and member == hom
        item["consistent"] = consistent
        ok = ok and consistent
        items.append(item)
    return DualityReport(ok, tuple(forbidden_ok), tuple(items))


def regular_partition_report(G: Graph, c: Coloring, p: int,
                             reps: Sequence[Graph]) -> dict:
    """For every union of at most p color classes, match each component to a
    hom-equivalent representative. An unmatched component means the
    representative set is too small.
    """
    from .coloring import verify_low_td

    ok, _ = verify_low_td(G, c, p)
    if not ok:
        raise GraphError("coloring fails the low tree-depth condition")
    entries = []
    unmatched = []
    for i in range(1, min(p, c.k) + 1):
        for classes in combinations(range(c.k), i):
            S = 0
            for q in classes:
                S |= c.class_mask(q)
            for comp in connected_components(G, S):
                sub, _ = induced_subgraph(G, comp)
                match = None
                for ridx, R in enumerate(reps):
                    if hom_equivalent(sub, R):
                        match = ridx
                        break
                entry = {
                    "classes": list(classes),
                    "component": sorted(bits(comp)),
                    "representative": match,
                }
                entries.append(entry)
                if match is None:
                    unmatched.append(entry)
    return {
        "ok": not unmatched,
        "entries": entries,
        "unmatched": unmatched,
    }
